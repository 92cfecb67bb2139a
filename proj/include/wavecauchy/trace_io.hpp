#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavecauchy/synthdata.hpp"

namespace wavecauchy {

/// Parse failure with the 1-based line number of the offending line.
class TraceParseError : public std::runtime_error {
public:
    TraceParseError(const std::string& path, int line, const std::string& what)
        : std::runtime_error(path + ":" + std::to_string(line) + ": " + what),
          line_number(line) {}
    int line_number;
};

namespace detail {

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Split on commas that are not inside parentheses (provenance carries
/// a parenthesized argument list).
inline std::vector<std::string> split_header_fields(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    for (std::string& f : out) {
        std::size_t b = f.find_first_not_of(" \t");
        std::size_t e = f.find_last_not_of(" \t");
        f = b == std::string::npos ? "" : f.substr(b, e - b + 1);
    }
    return out;
}

}  // namespace detail

inline constexpr const char* trace_format_tag = "wavecauchy-trace v1";
inline constexpr const char* trace_columns =
    "s_index,t_index,x,y,nu_x,nu_y,t,dnu_u";

inline void write_trace(const BoundaryTrace& tr, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("write_trace: cannot open " + path);
    const bool disk = tr.domain.kind() == Domain::Kind::disk;
    os << "# " << trace_format_tag << ", kind=" << (disk ? "disk" : "rect")
       << ", R=" << detail::fmt17(disk ? tr.domain.radius() : 0.0)
       << ", a=" << detail::fmt17(disk ? 0.0 : tr.domain.side_a())
       << ", b=" << detail::fmt17(disk ? 0.0 : tr.domain.side_b())
       << ", N_b=" << tr.n_boundary << ", t_min=" << detail::fmt17(tr.t_min)
       << ", t_max=" << detail::fmt17(tr.t_max) << ", N_t=" << tr.n_time
       << ", provenance=" << tr.provenance.to_string() << "\n";
    os << trace_columns << "\n";
    for (int i = 0; i < tr.n_boundary; ++i) {
        const BoundaryPoint& p = tr.points[i];
        for (int j = 0; j < tr.n_time; ++j) {
            os << i << ',' << j << ',' << detail::fmt17(p.x) << ','
               << detail::fmt17(p.y) << ',' << detail::fmt17(p.nx) << ','
               << detail::fmt17(p.ny) << ',' << detail::fmt17(tr.time(j)) << ','
               << detail::fmt17(tr.value(i, j)) << "\n";
        }
    }
    if (!os) throw IoError("write_trace: write failed for " + path);
}

inline BoundaryTrace read_trace(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("read_trace: cannot open " + path);
    std::string line;
    int lineno = 0;

    if (!std::getline(is, line)) throw TraceParseError(path, 1, "empty file");
    ++lineno;
    if (line.rfind("# ", 0) != 0 || line.find(trace_format_tag) == std::string::npos)
        throw TraceParseError(path, lineno, "missing trace header");

    std::string kind;
    double R = 0.0, a = 0.0, b = 0.0, t_min = 0.0, t_max = 0.0;
    int n_b = 0, n_t = 0;
    Provenance prov;
    for (const std::string& field : detail::split_header_fields(line.substr(2))) {
        std::size_t eq = field.find('=');
        if (eq == std::string::npos) continue;  // the format tag itself
        std::string key = field.substr(0, eq), val = field.substr(eq + 1);
        try {
            if (key == "kind") kind = val;
            else if (key == "R") R = std::stod(val);
            else if (key == "a") a = std::stod(val);
            else if (key == "b") b = std::stod(val);
            else if (key == "N_b") n_b = std::stoi(val);
            else if (key == "t_min") t_min = std::stod(val);
            else if (key == "t_max") t_max = std::stod(val);
            else if (key == "N_t") n_t = std::stoi(val);
            else if (key == "provenance") {
                if (val == "exact") prov.kind = Provenance::Kind::exact;
                else if (val == "fd") prov.kind = Provenance::Kind::fd;
                else if (val.rfind("noisy(", 0) == 0) {
                    prov.kind = Provenance::Kind::noisy;
                    std::string args = val.substr(6, val.size() - 7);
                    std::stringstream ss(args);
                    std::string tok;
                    if (std::getline(ss, tok, ',')) prov.noise_rel = std::stod(tok);
                    if (std::getline(ss, tok, ',')) prov.seed = std::stoull(tok);
                } else {
                    throw TraceParseError(path, lineno, "unknown provenance: " + val);
                }
            }
        } catch (const TraceParseError&) {
            throw;
        } catch (const std::exception&) {
            throw TraceParseError(path, lineno, "bad header value for " + key);
        }
    }
    if (kind != "disk" && kind != "rect")
        throw TraceParseError(path, lineno, "missing or unknown kind");
    if (n_b < 3 || n_t < 2)
        throw TraceParseError(path, lineno, "invalid N_b / N_t");

    BoundaryTrace tr;
    tr.domain = kind == "disk" ? Domain::disk(R) : Domain::rectangle(a, b);
    tr.n_boundary = n_b;
    tr.n_time = n_t;
    tr.t_min = t_min;
    tr.t_max = t_max;
    tr.provenance = prov;
    tr.points.resize(n_b);
    tr.values.assign(static_cast<std::size_t>(n_b) * n_t, 0.0);
    std::vector<char> seen(static_cast<std::size_t>(n_b) * n_t, 0);

    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (lineno == 2 && line == trace_columns) continue;
        std::stringstream ss(line);
        std::string tok;
        double cols[8];
        int got = 0;
        while (got < 8 && std::getline(ss, tok, ',')) {
            try {
                cols[got] = std::stod(tok);
            } catch (const std::exception&) {
                throw TraceParseError(path, lineno, "bad numeric field '" + tok + "'");
            }
            ++got;
        }
        if (got != 8) throw TraceParseError(path, lineno, "expected 8 columns");
        int i = static_cast<int>(cols[0]), j = static_cast<int>(cols[1]);
        if (i < 0 || i >= n_b || j < 0 || j >= n_t)
            throw TraceParseError(path, lineno, "sample index out of range");
        tr.points[i] = {cols[2], cols[3], cols[4], cols[5]};
        std::size_t idx = static_cast<std::size_t>(i) * n_t + j;
        tr.values[idx] = cols[7];
        seen[idx] = 1;
    }
    for (std::size_t idx = 0; idx < seen.size(); ++idx)
        if (!seen[idx])
            throw TraceParseError(path, lineno,
                                  "truncated trace: missing sample " +
                                      std::to_string(idx / n_t) + "," +
                                      std::to_string(idx % n_t));
    return tr;
}

}  // namespace wavecauchy
