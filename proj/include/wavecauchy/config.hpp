#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavecauchy/common.hpp"

namespace wavecauchy {

/// Raised with the offending "section.key" path.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& key_path, const std::string& what)
        : std::runtime_error("config key '" + key_path + "': " + what),
          key_path(key_path) {}
    std::string key_path;
};

/// Sectioned key-value run configuration:
///
///   [kernel]
///   h = 0.05
///   # comment
///   [reconstruct]
///   h_list = 0.16 0.08 0.04 0.02
///
/// Repeated keys append a row (used for mode lists).
class RunConfig {
public:
    RunConfig() = default;

    static RunConfig parse_file(const std::string& path) {
        std::ifstream is(path);
        if (!is) throw IoError("config: cannot open " + path);
        std::stringstream ss;
        ss << is.rdbuf();
        return parse_string(ss.str());
    }

    static RunConfig parse_string(const std::string& text) {
        RunConfig cfg;
        std::istringstream is(text);
        std::string line, section;
        int lineno = 0;
        while (std::getline(is, line)) {
            ++lineno;
            std::string s = trim(line);
            if (s.empty() || s[0] == '#' || s[0] == ';') continue;
            if (s.front() == '[') {
                if (s.back() != ']')
                    throw ConfigError("line " + std::to_string(lineno),
                                      "malformed section header");
                section = trim(s.substr(1, s.size() - 2));
                continue;
            }
            std::size_t eq = s.find('=');
            if (eq == std::string::npos)
                throw ConfigError(section + ".line" + std::to_string(lineno),
                                  "expected key = value");
            std::string key = trim(s.substr(0, eq));
            std::string val = trim(s.substr(eq + 1));
            cfg.values_[section + "." + key].push_back(val);
        }
        return cfg;
    }

    bool has(const std::string& key_path) const {
        return values_.count(key_path) > 0;
    }

    std::string get_string(const std::string& key_path) const {
        auto it = values_.find(key_path);
        if (it == values_.end()) throw ConfigError(key_path, "missing");
        return it->second.back();
    }

    std::string get_string(const std::string& key_path,
                           const std::string& fallback) const {
        return has(key_path) ? get_string(key_path) : fallback;
    }

    double get_double(const std::string& key_path) const {
        return to_double(key_path, get_string(key_path));
    }
    double get_double(const std::string& key_path, double fallback) const {
        return has(key_path) ? get_double(key_path) : fallback;
    }

    long long get_int(const std::string& key_path) const {
        const std::string s = get_string(key_path);
        try {
            std::size_t pos = 0;
            long long v = std::stoll(s, &pos);
            if (pos != s.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw ConfigError(key_path, "not an integer: '" + s + "'");
        }
    }
    long long get_int(const std::string& key_path, long long fallback) const {
        return has(key_path) ? get_int(key_path) : fallback;
    }

    std::vector<double> get_double_list(const std::string& key_path) const {
        std::istringstream is(get_string(key_path));
        std::vector<double> out;
        std::string tok;
        while (is >> tok) out.push_back(to_double(key_path, tok));
        if (out.empty()) throw ConfigError(key_path, "empty list");
        return out;
    }

    /// All occurrences of a repeated key, in file order.
    std::vector<std::string> get_all(const std::string& key_path) const {
        auto it = values_.find(key_path);
        return it == values_.end() ? std::vector<std::string>{} : it->second;
    }

private:
    static std::string trim(const std::string& s) {
        std::size_t b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return "";
        std::size_t e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    }

    static double to_double(const std::string& key_path, const std::string& s) {
        try {
            std::size_t pos = 0;
            double v = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw ConfigError(key_path, "not a number: '" + s + "'");
        }
    }

    std::map<std::string, std::vector<std::string>> values_;
};

}  // namespace wavecauchy
