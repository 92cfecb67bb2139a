#pragma once

#include "wavecauchy/bessel.hpp"
#include "wavecauchy/common.hpp"
#include "wavecauchy/config.hpp"
#include "wavecauchy/domain.hpp"
#include "wavecauchy/fdsolver.hpp"
#include "wavecauchy/kernel.hpp"
#include "wavecauchy/quadrature.hpp"
#include "wavecauchy/reconstruct.hpp"
#include "wavecauchy/rng.hpp"
#include "wavecauchy/special.hpp"
#include "wavecauchy/synthdata.hpp"
#include "wavecauchy/threading.hpp"
#include "wavecauchy/trace_io.hpp"
#include "wavecauchy/validate.hpp"
