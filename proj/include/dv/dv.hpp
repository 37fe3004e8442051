#pragma once

// Fast path only; the arbitrary-precision oracles live under dv/reference/
// and need MPFR at link time.

#include "dv/coefficients.hpp"
#include "dv/constants.hpp"
#include "dv/continued_fraction.hpp"
#include "dv/error.hpp"
#include "dv/format.hpp"
#include "dv/grid.hpp"
#include "dv/params.hpp"
#include "dv/rational.hpp"
#include "dv/voigt.hpp"
