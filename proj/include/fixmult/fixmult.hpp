#pragma once

#include "fixmult/combinatorics.hpp"
#include "fixmult/counting.hpp"
#include "fixmult/error.hpp"
#include "fixmult/gaussian_rational.hpp"
#include "fixmult/oracle.hpp"
#include "fixmult/report.hpp"
#include "fixmult/scan.hpp"
#include "fixmult/spectrum.hpp"
#include "fixmult/stratum.hpp"
