#pragma once

#include "fixmult/oracle/certify.hpp"
#include "fixmult/oracle/confluent_vandermonde.hpp"
#include "fixmult/oracle/homotopy.hpp"
#include "fixmult/oracle/linalg.hpp"
#include "fixmult/oracle/numeric.hpp"
#include "fixmult/oracle/orbits.hpp"
#include "fixmult/oracle/reconstruct.hpp"
#include "fixmult/oracle/solutions.hpp"
