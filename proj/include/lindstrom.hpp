#pragma once

#include "lindstrom/algmat.hpp"
#include "lindstrom/circuit_vector.hpp"
#include "lindstrom/element_set.hpp"
#include "lindstrom/error.hpp"
#include "lindstrom/ffpoly.hpp"
#include "lindstrom/flock.hpp"
#include "lindstrom/groebner.hpp"
#include "lindstrom/matroid.hpp"
#include "lindstrom/report.hpp"
#include "lindstrom/toric.hpp"
#include "lindstrom/valmat.hpp"
