#pragma once

#include "pisot/algebraic_number.hpp"
#include "pisot/beta_numeration.hpp"
#include "pisot/error.hpp"
#include "pisot/interval.hpp"
#include "pisot/numbers.hpp"
#include "pisot/pisot_polynomial.hpp"
#include "pisot/polynomial.hpp"
#include "pisot/roots.hpp"
#include "pisot/integer_matrix.hpp"
#include "pisot/lattice_group.hpp"
#include "pisot/symbolic_group.hpp"
#include "pisot/toral_coding.hpp"
