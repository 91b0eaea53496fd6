#pragma once

#include "tdpert/drinfeld.hpp"
#include "tdpert/errors.hpp"
#include "tdpert/json_io.hpp"
#include "tdpert/matrix.hpp"
#include "tdpert/parallel_system.hpp"
#include "tdpert/perturbation.hpp"
#include "tdpert/polynomial.hpp"
#include "tdpert/rational.hpp"
#include "tdpert/seeds.hpp"
#include "tdpert/split_decomposition.hpp"
#include "tdpert/split_sequence.hpp"
#include "tdpert/subspace.hpp"
