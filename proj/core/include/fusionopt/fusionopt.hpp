#pragma once

#include "fusionopt/discrete.hpp"
#include "fusionopt/duality.hpp"
#include "fusionopt/erasures.hpp"
#include "fusionopt/error.hpp"
#include "fusionopt/fusion.hpp"
#include "fusionopt/linalg.hpp"
#include "fusionopt/optimality.hpp"
