#pragma once

#include "starcalc/error.hpp"
#include "starcalc/generators.hpp"
#include "starcalc/star_real.hpp"
#include "starcalc/star_complex.hpp"
#include "starcalc/expression.hpp"
#include "starcalc/parser.hpp"
#include "starcalc/rng.hpp"
#include "starcalc/report.hpp"
#include "starcalc/algebra.hpp"
#include "starcalc/grid.hpp"
#include "starcalc/grid_json.hpp"
#include "starcalc/polynomial.hpp"
#include "starcalc/inversion.hpp"
#include "starcalc/morphisms.hpp"
#include "starcalc/harness.hpp"
