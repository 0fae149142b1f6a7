#pragma once

// Everything except config.hpp, which additionally needs nlohmann's json.hpp.

#include "dblroot/types.hpp"
#include "dblroot/rational.hpp"
#include "dblroot/polynomial.hpp"
#include "dblroot/coefficient_dynamics.hpp"
#include "dblroot/zero_dynamics.hpp"
#include "dblroot/trajectory.hpp"
#include "dblroot/algebraic_solver.hpp"
#include "dblroot/printed_systems.hpp"
#include "dblroot/direct_integrator.hpp"
#include "dblroot/analysis.hpp"
#include "dblroot/presets.hpp"
#include "dblroot/csv.hpp"
