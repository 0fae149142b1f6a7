#pragma once

#include <cstddef>
#include <vector>

#include "dblroot/polynomial.hpp"
#include "dblroot/types.hpp"

namespace dblroot {

enum class Provenance { algebraic, direct };

inline const char* to_string(Provenance p) {
  return p == Provenance::algebraic ? "algebraic" : "direct";
}

/// Per-sample quality figures of the algebraic pipeline.
struct SampleDiagnostics {
  double pair_separation = 0.0;   // split of the numerically double root
  double x1_discrepancy = 0.0;    // |midpoint of that pair - tracked x1|
  double residual_p = 0.0;        // |p(x1)|
  double residual_dp = 0.0;       // |p'(x1)|
  double coefficient_scale = 1.0; // max(1, max_m |y_m|)
};

struct TrackedTrajectory {
  Provenance provenance = Provenance::algebraic;
  std::vector<double> times;
  std::vector<ZeroState> states;
  std::vector<Complex> ybar;                   // reconstructed y_mbar per sample
  std::vector<SampleDiagnostics> diagnostics;  // algebraic pipeline only
  std::size_t internal_steps = 0;              // accepted internal steps
  std::size_t refinements = 0;                 // bisections (solver) or rejected steps (integrator)

  std::size_t size() const { return times.size(); }
  std::size_t zeros() const { return states.empty() ? 0 : states.front().size(); }
};

}  // namespace dblroot
