#pragma once

// Shorthands for turning compiled-in presets into solver inputs.

#include <stdexcept>
#include <string>

#include "dblroot/algebraic_solver.hpp"
#include "dblroot/presets.hpp"

namespace fixture {

inline const dblroot::Preset& preset(const std::string& name) {
  const auto* p = dblroot::find_preset(name);
  if (!p) throw std::invalid_argument("no preset " + name);
  return *p;
}

inline dblroot::ModelSpec model(const dblroot::Preset& p) {
  return dblroot::printed::model_spec(dblroot::printed::find(p.system_id), p.params);
}

inline dblroot::ZeroState initial(const dblroot::Preset& p) { return {p.positions, p.velocities}; }

inline dblroot::SolveRequest request(const dblroot::Preset& p, double t_end, int samples) {
  return {model(p), initial(p), dblroot::uniform_grid(t_end, samples)};
}

inline dblroot::SolveRequest request(const dblroot::Preset& p) { return request(p, p.t_end, p.samples); }

}  // namespace fixture
