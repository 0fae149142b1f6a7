#pragma once

// Trajectory CSV: header `t,re_x1,im_x1,...,re_xN,im_xN,re_v1,im_v1,...`,
// one row per sample, every number printed with 17 significant digits so a
// read-back reproduces finite values bit for bit.

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "dblroot/trajectory.hpp"
#include "dblroot/types.hpp"

namespace dblroot::csv {

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string header(std::size_t zeros) {
  std::string h = "t";
  for (const char* kind : {"x", "v"}) {
    for (std::size_t i = 1; i <= zeros; ++i) {
      const auto idx = std::to_string(i);
      h += ",re_" + std::string(kind) + idx + ",im_" + std::string(kind) + idx;
    }
  }
  return h;
}

inline void write(std::ostream& os, const TrackedTrajectory& traj) {
  os << header(traj.zeros()) << '\n';
  for (std::size_t k = 0; k < traj.size(); ++k) {
    std::string row = format_double(traj.times[k]);
    const auto& s = traj.states[k];
    for (const auto& part : {s.positions(), s.velocities()}) {
      for (const Complex z : part) {
        row += ',';
        row += format_double(z.real());
        row += ',';
        row += format_double(z.imag());
      }
    }
    os << row << '\n';
  }
}

/// Parses the format produced by write(). Only times and states are restored.
inline TrackedTrajectory read(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ContractViolation("csv: missing header");
  std::size_t columns = 1;
  for (const char c : line) columns += c == ',';
  if (columns < 5 || (columns - 1) % 4 != 0) throw ContractViolation("csv: unexpected column count");
  const std::size_t n = (columns - 1) / 4;
  if (line != header(n)) throw ContractViolation("csv: header does not match the trajectory layout");

  TrackedTrajectory traj;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> vals;
    vals.reserve(columns);
    const char* p = line.c_str();
    while (true) {
      char* end = nullptr;
      vals.push_back(std::strtod(p, &end));
      if (end == p) throw ContractViolation("csv: bad number on line " + std::to_string(lineno));
      if (*end == '\0') break;
      if (*end != ',') throw ContractViolation("csv: bad separator on line " + std::to_string(lineno));
      p = end + 1;
    }
    if (vals.size() != columns) throw ContractViolation("csv: wrong field count on line " + std::to_string(lineno));
    std::vector<Complex> x(n), v(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = {vals[1 + 2 * i], vals[2 + 2 * i]};
      v[i] = {vals[1 + 2 * n + 2 * i], vals[2 + 2 * n + 2 * i]};
    }
    traj.times.push_back(vals[0]);
    traj.states.emplace_back(std::move(x), std::move(v));
  }
  return traj;
}

}  // namespace dblroot::csv
