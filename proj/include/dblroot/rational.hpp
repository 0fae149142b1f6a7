#pragma once

#include <charconv>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "dblroot/types.hpp"

namespace dblroot {

/// Exact rational p/q with q > 0 and gcd(p, q) = 1.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {  // NOLINT
    if (den_ == 0) throw ContractViolation("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const auto g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }
  constexpr double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  constexpr bool is_zero() const { return num_ == 0; }
  constexpr Rational abs() const { return {num_ < 0 ? -num_ : num_, den_}; }

  friend constexpr bool operator==(const Rational&, const Rational&) = default;

  /// Accepts "p/q" or a bare integer "p".
  static Rational parse(std::string_view text) {
    auto trim = [](std::string_view s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
      return s;
    };
    auto to_int = [&](std::string_view s) {
      s = trim(s);
      if (!s.empty() && s.front() == '+') s.remove_prefix(1);
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ContractViolation("malformed rational '" + std::string(text) + "'");
      }
      return v;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(to_int(text));
    const auto den = to_int(text.substr(slash + 1));
    if (den == 0) throw ContractViolation("rational with zero denominator '" + std::string(text) + "'");
    return {to_int(text.substr(0, slash)), den};
  }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

/// Least common multiple of two positive rationals: lcm(a/b, c/d) = lcm(a,c)/gcd(b,d).
inline Rational lcm(const Rational& x, const Rational& y) {
  if (x.num() <= 0 || y.num() <= 0) throw ContractViolation("lcm of non-positive rationals");
  return {std::lcm(x.num(), y.num()), std::gcd(x.den(), y.den())};
}

}  // namespace dblroot
