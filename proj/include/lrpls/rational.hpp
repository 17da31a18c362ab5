#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lrpls {

/// Positive rational parameter such as epsilon or delta, kept as p/q so every
/// comparison involving it can be done over the integers.
struct Rational {
  std::int64_t p = 1;
  std::int64_t q = 1;

  static Rational parse(std::string_view text) {
    auto slash = text.find('/');
    Rational r;
    try {
      if (slash == std::string_view::npos) {
        r.p = std::stoll(std::string(text));
        r.q = 1;
      } else {
        r.p = std::stoll(std::string(text.substr(0, slash)));
        r.q = std::stoll(std::string(text.substr(slash + 1)));
      }
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    if (r.p <= 0 || r.q <= 0) {
      throw std::invalid_argument("rational must be positive: '" + std::string(text) + "'");
    }
    auto g = std::gcd(r.p, r.q);
    r.p /= g;
    r.q /= g;
    return r;
  }

  double value() const { return static_cast<double>(p) / static_cast<double>(q); }
  std::string str() const { return std::to_string(p) + "/" + std::to_string(q); }

  friend bool operator==(const Rational&, const Rational&) = default;
};

}  // namespace lrpls
