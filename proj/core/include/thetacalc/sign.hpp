/**
 * @file sign.hpp
 * @brief Values in {+1, -1} with multiplicative arithmetic.
 */
#pragma once

#include <cstdint>
#include <ostream>

namespace thetacalc {

/// An element of the multiplicative group {+1, -1}.
class Sign {
 public:
  constexpr Sign() = default;

  static constexpr Sign plus() { return Sign(false); }
  static constexpr Sign minus() { return Sign(true); }
  /// (-1)^e for any integer e.
  static constexpr Sign parity(long long e) { return Sign((e % 2) != 0); }
  /// Throws std::invalid_argument unless v is +1 or -1.
  static Sign from_int(int v);

  constexpr int value() const { return neg_ ? -1 : 1; }
  constexpr bool is_plus() const { return !neg_; }
  constexpr bool is_minus() const { return neg_; }
  constexpr char symbol() const { return neg_ ? '-' : '+'; }

  constexpr Sign operator*(Sign o) const { return Sign(neg_ != o.neg_); }
  constexpr Sign& operator*=(Sign o) {
    neg_ = neg_ != o.neg_;
    return *this;
  }
  constexpr Sign operator-() const { return Sign(!neg_); }
  /// This sign raised to a non-negative or negative integer power.
  constexpr Sign pow(long long e) const { return (neg_ && (e % 2 != 0)) ? minus() : plus(); }

  constexpr bool operator==(const Sign&) const = default;

 private:
  constexpr explicit Sign(bool neg) : neg_(neg) {}
  bool neg_ = false;
};

inline std::ostream& operator<<(std::ostream& os, Sign s) { return os << s.symbol(); }

}  // namespace thetacalc
