#pragma once

#include <charconv>
#include <compare>
#include <cstdlib>
#include <string>
#include <string_view>

#include "so4/errors.hpp"

namespace so4 {

/// Angular momentum quantum number stored as twice its value.
class HalfInt {
 public:
  constexpr HalfInt() = default;

  static constexpr HalfInt from_twice(int twice) { return HalfInt(twice); }
  static constexpr HalfInt from_int(int value) { return HalfInt(2 * value); }

  constexpr int twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr bool is_half_odd() const { return !is_integer(); }

  /// Value as an integer; throws unless is_integer().
  int to_int() const {
    if (!is_integer()) {
      throw DomainError("half-integer " + to_string() + " is not an integer");
    }
    return twice_ / 2;
  }
  constexpr double to_double() const { return 0.5 * twice_; }

  constexpr HalfInt operator-() const { return HalfInt(-twice_); }
  constexpr HalfInt operator+(HalfInt o) const { return HalfInt(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return HalfInt(twice_ - o.twice_); }
  constexpr HalfInt& operator+=(HalfInt o) {
    twice_ += o.twice_;
    return *this;
  }
  constexpr HalfInt& operator-=(HalfInt o) {
    twice_ -= o.twice_;
    return *this;
  }
  constexpr auto operator<=>(const HalfInt&) const = default;

  std::string to_string() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

  /// Accepts "3", "-2", "1/2", "-3/2", "0.5", "-1.5".
  static HalfInt parse(std::string_view text) {
    auto fail = [&]() -> HalfInt {
      throw ParseError("not a half-integer: '" + std::string(text) + "'");
    };
    if (text.empty()) return fail();
    auto to_int = [&](std::string_view s, int& out) {
      if (!s.empty() && s.front() == '+') s.remove_prefix(1);
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
      return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
    };
    int value = 0;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      int den = 0;
      if (!to_int(text.substr(0, slash), value) || !to_int(text.substr(slash + 1), den)) {
        return fail();
      }
      if (den == 1) return from_int(value);
      if (den == 2) return from_twice(value);
      return fail();
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      std::string_view whole = text.substr(0, dot);
      std::string_view frac = text.substr(dot + 1);
      bool negative = !whole.empty() && whole.front() == '-';
      int w = 0;
      if (whole == "-" || whole.empty()) {
        w = 0;
      } else if (!to_int(whole, w)) {
        return fail();
      }
      while (frac.size() > 1 && frac.back() == '0') frac.remove_suffix(1);
      int half = 0;
      if (frac == "5") {
        half = 1;
      } else if (frac != "0" && !frac.empty()) {
        return fail();
      }
      int twice = 2 * std::abs(w) + half;
      return from_twice(negative || w < 0 ? -twice : twice);
    }
    if (!to_int(text, value)) return fail();
    return from_int(value);
  }

 private:
  constexpr explicit HalfInt(int twice) : twice_(twice) {}
  int twice_ = 0;
};

inline HalfInt abs(HalfInt h) { return HalfInt::from_twice(std::abs(h.twice())); }

/// (-1)^k for an integer-valued HalfInt.
inline int parity_sign(HalfInt h) { return (h.to_int() % 2 == 0) ? 1 : -1; }

inline int parity_sign(int k) { return (k % 2 == 0) ? 1 : -1; }

}  // namespace so4
