#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace spinbath {

/// Exact half-integer quantum number (S, j, m, l) held as twice its value.
class HalfInteger {
 public:
  constexpr HalfInteger() = default;

  static constexpr HalfInteger from_twice(std::int64_t twice) { return HalfInteger(twice); }
  static constexpr HalfInteger integer(std::int64_t value) { return HalfInteger(2 * value); }

  /// Parses a real that must be an exact multiple of 1/2 (to 1e-9).
  static HalfInteger from_double(double value);
  /// Accepts "3/2", "1.5", "2".
  static HalfInteger parse(const std::string& text);

  constexpr std::int64_t twice() const { return twice_; }
  constexpr double value() const { return 0.5 * static_cast<double>(twice_); }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  /// j(j+1) for this value.
  constexpr double casimir() const { return value() * (value() + 1.0); }

  std::string to_string() const;

  constexpr HalfInteger operator-() const { return HalfInteger(-twice_); }
  constexpr HalfInteger operator+(HalfInteger o) const { return HalfInteger(twice_ + o.twice_); }
  constexpr HalfInteger operator-(HalfInteger o) const { return HalfInteger(twice_ - o.twice_); }
  constexpr HalfInteger operator*(std::int64_t k) const { return HalfInteger(twice_ * k); }

  constexpr auto operator<=>(const HalfInteger&) const = default;

 private:
  constexpr explicit HalfInteger(std::int64_t twice) : twice_(twice) {}
  std::int64_t twice_ = 0;
};

constexpr HalfInteger abs(HalfInteger h) { return h.twice() < 0 ? -h : h; }

/// Throws InvalidArgument unless 2S >= 1.
void require_spin_magnitude(HalfInteger spin, const char* what = "S");

/// Throws InvalidArgument unless |2m| <= 2j and 2j, 2m share parity.
void require_projection(HalfInteger j, HalfInteger m);

}  // namespace spinbath
