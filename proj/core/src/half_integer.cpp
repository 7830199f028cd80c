#include "spinbath/half_integer.hpp"

#include <charconv>
#include <cmath>

#include "spinbath/errors.hpp"

namespace spinbath {

HalfInteger HalfInteger::from_double(double value) {
  if (!std::isfinite(value)) throw InvalidArgument("half-integer value must be finite");
  const double twice = 2.0 * value;
  const double rounded = std::round(twice);
  if (std::abs(twice - rounded) > 1e-9) {
    throw InvalidArgument("value " + std::to_string(value) + " is not a multiple of 1/2");
  }
  return HalfInteger(static_cast<std::int64_t>(rounded));
}

HalfInteger HalfInteger::parse(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    std::int64_t n = 0;
    const auto r = std::from_chars(num.data(), num.data() + num.size(), n);
    if (r.ec != std::errc() || r.ptr != num.data() + num.size() || (den != "2" && den != "1")) {
      throw InvalidArgument("cannot parse half-integer '" + text + "'");
    }
    return den == "2" ? HalfInteger(n) : HalfInteger(2 * n);
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("cannot parse half-integer '" + text + "'");
  }
  if (used != text.size()) throw InvalidArgument("cannot parse half-integer '" + text + "'");
  return from_double(v);
}

std::string HalfInteger::to_string() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

void require_spin_magnitude(HalfInteger spin, const char* what) {
  if (spin.twice() < 1) {
    throw InvalidArgument(std::string("2") + what + " must be a positive integer (got 2" + what +
                          "=" + std::to_string(spin.twice()) + ")");
  }
}

void require_projection(HalfInteger j, HalfInteger m) {
  if (j.twice() < 0) throw InvalidArgument("j must be non-negative");
  if (std::abs(m.twice()) > j.twice()) throw InvalidArgument("|m| exceeds j");
  if ((j.twice() - m.twice()) % 2 != 0) throw InvalidArgument("j and m must share parity");
}

}  // namespace spinbath
