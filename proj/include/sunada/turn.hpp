#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace sunada {

// Exact rational fraction of a full turn.  An edge phase p/q means the
// angle 2*pi*p/q.  Always kept reduced with a positive denominator.
struct Turn {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Turn() = default;
  Turn(std::int64_t p, std::int64_t q) : num(p), den(q) { reduce(); }

  static Turn zero() { return Turn{}; }

  using i128 = __int128;

  static Turn make128(i128 p, i128 q) {
    if (q == 0) throw std::invalid_argument("Turn: zero denominator");
    if (q < 0) {
      p = -p;
      q = -q;
    }
    i128 a = p < 0 ? -p : p;
    i128 b = q;
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      p /= a;
      q /= a;
    }
    constexpr i128 lim = i128(INT64_MAX);
    if (p > lim || p < -lim || q > lim) throw std::overflow_error("Turn: denominator overflow");
    Turn t;
    t.num = static_cast<std::int64_t>(p);
    t.den = static_cast<std::int64_t>(q);
    return t;
  }

  void reduce() {
    if (den == 0) throw std::invalid_argument("Turn: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  Turn operator+(const Turn& o) const { return make128(i128(num) * o.den + i128(o.num) * den, i128(den) * o.den); }
  Turn operator-(const Turn& o) const { return make128(i128(num) * o.den - i128(o.num) * den, i128(den) * o.den); }
  Turn operator-() const { return Turn(-num, den); }
  Turn operator*(std::int64_t k) const { return make128(i128(num) * k, i128(den)); }

  bool operator==(const Turn& o) const { return num == o.num && den == o.den; }

  // Representative in [0, 1).
  Turn mod1() const {
    std::int64_t r = num % den;
    if (r < 0) r += den;
    return Turn(r, den);
  }

  // Representative in (-1/2, 1/2], i.e. angle in (-pi, pi].
  Turn centered() const {
    Turn t = mod1();
    if (2 * t.num > t.den) return Turn(t.num - t.den, t.den);
    return t;
  }

  double angle() const { return 2.0 * M_PI * static_cast<double>(num) / static_cast<double>(den); }

  bool is_zero_mod1() const { return num % den == 0; }
};

}  // namespace sunada
