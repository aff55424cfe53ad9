#pragma once

// Test-only 50-digit reference for the basis functions: the textbook
// definition evaluated in extended precision, with the 2^n n! factor formed
// explicitly. Deliberately independent of the library's stabilized
// recurrence.

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace hermsv_test {

using mp50 = boost::multiprecision::cpp_bin_float_50;

inline const mp50& mp_pi() {
  static const mp50 pi(
      "3.14159265358979323846264338327950288419716939937510582097494459");
  return pi;
}

// Physical Hermite polynomial by the raw three-term recurrence.
inline mp50 hermite_poly(int n, const mp50& x) {
  mp50 h0 = 1, h1 = 2 * x;
  if (n == 0) return h0;
  for (int k = 1; k < n; ++k) {
    const mp50 next = 2 * x * h1 - 2 * k * h0;
    h0 = h1;
    h1 = next;
  }
  return h1;
}

// (alpha / (2^n n! sqrt(pi)))^{1/2} H_n(alpha x) e^{-alpha^2 x^2 / 2}
inline mp50 hermite_function(int n, const mp50& alpha, const mp50& x) {
  mp50 two_n_fact = 1;
  for (int k = 1; k <= n; ++k) two_n_fact *= 2 * mp50(k);
  const mp50 norm = sqrt(alpha / (two_n_fact * sqrt(mp_pi())));
  const mp50 y = alpha * x;
  return norm * hermite_poly(n, y) * exp(-y * y / 2);
}

}  // namespace hermsv_test
