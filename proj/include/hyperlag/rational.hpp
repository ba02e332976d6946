#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace hyperlag {

using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational &r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational &r) {
  if (r.denominator() == 1)
    return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Binomial coefficient C(n, k); exact for the desk-scale arguments used here.
inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n)
    return 0;
  if (k > n - k)
    k = n - k;
  std::int64_t result = 1;
  for (std::int64_t i = 1; i <= k; ++i)
    result = result * (n - k + i) / i;
  return result;
}

inline std::int64_t factorial(int k) {
  std::int64_t f = 1;
  for (int i = 2; i <= k; ++i)
    f *= i;
  return f;
}

} // namespace hyperlag
