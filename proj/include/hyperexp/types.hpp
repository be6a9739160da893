#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/functional/hash.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace hyperexp {

// Arbitrary-precision integer. Counting values are nonnegative by
// construction; signed intermediates are fine.
using Int = boost::multiprecision::cpp_int;

// Exact rational with automatic normalization (gcd-reduced, positive
// denominator).
using Rational = boost::multiprecision::cpp_rational;

// 50 decimal digits of binary floating point. Enough headroom that every
// tolerance used in this project (1e-6 .. 1e-12) is many orders of magnitude
// above the rounding floor.
using Real = boost::multiprecision::cpp_bin_float_50;

// Wider type for internal cross-checks of Real results.
using WideReal = boost::multiprecision::cpp_bin_float_100;

// A numeration base b >= 2. Constructing an invalid base throws immediately
// so downstream code never has to re-validate.
class Base {
 public:
  explicit Base(std::int64_t b) : value_(b) {
    if (b < 2) {
      throw std::invalid_argument("base must be at least 2, got " +
                                  std::to_string(b));
    }
  }

  std::int64_t value() const { return value_; }

  friend bool operator==(Base a, Base b) { return a.value_ == b.value_; }
  friend bool operator!=(Base a, Base b) { return a.value_ != b.value_; }

 private:
  std::int64_t value_;
};

struct IntHash {
  std::size_t operator()(const Int& v) const { return boost::hash<Int>{}(v); }
};

}  // namespace hyperexp
