#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperexp/types.hpp"

namespace hyperexp {

// Fibonacci numbers extended one step left: F(-1) = 1, F(0) = 0, F(1) = 1.
// The extension makes the k = 0 envelope segment below follow the same
// slope formula as every later segment.
inline Int fibonacci(int k) {
  if (k < -1) {
    throw std::domain_error("fibonacci: index below -1");
  }
  Int prev = 1, cur = 0;  // F(-1), F(0)
  for (int i = 0; i < k; ++i) {
    Int next = prev + cur;
    prev = cur;
    cur = next;
  }
  return k == -1 ? prev : cur;
}

// Knot abscissa t(k) = (b^k - 1) / (b^2 - 1). Satisfies t(0) = 0,
// t(1) = 1/(b+1), and t(k+2) = b^2 t(k) + 1. Integer exactly when k is
// even.
inline Rational tilde_knot(Base base, int k) {
  if (k < 0) {
    throw std::domain_error("tilde_knot: negative index");
  }
  const Int b(base.value());
  return Rational(boost::multiprecision::pow(b, static_cast<unsigned>(k)) - 1,
                  b * b - 1);
}

// Position of the k-th record: the smallest argument where the sequence
// first reaches F(k). Equals t(k) for even k and t(k) + b/(b+1) for odd k;
// both cases are integers. In base-b digits, reading most significant
// first: (10)^(l-1) 1 for k = 2l and (10)^(l-1) 11 for k = 2l + 1.
inline Int record_position(Base base, int k) {
  if (k < 2) {
    throw std::domain_error("record_position: index must be at least 2");
  }
  Rational r = tilde_knot(base, k);
  if (k % 2 == 1) {
    r += Rational(base.value(), base.value() + 1);
  }
  if (boost::multiprecision::denominator(r) != 1) {
    throw std::logic_error("record_position: non-integer result");
  }
  return boost::multiprecision::numerator(r);
}

// The piecewise-linear upper envelope h of the sequence: the polygonal
// line through the points (t(k), F(k)) for k = 0, 1, 2, ... On the
// segment [t(k), t(k+1)],
//   h(x) = F(k-1) (b+1) / b^k * x
//        - F(k-1) (b^k - 1) / (b^k (b-1))
//        + F(k),
// which the F(-1) = 1 convention extends to k = 0 as h(x) = (b+1) x.
// h is concave for x >= 1, satisfies the exact functional equation
//   h(x) + h(b x + 1/(b+1)) = h(b^2 x + 1),
// and dominates the sequence: s(m) <= h(m), with equality at every even
// knot t(2k).
class Envelope {
 public:
  explicit Envelope(Base base) : base_(base) {
    knots_.push_back(Rational(0));
    knots_.push_back(Rational(1, base_.value() + 1));
    fibs_ = {Int(1), Int(0), Int(1)};  // F(-1), F(0), F(1)
    append_segment_coeffs(0);
    append_segment_coeffs(1);
  }

  Base base() const { return base_; }

  // t(k), cached. Returned by value: the cache grows on demand, so
  // references into it would not survive later calls.
  Rational knot(int k) {
    if (k < 0) throw std::domain_error("Envelope::knot: negative index");
    ensure(k);
    return knots_[static_cast<std::size_t>(k)];
  }

  // F(k) for k >= -1, cached.
  Int fib(int k) {
    if (k < -1) throw std::domain_error("Envelope::fib: index below -1");
    ensure(k);
    return fibs_[static_cast<std::size_t>(k + 1)];
  }

  // Slope of h on [t(k), t(k+1)]: F(k-1) (b+1) / b^k. Strictly positive;
  // nonincreasing in k from k = 2 onward (the k = 1 slope is zero, so
  // monotonicity starts one segment later).
  Rational slope(int k) {
    if (k < 0) throw std::domain_error("Envelope::slope: negative index");
    ensure(k);
    return slopes_[static_cast<std::size_t>(k)];
  }

  // Index k of the segment containing x, i.e. the largest k with
  // t(k) <= x.
  int segment_of(const Rational& x) {
    if (x < 0) throw std::domain_error("Envelope::segment_of: negative x");
    while (knots_.back() < x) ensure(static_cast<int>(knots_.size()));
    std::size_t lo = 0, hi = knots_.size();  // first knot > x, via bisection
    while (lo < hi) {
      std::size_t mid = lo + (hi - lo) / 2;
      if (knots_[mid] <= x) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    return static_cast<int>(lo) - 1;
  }

  Rational h(Rational x) {  // by value: x may not alias the knot cache
    if (x < 0) throw std::domain_error("Envelope::h: negative x");
    const auto k = static_cast<std::size_t>(segment_of(x));
    return slopes_[k] * x + intercepts_[k];
  }

 private:
  // Extends all caches so that indices 0..k are valid.
  void ensure(int k) {
    while (static_cast<int>(knots_.size()) <= k) {
      const auto next = static_cast<int>(knots_.size());
      const Int b(base_.value());
      knots_.push_back(b * b * knots_[static_cast<std::size_t>(next - 2)] + 1);
      fibs_.push_back(fibs_[fibs_.size() - 1] + fibs_[fibs_.size() - 2]);
      append_segment_coeffs(next);
    }
  }

  void append_segment_coeffs(int k) {
    const Int b(base_.value());
    const Int bk = boost::multiprecision::pow(b, static_cast<unsigned>(k));
    const Rational slope(fibs_[static_cast<std::size_t>(k)] * (b + 1), bk);
    slopes_.push_back(slope);
    intercepts_.push_back(fibs_[static_cast<std::size_t>(k + 1)] -
                          slope * knots_[static_cast<std::size_t>(k)]);
  }

  Base base_;
  std::vector<Rational> knots_;       // knots_[k] = t(k)
  std::vector<Int> fibs_;             // fibs_[k + 1] = F(k)
  std::vector<Rational> slopes_;      // slopes_[k] on [t(k), t(k+1)]
  std::vector<Rational> intercepts_;  // h(x) = slope * x + intercept there
};

// Continuous growth bound H(x) = ((b^2 - 1) x)^E / sqrt(5) with exponent
// E = log(phi) / log(b). Computed as a single power so the only rounding
// beyond the argument product is one pow and one division. Satisfies
// H(b^2 x) = phi^2 H(x) and H(1 / (b^2 - 1)) = 1 / sqrt(5).
template <class F>
F maximal_order_as(Base base, const F& x) {
  if (!(x > 0)) {
    throw std::domain_error("maximal_order: argument must be positive");
  }
  using std::log;
  using std::pow;
  using std::sqrt;
  const F five(5);
  const F phi = (sqrt(five) + 1) / 2;
  const F exponent = log(phi) / log(F(base.value()));
  const F scale = F(base.value()) * F(base.value()) - 1;
  return pow(scale * x, exponent) / sqrt(five);
}

inline Real maximal_order(Base base, const Real& x) {
  return maximal_order_as<Real>(base, x);
}

inline Real maximal_order(Base base, const Rational& x) {
  return maximal_order_as<Real>(base, Real(x));
}

// The normalized limit constant c = H(1) = (b^2 - 1)^(log_b phi) / sqrt(5):
// records r(2k) satisfy F(2k) / r(2k)^(log_b phi) -> c as k grows. The
// same number is phi^(log_b (b^2 - 1)) / sqrt(5); both routes are computed
// and must agree, guarding against a broken pow/log in either path.
inline Real maximal_order_constant(Base base) {
  const Real direct = maximal_order_as<Real>(base, Real(1));
  const Real five(5);
  const Real phi = (sqrt(five) + 1) / 2;
  const Real scale = Real(base.value()) * Real(base.value()) - 1;
  const Real swapped = pow(phi, log(scale) / log(Real(base.value()))) /
                       sqrt(five);
  if (abs(direct - swapped) > direct * Real("1e-40")) {
    throw std::logic_error("maximal_order_constant: route disagreement");
  }
  return direct;
}

// String form of the constant with 1..50 significant digits, evaluated at
// twice the working precision so every printed digit is stable.
inline std::string maximal_order_constant_digits(Base base, int digits) {
  if (digits < 1 || digits > 50) {
    throw std::invalid_argument(
        "maximal_order_constant_digits: digits must be in 1..50");
  }
  const WideReal value = maximal_order_as<WideReal>(base, WideReal(1));
  return value.str(digits);
}

}  // namespace hyperexp
