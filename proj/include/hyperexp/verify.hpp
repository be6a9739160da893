#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperexp/digits.hpp"
#include "hyperexp/envelope.hpp"
#include "hyperexp/expansions.hpp"
#include "hyperexp/linear_rep.hpp"
#include "hyperexp/stern.hpp"
#include "hyperexp/types.hpp"

namespace hyperexp {

// Draws rationals in [0, x_max) from raw mt19937_64 outputs. The engine's
// output sequence is pinned by the standard (the distribution adapters are
// not), so a seed reproduces the identical sample stream on every
// platform. Each sample is (p / q) * x_max with q an odd 64-bit draw and
// p a second draw reduced mod q.
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed) : gen_(seed) {}

  Rational next(const Rational& x_max) {
    const std::uint64_t q = gen_() | 1;
    const std::uint64_t p = gen_() % q;
    return Rational(Int(p), Int(q)) * x_max;
  }

 private:
  std::mt19937_64 gen_;
};

// Result of comparing the recurrence, the linear representation, and the
// expansion-counting oracle on a shared range, or of the digit-embedding
// identity. `mismatches` lists every n where the engines disagree.
struct AgreementCheck {
  std::uint64_t checked = 0;
  std::vector<Int> mismatches;
};

// Checks, for every 0 <= n <= n_max, that the recurrence tabulation, the
// matrix product, and the count of hyper-expansions of n - 1 all agree.
// The last comparison is the bridge between the sequence and its counting
// interpretation: s(n) counts hyper-expansions of n - 1.
inline AgreementCheck verify_engines(Base base, std::uint64_t n_max) {
  const std::vector<Int> table = stern_range(base, n_max);
  const LinearRep rep = stern_rep(base);
  ExpansionCounter oracle(base);
  AgreementCheck out;
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    const Int& expected = table[n];
    const Int via_rep = evaluate_at(rep, Int(n));
    const Int via_oracle = n == 0 ? Int(0) : oracle.count(Int(n - 1));
    ++out.checked;
    if (via_rep != expected || via_oracle != expected) {
      out.mismatches.push_back(Int(n));
    }
  }
  return out;
}

// Checks s_b(psi(n)) = s_2(n) for 0 <= n <= n_max, where psi rereads the
// binary digits of n in base b. The base-b sequence restricted to
// zero-one arguments reproduces the binary sequence exactly.
inline AgreementCheck verify_embedding(Base base, std::uint64_t n_max) {
  SternTable in_base(base);
  SternTable binary(Base(2));
  AgreementCheck out;
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    ++out.checked;
    if (in_base(psi(Int(n), base)) != binary(Int(n))) {
      out.mismatches.push_back(Int(n));
    }
  }
  return out;
}

// Result of testing the envelope bound s(m) <= h(m) on a range, together
// with the tightness points: at every even knot t(2k) the bound must hold
// with equality.
struct EnvelopeCheck {
  std::uint64_t checked = 0;
  std::vector<Int> violations;         // m with s(m) > h(m)
  std::vector<Int> equality_points;    // even knots <= n_max, s == h there
  std::vector<Int> equality_failures;  // even knots where s != h
};

inline EnvelopeCheck verify_envelope(Base base, std::uint64_t n_max) {
  const std::vector<Int> table = stern_range(base, n_max);
  Envelope env(base);
  EnvelopeCheck out;
  for (std::uint64_t m = 0; m <= n_max; ++m) {
    ++out.checked;
    if (Rational(table[m]) > env.h(Rational(m))) {
      out.violations.push_back(Int(m));
    }
  }
  for (int k = 1;; ++k) {
    const Rational knot = env.knot(2 * k);
    if (knot > n_max) break;
    const Int t = boost::multiprecision::numerator(knot);
    if (table[t.convert_to<std::uint64_t>()] == env.fib(2 * k)) {
      out.equality_points.push_back(t);
    } else {
      out.equality_failures.push_back(t);
    }
  }
  return out;
}

// Result of testing the sharpened bound on the arithmetic progression
// where it applies: every m <= n_max whose base-b digits are all 0 or 1
// and with m = b + 1 (mod b^2) must satisfy s(m) <= h(m - b/(b+1)).
struct StrengtheningCheck {
  std::uint64_t checked = 0;
  std::vector<Int> violations;
};

inline StrengtheningCheck verify_strengthening(Base base, const Int& n_max) {
  SternTable s(base);
  Envelope env(base);
  const Rational shift(base.value(), base.value() + 1);
  StrengtheningCheck out;
  // Zero-one arguments are exactly the psi images; the congruence
  // m = b + 1 (mod b^2) picks the psi images of n = 3 (mod 4).
  for (Int n = 3;; n += 4) {
    const Int m = psi(n, base);
    if (m > n_max) break;
    ++out.checked;
    if (Rational(s(m)) > env.h(Rational(m) - shift)) {
      out.violations.push_back(m);
    }
  }
  return out;
}

// Result of testing the exact functional equation
//   h(x) + h(b x + 1/(b+1)) = h(b^2 x + 1)
// at every knot <= x_max and at `trials` sampled rationals in [0, x_max).
struct HRecurrenceCheck {
  std::uint64_t checked = 0;
  std::vector<Rational> violations;
};

inline HRecurrenceCheck verify_h_recurrence(Base base, int trials,
                                            const Rational& x_max,
                                            std::uint64_t seed) {
  if (trials < 0) {
    throw std::invalid_argument("verify_h_recurrence: negative trial count");
  }
  if (x_max <= 0) {
    throw std::invalid_argument("verify_h_recurrence: x_max must be positive");
  }
  Envelope env(base);
  const Int b(base.value());
  const Rational knot1(1, base.value() + 1);
  HRecurrenceCheck out;
  auto check_at = [&](const Rational& x) {
    ++out.checked;
    if (env.h(x) + env.h(b * x + knot1) != env.h(b * b * x + 1)) {
      out.violations.push_back(x);
    }
  };
  for (int k = 0; env.knot(k) <= x_max; ++k) {
    check_at(env.knot(k));
  }
  RationalSampler sampler(seed);
  for (int i = 0; i < trials; ++i) {
    check_at(sampler.next(x_max));
  }
  return out;
}

// One verified record: position a_k, value F_k, and how close F_k already
// sits to the continuous bound at a_k. `exhaustive` records whether the
// whole interval [b^(k-2), b^(k-1)) was scanned or only the identity
// s(a_k) = F_k was confirmed through the linear representation.
struct RecordCheck {
  int k = 0;
  Int position;
  Int value;
  Real ratio_to_bound;
  bool exhaustive = false;
  bool ok = false;
  std::string note;
};

// For each 2 <= k <= k_max: the maximum of s on [b^(k-2), b^(k-1)) equals
// F_k and is first attained at a_k. Intervals whose endpoint exceeds
// scan_limit (or the tabulation limit) are checked pointwise instead.
inline std::vector<RecordCheck> verify_records(Base base, int k_max,
                                               std::uint64_t scan_limit) {
  if (k_max < 2) {
    throw std::invalid_argument("verify_records: k_max must be at least 2");
  }
  const Int b(base.value());
  const std::uint64_t cap =
      std::min<std::uint64_t>(scan_limit, kTabulationLimit - 1);
  int top_exhaustive = 1;  // largest k whose interval end b^(k-1) fits
  {
    Int end = b;  // b^(k-1) for k = 2
    for (int k = 2; k <= k_max && end <= cap; ++k) {
      top_exhaustive = k;
      end *= b;
    }
  }
  std::vector<Int> table;
  if (top_exhaustive >= 2) {
    const Int end = boost::multiprecision::pow(
        b, static_cast<unsigned>(top_exhaustive - 1));
    table = stern_range(base, end.convert_to<std::uint64_t>() - 1);
  }
  const LinearRep rep = stern_rep(base);
  std::vector<RecordCheck> out;
  for (int k = 2; k <= k_max; ++k) {
    RecordCheck row;
    row.k = k;
    row.position = record_position(base, k);
    row.value = fibonacci(k);
    row.ratio_to_bound =
        Real(row.value) / maximal_order(base, Real(row.position));
    if (k <= top_exhaustive) {
      row.exhaustive = true;
      const auto lo = boost::multiprecision::pow(b, static_cast<unsigned>(k - 2))
                          .convert_to<std::uint64_t>();
      const auto hi =
          boost::multiprecision::pow(b, static_cast<unsigned>(k - 1))
              .convert_to<std::uint64_t>();
      std::uint64_t argmax = lo;
      for (std::uint64_t n = lo; n < hi; ++n) {
        if (table[n] > table[argmax]) argmax = n;
      }
      row.ok = table[argmax] == row.value && Int(argmax) == row.position;
      if (!row.ok) {
        row.note = "interval maximum " + table[argmax].str() + " at " +
                   std::to_string(argmax);
      }
    } else {
      row.ok = evaluate_at(rep, row.position) == row.value;
      if (!row.ok) row.note = "matrix evaluation differs at record position";
    }
    out.push_back(std::move(row));
  }
  return out;
}

// One row of the convergence table: how fast F_k / H(a_k) approaches 1
// and how the envelope separates from the continuous bound at the
// records. Differences smaller than H * 1e-90 are reported as exact zero:
// they sit at the 100-digit evaluation noise and carry no information.
// The sign of h - H is not fixed: the gap is positive at records for
// b = 2 but turns negative for b >= 3 once k is large.
struct ConvergenceRow {
  int k = 0;
  Int position;
  Int value;
  Real ratio_to_bound;
  Real h_minus_bound;
  bool cross_checked = false;
};

inline std::vector<ConvergenceRow> convergence_report(Base base, int k_max) {
  if (k_max < 2) {
    throw std::invalid_argument("convergence_report: k_max must be at least 2");
  }
  Envelope env(base);
  const LinearRep rep = stern_rep(base);
  std::vector<ConvergenceRow> out;
  for (int k = 2; k <= k_max; ++k) {
    ConvergenceRow row;
    row.k = k;
    row.position = record_position(base, k);
    row.value = env.fib(k);
    const WideReal bound =
        maximal_order_as<WideReal>(base, WideReal(row.position));
    row.ratio_to_bound = Real(WideReal(row.value) / bound);
    WideReal diff = WideReal(env.h(Rational(row.position))) - bound;
    if (abs(diff) < bound * WideReal("1e-90")) diff = 0;
    row.h_minus_bound = Real(diff);
    row.cross_checked = evaluate_at(rep, row.position) == row.value;
    out.push_back(std::move(row));
  }
  return out;
}

// Exhaustive maximum of the normalized ratio s(m) / H(m) over
// 1 <= m <= n_max. A double-precision sweep selects candidates, which are
// then re-ranked in 50-digit arithmetic; the double error is many orders
// of magnitude below the 1e-6 candidate slack. `over_unity` lists every m
// whose ratio exceeds 1 + 1e-12 in 50-digit arithmetic.
struct NormalizedScan {
  std::uint64_t checked = 0;
  Int argmax;
  Real max_ratio;
  std::vector<Int> over_unity;
};

inline NormalizedScan scan_normalized_max(Base base, std::uint64_t n_max) {
  if (n_max < 1) {
    throw std::invalid_argument("scan_normalized_max: empty range");
  }
  const std::vector<Int> table = stern_range(base, n_max);
  const double bd = static_cast<double>(base.value());
  const double exponent =
      std::log((1 + std::sqrt(5.0)) / 2) / std::log(bd);
  const double scale = bd * bd - 1;
  const double sqrt5 = std::sqrt(5.0);
  double best = 0;
  std::vector<double> ratios(n_max + 1, 0.0);
  for (std::uint64_t m = 1; m <= n_max; ++m) {
    const double r = table[m].convert_to<double>() /
                     (std::pow(scale * static_cast<double>(m), exponent) /
                      sqrt5);
    ratios[m] = r;
    if (r > best) best = r;
  }
  const double threshold = std::min(best - 1e-6, 1.0 - 1e-6);
  NormalizedScan out;
  out.checked = n_max;
  const Real unity_slack = Real(1) + Real("1e-12");
  Real best_exact(-1);
  for (std::uint64_t m = 1; m <= n_max; ++m) {
    if (ratios[m] < threshold) continue;
    const Real r = Real(table[m]) / maximal_order(base, Real(m));
    if (r > best_exact) {
      best_exact = r;
      out.argmax = Int(m);
    }
    if (r > unity_slack) {
      out.over_unity.push_back(Int(m));
    }
  }
  out.max_ratio = best_exact;
  return out;
}

}  // namespace hyperexp
