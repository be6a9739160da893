#pragma once

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "hyperexp/types.hpp"

namespace hyperexp {

// Largest range length stern_range will tabulate (2^23 entries). Above
// this, use SternTable, which touches only O(log n) positions per query.
inline constexpr std::uint64_t kTabulationLimit = std::uint64_t{1} << 23;

// Memoized evaluator for the base-b Stern sequence
//   s(0) = 0, s(1) = 1,
//   s(b n)     = s(n),
//   s(b n + 1) = s(n) + s(n + 1),
//   s(b n + i) = s(n + 1)          for 2 <= i <= b - 1.
// The third branch is empty when b = 2. A query of n costs O(log n)
// recursive steps; the memo persists across queries.
class SternTable {
 public:
  explicit SternTable(Base base) : base_(base) {}

  const Int& operator()(const Int& n) {
    if (n < 0) {
      throw std::domain_error("SternTable: negative argument");
    }
    return eval(n);
  }

  Base base() const { return base_; }
  std::size_t memo_size() const { return memo_.size(); }

 private:
  const Int& eval(const Int& n) {
    auto it = memo_.find(n);
    if (it != memo_.end()) return it->second;
    Int result;
    if (n == 0) {
      result = 0;
    } else if (n == 1) {
      result = 1;
    } else {
      const Int b(base_.value());
      Int q, r;
      boost::multiprecision::divide_qr(n, b, q, r);
      if (r == 0) {
        result = eval(q);
      } else if (r == 1) {
        result = eval(q) + eval(q + 1);
      } else {
        result = eval(q + 1);
      }
    }
    return memo_.emplace(n, std::move(result)).first->second;
  }

  Base base_;
  std::unordered_map<Int, Int, IntHash> memo_;
};

inline Int stern(Base base, const Int& n) {
  SternTable table(base);
  return table(n);
}

// Values s(0..n_max) in one bottom-up pass. Each entry is filled from
// indices <= ceil(n/b) + 1, so a single left-to-right sweep suffices.
inline std::vector<Int> stern_range(Base base, std::uint64_t n_max) {
  if (n_max >= kTabulationLimit) {
    throw std::length_error("stern_range: range exceeds tabulation limit");
  }
  std::vector<Int> s(n_max + 1);
  if (n_max >= 1) s[1] = 1;
  const auto b = static_cast<std::uint64_t>(base.value());
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    const std::uint64_t q = n / b;
    const std::uint64_t r = n % b;
    if (r == 0) {
      s[n] = s[q];
    } else if (r == 1) {
      s[n] = s[q] + s[q + 1];
    } else {
      s[n] = s[q + 1];
    }
  }
  return s;
}

// Decomposition identities for s on arguments with a fixed low-digit
// pattern. Each is checked for every j in [0, j_max]; any failure is
// recorded with both sides evaluated.
struct IdentityCheck {
  struct Violation {
    int identity;  // 1-based index into the list below
    Int j;
    Int lhs;
    Int rhs;
  };
  std::uint64_t checked = 0;
  std::vector<Violation> violations;
};

// The five identities, with B = b as an Int:
//   1. s(b^3 j + 1)            = 2 s(j) + s(b j + 1)
//   2. s(b^4 j + b + 1)        = s(j) + 2 s(b^2 j + 1)
//   3. s(b^4 j + b^3 + b + 1)  = s(b^3 j + b^2 + 1) + s(b^2 j + b + 1)
//   4. s(b^3 j + b^2 + 1)      = s(b j + 1) + s(b^2 j + b + 1)
//   5. s(b^3 j + b^2 + b + 1)  = s(b^2 j + b + 1) + s(j + 1)
inline IdentityCheck check_case_identities(Base base, const Int& j_max) {
  SternTable s(base);
  const Int b(base.value());
  const Int b2 = b * b, b3 = b2 * b, b4 = b3 * b;
  IdentityCheck out;
  auto push = [&](int id, const Int& j, const Int& lhs, const Int& rhs) {
    if (lhs != rhs) out.violations.push_back({id, j, lhs, rhs});
  };
  for (Int j = 0; j <= j_max; ++j) {
    push(1, j, s(b3 * j + 1), 2 * s(j) + s(b * j + 1));
    push(2, j, s(b4 * j + b + 1), s(j) + 2 * s(b2 * j + 1));
    push(3, j, s(b4 * j + b3 + b + 1), s(b3 * j + b2 + 1) + s(b2 * j + b + 1));
    push(4, j, s(b3 * j + b2 + 1), s(b * j + 1) + s(b2 * j + b + 1));
    push(5, j, s(b3 * j + b2 + b + 1), s(b2 * j + b + 1) + s(j + 1));
    out.checked += 5;
  }
  return out;
}

}  // namespace hyperexp
