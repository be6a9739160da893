#pragma once

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "hyperexp/types.hpp"

namespace hyperexp {

// One hyper-expansion of an integer in base b: coefficients c_i in
// {0, 1, ..., b} (the overflow digit b is allowed), least significant first,
// final coefficient nonzero. The empty vector encodes the expansion of 0.
struct HyperExpansion {
  Base base;
  std::vector<std::int32_t> coeffs;
};

// The integer a hyper-expansion denotes. Coefficients up to and including
// the base value itself are legal here, unlike plain digit words.
inline Int expansion_value(const HyperExpansion& e) {
  const Int b(e.base.value());
  Int acc = 0;
  for (auto it = e.coeffs.rbegin(); it != e.coeffs.rend(); ++it) {
    if (*it < 0 || *it > e.base.value()) {
      throw std::domain_error("expansion_value: coefficient out of range");
    }
    acc = acc * b + *it;
  }
  return acc;
}

// Counts hyper-expansions of n by exhausting the choices for the last
// coefficient. c_0 must satisfy c_0 = n (mod b) with c_0 in {0..b}, so
// c_0 is n mod b, or additionally b itself when n is a positive multiple
// of b. Stripping c_0 reduces n to (n - c_0) / b. Memoized on n.
class ExpansionCounter {
 public:
  explicit ExpansionCounter(Base base) : base_(base) {}

  const Int& count(const Int& n) {
    if (n < 0) {
      throw std::domain_error("ExpansionCounter::count: negative argument");
    }
    auto it = memo_.find(n);
    if (it != memo_.end()) return it->second;
    Int result;
    if (n == 0) {
      result = 1;
    } else {
      const Int b(base_.value());
      Int q, r;
      boost::multiprecision::divide_qr(n, b, q, r);
      result = count(q);
      if (r == 0 && n >= b) {
        result += count(q - 1);
      }
    }
    return memo_.emplace(n, std::move(result)).first->second;
  }

  std::size_t memo_size() const { return memo_.size(); }

 private:
  Base base_;
  std::unordered_map<Int, Int, IntHash> memo_;
};

inline Int count_expansions(Base base, const Int& n) {
  ExpansionCounter counter(base);
  return counter.count(n);
}

// All hyper-expansions of n in lexicographic order of the coefficient
// vector (least significant coefficient varies slowest), cut off after
// `cap` entries. `total` always holds the true count.
struct ExpansionList {
  std::vector<HyperExpansion> items;
  bool truncated = false;
  Int total;
};

namespace detail {

inline bool list_expansions_rec(Base base, const Int& n,
                                std::vector<std::int32_t>& prefix,
                                std::size_t cap, ExpansionList& out) {
  if (out.items.size() >= cap) {
    out.truncated = true;
    return false;
  }
  if (n == 0) {
    HyperExpansion e{base, prefix};
    while (!e.coeffs.empty() && e.coeffs.back() == 0) e.coeffs.pop_back();
    out.items.push_back(std::move(e));
    return true;
  }
  const Int b(base.value());
  Int q, r;
  boost::multiprecision::divide_qr(n, b, q, r);
  const auto r32 = r.convert_to<std::int32_t>();
  prefix.push_back(r32);
  bool keep_going = list_expansions_rec(base, q, prefix, cap, out);
  prefix.pop_back();
  if (!keep_going) return false;
  if (r == 0 && n >= b) {
    prefix.push_back(static_cast<std::int32_t>(base.value()));
    keep_going = list_expansions_rec(base, q - 1, prefix, cap, out);
    prefix.pop_back();
  }
  return keep_going;
}

}  // namespace detail

inline ExpansionList list_expansions(Base base, const Int& n,
                                     std::size_t cap) {
  if (n < 0) {
    throw std::domain_error("list_expansions: negative argument");
  }
  ExpansionList out;
  out.total = count_expansions(base, n);
  std::vector<std::int32_t> prefix;
  detail::list_expansions_rec(base, n, prefix, cap, out);
  return out;
}

}  // namespace hyperexp
