#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hyperexp/types.hpp"

namespace hyperexp {

// A word of base-b digits, least significant first. The canonical expansion
// of n >= 1 has a nonzero final (most significant) digit; n = 0 is the empty
// word. Non-canonical words (trailing zeros) are permitted: they arise when
// feeding padded digit strings to a linear representation, which is
// insensitive to them.
struct DigitString {
  Base base;
  std::vector<std::int32_t> digits;
};

inline bool is_canonical(const DigitString& d) {
  return d.digits.empty() || d.digits.back() != 0;
}

// Canonical base-b digits of n, least significant first. n must be >= 0.
inline DigitString to_digits(Int n, Base base) {
  if (n < 0) {
    throw std::domain_error("to_digits: negative argument");
  }
  DigitString out{base, {}};
  const Int b(base.value());
  Int q, r;
  while (n > 0) {
    boost::multiprecision::divide_qr(n, b, q, r);
    out.digits.push_back(r.convert_to<std::int32_t>());
    n = q;
  }
  return out;
}

// The integer a digit word denotes (Horner, most significant digit first).
// Accepts non-canonical words; rejects digits outside [0, base).
inline Int value(const DigitString& d) {
  const Int b(d.base.value());
  Int acc = 0;
  for (auto it = d.digits.rbegin(); it != d.digits.rend(); ++it) {
    if (*it < 0 || *it >= d.base.value()) {
      throw std::domain_error("value: digit out of range for base");
    }
    acc = acc * b + *it;
  }
  return acc;
}

// Reads the binary expansion of n as if it were written in base b. Strictly
// increasing in n; the identity when b = 2. Every output has digits in
// {0, 1} only.
inline Int psi(const Int& n, Base base) {
  DigitString bits = to_digits(n, Base(2));
  return value(DigitString{base, bits.digits});
}

// Replaces every base-b digit of n by min(digit, 1). The result is <= n,
// with equality exactly when all digits of n already lie in {0, 1}.
inline Int zero_one_shadow(const Int& n, Base base) {
  DigitString d = to_digits(n, base);
  for (auto& digit : d.digits) {
    if (digit > 1) digit = 1;
  }
  return value(d);
}

}  // namespace hyperexp
