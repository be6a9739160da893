#pragma once

#include <cstddef>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperexp/digits.hpp"
#include "hyperexp/types.hpp"

namespace hyperexp {

struct IntMatrix {
  std::size_t dim = 0;
  std::vector<Int> a;  // row-major, dim * dim entries

  IntMatrix() = default;
  explicit IntMatrix(std::size_t d) : dim(d), a(d * d) {}

  Int& at(std::size_t i, std::size_t j) { return a[i * dim + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return a[i * dim + j]; }

  friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
    return x.dim == y.dim && x.a == y.a;
  }
};

inline std::vector<Int> row_times(const std::vector<Int>& row,
                                  const IntMatrix& m) {
  if (row.size() != m.dim) {
    throw std::invalid_argument("row_times: dimension mismatch");
  }
  std::vector<Int> out(m.dim);
  for (std::size_t i = 0; i < m.dim; ++i) {
    if (row[i] == 0) continue;
    for (std::size_t j = 0; j < m.dim; ++j) {
      out[j] += row[i] * m.at(i, j);
    }
  }
  return out;
}

// A linear representation over digits 0..base-1: one square matrix per
// digit plus row vector `left` and column vector `right`. The value at a
// digit word e_0 e_1 ... e_d (least significant first) is
//   left * M[e_0] * M[e_1] * ... * M[e_d] * right,
// and the empty word evaluates to left * right. Padding a word with
// most-significant zeros must not change the value; stern_rep satisfies
// this because its digit-0 matrix fixes `right`.
struct LinearRep {
  Base base;
  std::size_t dim = 0;
  std::vector<IntMatrix> matrices;  // indexed by digit, size == base
  std::vector<Int> left;
  std::vector<Int> right;
};

// The 2x2 representation of the base-b Stern sequence. The state row
// carries (s(n), s(n+1)) for the prefix read so far; each digit matrix
// applies one branch of the recurrence. Digits 2..b-1 share one matrix.
inline LinearRep stern_rep(Base base) {
  LinearRep rep{base, 2, {}, {Int(1), Int(0)}, {Int(0), Int(1)}};
  IntMatrix m0(2), m1(2), mi(2);
  m0.at(0, 0) = 1; m0.at(0, 1) = 0;
  m0.at(1, 0) = 1; m0.at(1, 1) = 1;
  m1.at(0, 0) = 1; m1.at(0, 1) = 1;
  m1.at(1, 0) = 0; m1.at(1, 1) = 1;
  mi.at(0, 0) = 0; mi.at(0, 1) = 1;
  mi.at(1, 0) = 0; mi.at(1, 1) = 1;
  rep.matrices.push_back(m0);
  rep.matrices.push_back(m1);
  for (std::int64_t d = 2; d < base.value(); ++d) {
    rep.matrices.push_back(mi);
  }
  return rep;
}

inline Int evaluate(const LinearRep& rep, const DigitString& word) {
  if (word.base != rep.base) {
    throw std::invalid_argument("evaluate: word base differs from rep base");
  }
  std::vector<Int> row = rep.left;
  for (std::int32_t digit : word.digits) {
    if (digit < 0 || static_cast<std::size_t>(digit) >= rep.matrices.size()) {
      throw std::domain_error("evaluate: digit out of range");
    }
    row = row_times(row, rep.matrices[static_cast<std::size_t>(digit)]);
  }
  Int acc = 0;
  for (std::size_t i = 0; i < rep.dim; ++i) {
    acc += row[i] * rep.right[i];
  }
  return acc;
}

inline Int evaluate_at(const LinearRep& rep, const Int& n) {
  return evaluate(rep, to_digits(n, rep.base));
}

// Text format, whitespace separated, '#' starts a comment running to end
// of line:
//
//   base <b>
//   dim <d>
//   matrix 0
//   <d rows of d integers>
//   ...
//   matrix <b-1>
//   <d rows of d integers>
//   left <d integers>
//   right <d integers>
//
// Matrices must appear in digit order. Any structural defect throws
// std::runtime_error with a description.
inline void write_linear_rep(std::ostream& os, const LinearRep& rep) {
  os << "base " << rep.base.value() << "\n";
  os << "dim " << rep.dim << "\n";
  for (std::size_t d = 0; d < rep.matrices.size(); ++d) {
    os << "matrix " << d << "\n";
    for (std::size_t i = 0; i < rep.dim; ++i) {
      for (std::size_t j = 0; j < rep.dim; ++j) {
        os << rep.matrices[d].at(i, j) << (j + 1 < rep.dim ? " " : "\n");
      }
    }
  }
  os << "left";
  for (const Int& x : rep.left) os << " " << x;
  os << "\nright";
  for (const Int& x : rep.right) os << " " << x;
  os << "\n";
}

namespace detail {

class RepTokenizer {
 public:
  explicit RepTokenizer(std::istream& is) : is_(is) {}

  bool next(std::string& tok) {
    while (true) {
      if (!(is_ >> tok)) return false;
      if (tok[0] == '#') {
        is_.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
        continue;
      }
      return true;
    }
  }

  std::string expect_word() {
    std::string tok;
    if (!next(tok)) throw std::runtime_error("linear rep: unexpected end");
    return tok;
  }

  Int expect_int() {
    std::string tok = expect_word();
    try {
      return Int(tok);
    } catch (const std::exception&) {
      throw std::runtime_error("linear rep: expected integer, got '" + tok +
                               "'");
    }
  }

 private:
  std::istream& is_;
};

}  // namespace detail

inline LinearRep read_linear_rep(std::istream& is) {
  detail::RepTokenizer tok(is);
  auto expect_keyword = [&](const std::string& want) {
    std::string got = tok.expect_word();
    if (got != want) {
      throw std::runtime_error("linear rep: expected '" + want + "', got '" +
                               got + "'");
    }
  };

  expect_keyword("base");
  Int base_val = tok.expect_int();
  if (base_val < 2 || base_val > 4096) {
    throw std::runtime_error("linear rep: base out of supported range");
  }
  Base base(base_val.convert_to<std::int64_t>());

  expect_keyword("dim");
  Int dim_val = tok.expect_int();
  if (dim_val < 1 || dim_val > 4096) {
    throw std::runtime_error("linear rep: dim out of supported range");
  }
  const auto dim = dim_val.convert_to<std::size_t>();

  LinearRep rep{base, dim, {}, {}, {}};
  for (std::int64_t d = 0; d < base.value(); ++d) {
    expect_keyword("matrix");
    Int label = tok.expect_int();
    if (label != d) {
      throw std::runtime_error("linear rep: matrices out of order");
    }
    IntMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        m.at(i, j) = tok.expect_int();
      }
    }
    rep.matrices.push_back(std::move(m));
  }
  expect_keyword("left");
  for (std::size_t i = 0; i < dim; ++i) rep.left.push_back(tok.expect_int());
  expect_keyword("right");
  for (std::size_t i = 0; i < dim; ++i) rep.right.push_back(tok.expect_int());
  std::string extra;
  if (tok.next(extra)) {
    throw std::runtime_error("linear rep: trailing content '" + extra + "'");
  }
  return rep;
}

}  // namespace hyperexp
