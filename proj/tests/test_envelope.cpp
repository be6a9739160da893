#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "hyperexp/digits.hpp"
#include "hyperexp/envelope.hpp"
#include "hyperexp/stern.hpp"

using namespace hyperexp;

namespace {

Real rel_diff(const Real& a, const Real& b) {
  return abs(a - b) / abs(b);
}

}  // namespace

TEST_CASE("fibonacci with the left extension") {
  REQUIRE(fibonacci(-1) == 1);
  REQUIRE(fibonacci(0) == 0);
  REQUIRE(fibonacci(1) == 1);
  REQUIRE(fibonacci(2) == 1);
  REQUIRE(fibonacci(3) == 2);
  REQUIRE(fibonacci(10) == 55);
  REQUIRE(fibonacci(20) == 6765);
  REQUIRE_THROWS_AS(fibonacci(-2), std::domain_error);
}

TEST_CASE("knot values and recurrence") {
  REQUIRE(tilde_knot(Base(2), 0) == 0);
  REQUIRE(tilde_knot(Base(2), 1) == Rational(1, 3));
  REQUIRE(tilde_knot(Base(2), 2) == 1);
  REQUIRE(tilde_knot(Base(2), 3) == Rational(7, 3));
  REQUIRE(tilde_knot(Base(2), 4) == 5);
  REQUIRE(tilde_knot(Base(2), 5) == Rational(31, 3));
  REQUIRE(tilde_knot(Base(3), 4) == 10);
  REQUIRE(tilde_knot(Base(10), 4) == 101);
  REQUIRE_THROWS_AS(tilde_knot(Base(2), -1), std::domain_error);

  for (std::int64_t b : {2, 3, 10}) {
    const Base base(b);
    Envelope env(base);
    for (int k = 0; k <= 30; ++k) {
      REQUIRE(env.knot(k) == tilde_knot(base, k));
      REQUIRE(env.knot(k + 2) == b * b * env.knot(k) + 1);
    }
  }
}

TEST_CASE("even knots are integers, odd knots are not") {
  for (std::int64_t b : {2, 3, 10}) {
    for (int k = 0; k <= 20; ++k) {
      const Rational t = tilde_knot(Base(b), k);
      REQUIRE((boost::multiprecision::denominator(t) == 1) == (k % 2 == 0));
    }
  }
}

TEST_CASE("record positions: frozen values") {
  REQUIRE(record_position(Base(2), 2) == 1);
  REQUIRE(record_position(Base(2), 3) == 3);
  REQUIRE(record_position(Base(2), 4) == 5);
  REQUIRE(record_position(Base(2), 5) == 11);
  REQUIRE(record_position(Base(2), 6) == 21);
  REQUIRE(record_position(Base(2), 10) == 341);
  REQUIRE(record_position(Base(2), 20) == 349525);
  REQUIRE(record_position(Base(3), 2) == 1);
  REQUIRE(record_position(Base(3), 3) == 4);
  REQUIRE(record_position(Base(3), 4) == 10);
  REQUIRE(record_position(Base(3), 5) == 31);
  REQUIRE(record_position(Base(10), 3) == 11);
  REQUIRE(record_position(Base(10), 4) == 101);
  REQUIRE(record_position(Base(10), 5) == 1011);
  REQUIRE_THROWS_AS(record_position(Base(2), 1), std::domain_error);
}

TEST_CASE("record positions differ from knots by 0 or b/(b+1)") {
  for (std::int64_t b : {2, 3, 7}) {
    const Base base(b);
    for (int k = 2; k <= 25; ++k) {
      const Rational gap = Rational(record_position(base, k)) -
                           tilde_knot(base, k);
      if (k % 2 == 0) {
        REQUIRE(gap == 0);
      } else {
        REQUIRE(gap == Rational(b, b + 1));
      }
    }
  }
}

TEST_CASE("record positions have the alternating digit pattern") {
  for (std::int64_t b : {2, 3, 10}) {
    const Base base(b);
    for (int k = 2; k <= 13; ++k) {
      // Least significant first: 1 (0 1)^(l-1) for k = 2l, and
      // 1 1 (0 1)^(l-1) for k = 2l + 1.
      std::vector<std::int32_t> expected;
      if (k % 2 == 0) {
        expected.push_back(1);
        for (int j = 0; j < k / 2 - 1; ++j) {
          expected.push_back(0);
          expected.push_back(1);
        }
      } else {
        expected.push_back(1);
        expected.push_back(1);
        for (int j = 0; j < (k - 1) / 2 - 1; ++j) {
          expected.push_back(0);
          expected.push_back(1);
        }
      }
      REQUIRE(to_digits(record_position(base, k), base).digits == expected);
    }
  }
}

TEST_CASE("records attain Fibonacci values") {
  for (std::int64_t b : {2, 3, 5}) {
    const Base base(b);
    SternTable s(base);
    for (int k = 2; k <= 20; ++k) {
      REQUIRE(s(record_position(base, k)) == fibonacci(k));
    }
  }
}

TEST_CASE("envelope passes through the knots") {
  for (std::int64_t b : {2, 3, 10}) {
    Envelope env{Base(b)};
    for (int k = 0; k <= 40; ++k) {
      REQUIRE(env.h(env.knot(k)) == env.fib(k));
    }
  }
}

TEST_CASE("envelope is linear between knots") {
  for (std::int64_t b : {2, 3, 10}) {
    Envelope env{Base(b)};
    for (int k = 0; k <= 25; ++k) {
      const Rational mid = (env.knot(k) + env.knot(k + 1)) / 2;
      const Rational expected =
          Rational(env.fib(k) + env.fib(k + 1)) / 2;
      REQUIRE(env.h(mid) == expected);
    }
  }
}

TEST_CASE("envelope: frozen exact values") {
  // h(b^3 + 1) = 5 - 2/b^2 and h(b^4 + b + 1/(b+1)) = 8 - 3/b^2.
  for (std::int64_t b : {2, 3, 10}) {
    Envelope env{Base(b)};
    const Rational b2(b * b);
    const Int bi(b);
    REQUIRE(env.h(Rational(bi * bi * bi + 1)) == 5 - 2 / b2);
    REQUIRE(env.h(Rational(bi * bi * bi * bi + bi) + Rational(1, b + 1)) ==
            8 - 3 / b2);
  }
}

TEST_CASE("slopes follow the closed form and decrease from k = 2 on") {
  for (std::int64_t b : {2, 3, 10}) {
    Envelope env{Base(b)};
    for (int k = 0; k <= 60; ++k) {
      const Rational expected(
          fibonacci(k - 1) * (Int(b) + 1),
          boost::multiprecision::pow(Int(b), static_cast<unsigned>(k)));
      REQUIRE(env.slope(k) == expected);
    }
    // The first segment climbs, the second is flat, so monotonicity
    // starts at the third segment.
    REQUIRE(env.slope(1) == 0);
    REQUIRE(env.slope(1) < env.slope(2));
    for (int k = 2; k <= 60; ++k) {
      REQUIRE(env.slope(k + 1) <= env.slope(k));
    }
  }
}

TEST_CASE("envelope is concave from 1 onward") {
  std::mt19937_64 gen(31);
  for (std::int64_t b : {2, 3, 10}) {
    Envelope env{Base(b)};
    for (int trial = 0; trial < 200; ++trial) {
      // Two rationals in [1, ~1e6], exact midpoint comparison.
      const auto draw = [&] {
        const std::uint64_t q = gen() | 1;
        const std::uint64_t p = gen() % q;
        return 1 + Rational(Int(p), Int(q)) * 999999;
      };
      const Rational x = draw();
      const Rational y = draw();
      REQUIRE(env.h((x + y) / 2) >= (env.h(x) + env.h(y)) / 2);
    }
  }
}

TEST_CASE("functional equation of the envelope, exact") {
  std::mt19937_64 gen(37);
  for (std::int64_t b : {2, 3, 10}) {
    Envelope env{Base(b)};
    const Rational knot1(1, b + 1);
    const auto check = [&](const Rational& x) {
      REQUIRE(env.h(x) + env.h(b * x + knot1) == env.h(b * b * x + 1));
    };
    for (int k = 0; k <= 25; ++k) check(env.knot(k));
    for (int trial = 0; trial < 300; ++trial) {
      const std::uint64_t q = gen() | 1;
      const std::uint64_t p = gen() % q;
      check(Rational(Int(p), Int(q)) * 1000000);
    }
  }
}

TEST_CASE("envelope dominates the sequence; equality at even knots") {
  for (std::int64_t b : {2, 3}) {
    const Base base(b);
    Envelope env(base);
    const auto table = stern_range(base, 5000);
    for (int m = 0; m <= 5000; ++m) {
      REQUIRE(Rational(table[m]) <= env.h(Rational(m)));
    }
    for (int k = 1; env.knot(2 * k) <= 5000; ++k) {
      const Int t = boost::multiprecision::numerator(env.knot(2 * k));
      REQUIRE(Rational(table[t.convert_to<std::size_t>()]) ==
              env.h(env.knot(2 * k)));
    }
  }
}

TEST_CASE("envelope rejects negative arguments") {
  Envelope env{Base(2)};
  REQUIRE_THROWS_AS(env.h(Rational(-1)), std::domain_error);
  REQUIRE_THROWS_AS(env.knot(-1), std::domain_error);
}

TEST_CASE("continuous bound: scaling law and fixed points") {
  for (std::int64_t b : {2, 3, 10}) {
    const Base base(b);
    const Real phi = (sqrt(Real(5)) + 1) / 2;
    for (const Rational& x :
         {Rational(1), Rational(7, 3), Rational(100)}) {
      const Real lhs = maximal_order(base, Rational(b * b) * x);
      const Real rhs = phi * phi * maximal_order(base, x);
      REQUIRE(rel_diff(lhs, rhs) < Real("1e-45"));
    }
    const Real at_unit_knot =
        maximal_order(base, Rational(1, b * b - 1));
    REQUIRE(rel_diff(at_unit_knot, 1 / sqrt(Real(5))) < Real("1e-45"));
  }
  REQUIRE_THROWS_AS(maximal_order(Base(2), Real(0)), std::domain_error);
  REQUIRE_THROWS_AS(maximal_order(Base(2), Real(-2)), std::domain_error);
}

TEST_CASE("growth constant: frozen values") {
  // Independently computed at 60-digit precision via both closed forms.
  const Real c2("0.9588541908247673832090943042036592957487");
  const Real c3("1.11194820708862758574403142771");
  const Real c10("1.16836378763539244340781974083");
  REQUIRE(rel_diff(maximal_order_constant(Base(2)), c2) < Real("1e-38"));
  REQUIRE(rel_diff(maximal_order_constant(Base(3)), c3) < Real("1e-27"));
  REQUIRE(rel_diff(maximal_order_constant(Base(10)), c10) < Real("1e-27"));
}

TEST_CASE("growth constant equals the bound at 1") {
  for (std::int64_t b : {2, 3, 10}) {
    REQUIRE(maximal_order_constant(Base(b)) ==
            maximal_order(Base(b), Real(1)));
  }
}

TEST_CASE("growth constant digits") {
  REQUIRE(maximal_order_constant_digits(Base(2), 6) == "0.958854");
  REQUIRE(maximal_order_constant_digits(Base(2), 15) == "0.958854190824767");
  REQUIRE(maximal_order_constant_digits(Base(3), 10) == "1.111948207");
  REQUIRE_THROWS_AS(maximal_order_constant_digits(Base(2), 0),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(maximal_order_constant_digits(Base(2), 51),
                    std::invalid_argument);
}
