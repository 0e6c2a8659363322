#include <catch2/catch_amalgamated.hpp>

#include "amp1/poly.hpp"

using amp1::Monomial;
using amp1::Poly;
using amp1::Rational;

namespace {
const std::vector<std::string> kXY{"x1", "x2"};

Poly x1() { return Poly::variable(kXY, 0); }
Poly x2() { return Poly::variable(kXY, 1); }
}  // namespace

TEST_CASE("printing follows graded-lex order") {
  const Poly p = (x1() + x2()).pow(2);
  CHECK(p.str() == "x1^2 + 2*x1*x2 + x2^2");
  const Poly q = x2() - x1() * x1() + Poly::constant(kXY, Rational(1, 2));
  CHECK(q.str() == "-x1^2 + x2 + 1/2");
  CHECK(Poly::zero(kXY).str() == "0");
  CHECK(Poly::constant(kXY, Rational(-3)).str() == "-3");
  CHECK((x1() * Rational(-1)).str() == "-x1");
}

TEST_CASE("degree bookkeeping") {
  CHECK_FALSE(Poly::zero(kXY).degree().has_value());
  CHECK(Poly::constant(kXY, Rational(4)).degree() == 0);
  CHECK((x1() * x2() * x2() + x1()).degree() == 3);
}

TEST_CASE("arithmetic is exact and cancels") {
  const Poly p = (x1() + x2()).pow(3);
  const Poly q = x1().pow(3) + Rational(3) * x1() * x1() * x2() +
                 Rational(3) * x1() * x2() * x2() + x2().pow(3);
  CHECK(p == q);
  CHECK((p - q).is_zero());
  CHECK((p * Poly::zero(kXY)).is_zero());
}

TEST_CASE("mixing variable contexts throws") {
  const Poly other = Poly::variable({"y"}, 0);
  CHECK_THROWS_AS(x1() + other, amp1::error);
}

TEST_CASE("partial derivatives") {
  const Poly p = x1().pow(2) * x2() + Rational(5) * x2();
  CHECK(p.partial(0) == Rational(2) * x1() * x2());
  CHECK(p.partial(1) == x1().pow(2) + Poly::constant(kXY, Rational(5)));
  CHECK(Poly::constant(kXY, Rational(9)).partial(0).is_zero());
}

TEST_CASE("evaluation") {
  const Poly p = x1().pow(2) - x2();
  CHECK(p.evaluate({Rational(3), Rational(4)}) == Rational(5));
  CHECK(p.evaluate({Rational(1, 2), Rational(1, 4)}) == Rational(0));
  CHECK_THROWS_AS(p.evaluate({Rational(1)}), amp1::error);
}

TEST_CASE("composition substitutes polynomials for variables") {
  const Poly p = x1() * x2() + x2();
  // x1 -> x1 + x2, x2 -> x1^2
  const Poly c = p.compose({x1() + x2(), x1().pow(2)});
  CHECK(c == (x1() + x2()) * x1().pow(2) + x1().pow(2));
}

TEST_CASE("shift recenters at a point") {
  const Poly p = x1().pow(2);
  const Poly s = p.shifted({Rational(1), Rational(0)});
  // p(x + (1,0)) = x1^2 + 2 x1 + 1
  CHECK(s == x1().pow(2) + Rational(2) * x1() + Poly::constant(kXY, Rational(1)));
  CHECK(s.evaluate({Rational(0), Rational(0)}) ==
        p.evaluate({Rational(1), Rational(0)}));
}

TEST_CASE("truncation keeps low-order terms") {
  const Poly p = x1().pow(3) + x1() * x2() + Poly::constant(kXY, Rational(2));
  CHECK(p.truncated(2) == x1() * x2() + Poly::constant(kXY, Rational(2)));
  CHECK(p.truncated(0) == Poly::constant(kXY, Rational(2)));
  CHECK(p.truncated(5) == p);
}

TEST_CASE("coefficient lookup") {
  const Poly p = Rational(7) * x1() * x2();
  CHECK(p.coeff(Monomial{1, 1}) == Rational(7));
  CHECK(p.coeff(Monomial{2, 0}) == Rational(0));
  CHECK(p.constant_term() == Rational(0));
}

TEST_CASE("monomial enumeration counts binomials") {
  // #monomials of degree <= d in n vars = C(n+d, n)
  CHECK(amp1::monomials_up_to(2, 3).size() == 10);
  CHECK(amp1::monomials_up_to(3, 2).size() == 10);
  CHECK(amp1::monomials_up_to(1, 4).size() == 5);
  CHECK(amp1::monomials_up_to(0, 4).size() == 1);
  // ordered by total degree, then lexicographically within a degree
  const auto monos = amp1::monomials_up_to(2, 1);
  REQUIRE(monos.size() == 3);
  CHECK(monos[0] == Monomial{0, 0});
}

TEST_CASE("pow matches repeated multiplication") {
  const Poly base = x1() + Rational(2) * x2();
  Poly acc = Poly::constant(kXY, Rational(1));
  for (int k = 0; k <= 5; ++k) {
    CHECK(base.pow(k) == acc);
    acc = acc * base;
  }
}
