#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "amp1/poly.hpp"
#include "amp1/poly_parser.hpp"

using amp1::parse_poly;
using amp1::Poly;
using amp1::Rational;

namespace {
const std::vector<std::string> kXY{"x1", "x2"};

Poly x1() { return Poly::variable(kXY, 0); }
Poly x2() { return Poly::variable(kXY, 1); }

std::string message_of(const std::string& text) {
  try {
    parse_poly(text, kXY);
  } catch (const amp1::parse_error& e) {
    return e.what();
  }
  return "";
}
}  // namespace

TEST_CASE("basic expressions") {
  CHECK(parse_poly("x1", kXY) == x1());
  CHECK(parse_poly("x1 + x2", kXY) == x1() + x2());
  CHECK(parse_poly("x1 - x2 - x2", kXY) == x1() - Rational(2) * x2());
  CHECK(parse_poly("3*x1*x2", kXY) == Rational(3) * x1() * x2());
  CHECK(parse_poly("x1^3", kXY) == x1().pow(3));
  CHECK(parse_poly("0", kXY).is_zero());
  CHECK(parse_poly("(x1 + x2)^2", kXY) == (x1() + x2()).pow(2));
  CHECK(parse_poly("-x1^2", kXY) == Rational(-1) * x1().pow(2));
  CHECK(parse_poly("-(x1 - x2)", kXY) == x2() - x1());
}

TEST_CASE("fraction literals") {
  CHECK(parse_poly("1/2", kXY) == Poly::constant(kXY, Rational(1, 2)));
  CHECK(parse_poly("1/2*x1", kXY) == Rational(1, 2) * x1());
  CHECK(parse_poly("-3/4*x2^2", kXY) == Rational(-3, 4) * x2().pow(2));
}

TEST_CASE("division is only a literal") {
  CHECK(message_of("x1/2").find("fraction literal") != std::string::npos);
  CHECK(message_of("1/x1") != "");
  CHECK(message_of("(1+1)/2") != "");
}

TEST_CASE("juxtaposition is rejected") {
  const std::string msg = message_of("2x1");
  CHECK(msg.find("juxtaposition") != std::string::npos);
  CHECK(message_of("x1 x2") != "");
  CHECK(message_of("2(x1)") != "");
  CHECK(message_of("(x1)(x2)") != "");
}

TEST_CASE("unknown variables are named") {
  const std::string msg = message_of("x1 + y");
  CHECK(msg.find("'y'") != std::string::npos);
}

TEST_CASE("errors carry positions") {
  // The bad token sits at 1-based column 6 of line 1.
  const std::string msg = message_of("x1 + + x2");
  CHECK(msg.find("line 1") != std::string::npos);
  CHECK(msg.find("column 6") != std::string::npos);
}

TEST_CASE("exponent must be a non-negative integer literal") {
  CHECK(message_of("x1^x2") != "");
  CHECK(message_of("x1^(2)") != "");
  CHECK(message_of("x1^-1") != "");
  CHECK(parse_poly("x1^0", kXY) == Poly::constant(kXY, Rational(1)));
}

TEST_CASE("malformed expressions are rejected") {
  CHECK(message_of("") != "");
  CHECK(message_of("x1 +") != "");
  CHECK(message_of("(x1") != "");
  CHECK(message_of("x1)") != "");
  CHECK(message_of("*x1") != "");
  CHECK(message_of("1..2") != "");
}

TEST_CASE("printed polynomials re-parse to the same polynomial") {
  const std::vector<Poly> cases = {
      Poly::zero(kXY),
      Poly::constant(kXY, Rational(-7, 3)),
      x1() - x2(),
      (x1() + Rational(2) * x2()).pow(3) - x1().pow(2),
      Rational(1, 2) * x1() * x2() - Rational(5) * x2().pow(4),
  };
  for (const Poly& p : cases) {
    CAPTURE(p.str());
    CHECK(parse_poly(p.str(), kXY) == p);
  }
}
