#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "amp1/connection.hpp"
#include "test_util.hpp"

using amp1::ConnectionTriple;
using amp1::GradedVectorField;
using amp1::Poly;
using amp1::Rational;
using amp1::Section;
using amp1::SuperFunction;

namespace {
ConnectionTriple with_gamma_e(const std::vector<std::string>& vars, int m,
                              size_t i, size_t a, size_t k, const Poly& value) {
  ConnectionTriple t = ConnectionTriple::trivial(vars, m);
  ConnectionTriple::Poly3 ge = t.gamma_e();
  ge[i][a][k] = value;
  return ConnectionTriple(vars, m, t.gamma_m(), ge, t.beta());
}
}  // namespace

TEST_CASE("curvature of a simple non-flat bundle connection") {
  // n=2, m=1, gammaE[1][1][1] = x2: R[1][2][1][1] = -d/dx2 (x2) = -1.
  const std::vector<std::string> vars{"x1", "x2"};
  const ConnectionTriple t =
      with_gamma_e(vars, 1, 0, 0, 0, Poly::variable(vars, 1));
  const auto r = amp1::curvature(t);
  CHECK(r[0][1][0][0] == Poly::constant(vars, Rational(-1)));
  CHECK(r[1][0][0][0] == Poly::constant(vars, Rational(1)));
  CHECK(r[0][0][0][0].is_zero());
}

TEST_CASE("curvature picks up the quadratic term") {
  // gammaE[1][1][1] = x2, gammaE[2][1][1] = x1:
  // R[1][2][1][1] = d1(x1) - d2(x2) + (x1 x2 - x2 x1) = 0.
  const std::vector<std::string> vars{"x1", "x2"};
  ConnectionTriple t = ConnectionTriple::trivial(vars, 1);
  ConnectionTriple::Poly3 ge = t.gamma_e();
  ge[0][0][0] = Poly::variable(vars, 1);
  ge[1][0][0] = Poly::variable(vars, 0);
  const ConnectionTriple u(vars, 1, t.gamma_m(), ge, t.beta());
  CHECK(amp1::curvature(u)[0][1][0][0].is_zero());
}

TEST_CASE("validation flags torsion") {
  const std::vector<std::string> vars{"x1", "x2"};
  ConnectionTriple t = ConnectionTriple::trivial(vars, 1);
  ConnectionTriple::Poly3 gm = t.gamma_m();
  gm[0][1][0] = Poly::constant(vars, Rational(1));  // gammaM[1][2][1] != gammaM[2][1][1]
  const ConnectionTriple u(vars, 1, gm, t.gamma_e(), t.beta());
  const auto violations = amp1::validate(u);
  REQUIRE_FALSE(violations.empty());
  CHECK(violations.front().kind == "torsion");
}

TEST_CASE("validation enforces the beta constraint") {
  const std::vector<std::string> vars{"x1", "x2"};
  // Curved gammaE with beta = 0 violates beta(X,Y)-beta(Y,X) = -R(X,Y).
  const ConnectionTriple bad =
      with_gamma_e(vars, 1, 0, 0, 0, Poly::variable(vars, 1));
  const auto violations = amp1::validate(bad);
  REQUIRE_FALSE(violations.empty());
  CHECK(violations.front().kind == "beta-curvature");

  // Fixing beta[1][2][1][1] = 1/2, beta[2][1][1][1] = -1/2 restores validity.
  ConnectionTriple::Poly4 beta = bad.beta();
  beta[0][1][0][0] = Poly::constant(vars, Rational(1, 2));
  beta[1][0][0][0] = Poly::constant(vars, Rational(-1, 2));
  const ConnectionTriple good(vars, 1, bad.gamma_m(), bad.gamma_e(), beta);
  CHECK(amp1::validate(good).empty());
}

TEST_CASE("trivial triples validate") {
  CHECK(amp1::validate(ConnectionTriple::trivial({"x1", "x2", "x3"}, 2)).empty());
}

TEST_CASE("random constructed triples validate") {
  std::mt19937 g(314159);
  for (int trial = 0; trial < 10; ++trial) {
    const auto vars = testutil::make_vars(2);
    const ConnectionTriple t = testutil::rand_connection(g, vars, 2, 2);
    CHECK(amp1::validate(t).empty());
  }
}

TEST_CASE("covariant derivative of a section") {
  // n=m=1, gammaE = x, s = x: nabla_1 s = 1 + x^2.
  const std::vector<std::string> vars{"x1"};
  const ConnectionTriple t =
      with_gamma_e(vars, 1, 0, 0, 0, Poly::variable(vars, 0));
  const Section s(vars, {Poly::variable(vars, 0)});
  const Section ds = amp1::covariant_derivative_section(t, s, 0);
  const Poly x = Poly::variable(vars, 0);
  CHECK(ds.component(0) == Poly::constant(vars, Rational(1)) + x * x);
}

TEST_CASE("horizontal lift subtracts the connection term") {
  const std::vector<std::string> vars{"x1", "x2"};
  const Poly x2p = Poly::variable(vars, 1);
  const ConnectionTriple t = with_gamma_e(vars, 2, 0, 0, 1, x2p);
  // X^1 = d/dx1 - x2 xi^1 d/dxi^2
  const GradedVectorField lift = amp1::horizontal_lift(t, 0);
  CHECK(lift.x_components()[0] ==
        SuperFunction::constant(vars, 2, Rational(1)));
  CHECK(lift.x_components()[1].is_zero());
  CHECK(lift.xi_component(0).is_zero());
  CHECK(lift.xi_component(1) ==
        -(SuperFunction::from_poly(x2p, 2) * SuperFunction::xi(vars, 2, 1)));
}

TEST_CASE("frame rules of the lifted connection") {
  std::mt19937 g(2718);
  const auto vars = testutil::make_vars(2);
  const int m = 2;
  const ConnectionTriple t = testutil::rand_connection(g, vars, m, 1);
  std::vector<GradedVectorField> hats, iotas;
  for (size_t i = 0; i < 2; ++i) hats.push_back(amp1::horizontal_lift(t, i));
  for (int k = 1; k <= m; ++k)
    iotas.push_back(GradedVectorField::odd_coordinate(vars, m, k));

  SECTION("nabla vanishes on odd lower slot") {
    for (const auto& iota : iotas) {
      for (const auto& h : hats)
        CHECK(amp1::nabla_on_fields(t, iota, h).is_zero());
      for (const auto& i2 : iotas)
        CHECK(amp1::nabla_on_fields(t, iota, i2).is_zero());
    }
  }

  SECTION("nabla of frame sections reproduces the structure functions") {
    for (size_t i = 0; i < 2; ++i)
      for (int a = 0; a < m; ++a) {
        GradedVectorField expect = GradedVectorField::zero(vars, m);
        for (int k = 0; k < m; ++k)
          expect += SuperFunction::from_poly(
                        t.gamma_e(i, static_cast<size_t>(a),
                                  static_cast<size_t>(k)),
                        m) *
                    iotas[static_cast<size_t>(k)];
        CHECK(amp1::nabla_on_fields(t, hats[i], iotas[static_cast<size_t>(a)]) ==
              expect);
      }
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 2; ++j)
        CHECK(amp1::nabla_on_fields(t, hats[i], hats[j]) ==
              amp1::nabla_hat_hat(t, i, j));
  }

  SECTION("function linearity in the lower slot") {
    const SuperFunction f = SuperFunction::from_poly(
        Poly::variable(vars, 0) * Poly::variable(vars, 1), m);
    const GradedVectorField x = hats[0], y = hats[1];
    CHECK(amp1::nabla_on_fields(t, f * x, y) ==
          f * amp1::nabla_on_fields(t, x, y));
  }

  SECTION("Leibniz rule in the upper slot for even lower field") {
    const SuperFunction f =
        SuperFunction::from_poly(Poly::variable(vars, 1).pow(2), m);
    const GradedVectorField x = hats[0], y = hats[1];
    CHECK(amp1::nabla_on_fields(t, x, f * y) ==
          amp1::apply(x, f) * y + f * amp1::nabla_on_fields(t, x, y));
  }
}

TEST_CASE("bracket of Q with a horizontal lift") {
  // [iota_s, X^i] = -iota_{nabla^E_i s}
  std::mt19937 g(1618);
  const auto vars = testutil::make_vars(2);
  const int m = 2;
  const ConnectionTriple t = testutil::rand_connection(g, vars, m, 1);
  const Section s = testutil::rand_section(g, vars, m, 2);
  const GradedVectorField q = amp1::interior_product(s);
  for (size_t i = 0; i < 2; ++i) {
    const GradedVectorField lhs =
        amp1::bracket(q, amp1::horizontal_lift(t, i));
    const GradedVectorField rhs =
        -amp1::interior_product(amp1::covariant_derivative_section(t, s, i));
    CHECK(lhs == rhs);
  }
}
