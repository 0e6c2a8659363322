#pragma once

#include <string>
#include <vector>

#include "amp1/super.hpp"

namespace amp1 {

/// Connection data on the base and on the bundle, plus the beta correction
/// making the lifted covariant derivative respect the homological field:
///   gammaM[i][j][k]:  nabla^M_{d_i} d_j    = sum_k gammaM[i][j][k] d_k
///   gammaE[i][a][k]:  nabla^E_{d_i} eps_a  = sum_k gammaE[i][a][k] eps_k
///   beta[i][j][a][k]: beta(d_i, d_j) eps_a = sum_k beta[i][j][a][k] eps_k
/// All indices 0-based in storage. Valid triples have a torsion-free
/// gammaM and beta(X,Y) - beta(Y,X) = -R(X,Y) for the gammaE curvature.
class ConnectionTriple {
 public:
  using Poly3 = std::vector<std::vector<std::vector<Poly>>>;
  using Poly4 = std::vector<std::vector<std::vector<std::vector<Poly>>>>;

  ConnectionTriple() = default;
  ConnectionTriple(std::vector<std::string> vars, int m, Poly3 gamma_m,
                   Poly3 gamma_e, Poly4 beta)
      : vars_(std::move(vars)),
        m_(m),
        gamma_m_(std::move(gamma_m)),
        gamma_e_(std::move(gamma_e)),
        beta_(std::move(beta)) {
    const size_t n = vars_.size();
    const size_t mm = static_cast<size_t>(m_);
    check_shape3(gamma_m_, n, n, n, "gammaM");
    check_shape3(gamma_e_, n, mm, mm, "gammaE");
    check_shape4(beta_, n, n, mm, mm, "beta");
  }

  static ConnectionTriple trivial(std::vector<std::string> vars, int m) {
    const size_t n = vars.size();
    const size_t mm = static_cast<size_t>(m);
    const Poly z = Poly::zero(vars);
    Poly3 gm(n, std::vector<std::vector<Poly>>(n, std::vector<Poly>(n, z)));
    Poly3 ge(n, std::vector<std::vector<Poly>>(mm, std::vector<Poly>(mm, z)));
    Poly4 b(n, std::vector<std::vector<std::vector<Poly>>>(
                   n, std::vector<std::vector<Poly>>(mm, std::vector<Poly>(mm, z))));
    return ConnectionTriple(std::move(vars), m, std::move(gm), std::move(ge),
                            std::move(b));
  }

  const std::vector<std::string>& vars() const { return vars_; }
  size_t base_dim() const { return vars_.size(); }
  int odd_dim() const { return m_; }
  const Poly& gamma_m(size_t i, size_t j, size_t k) const {
    return gamma_m_[i][j][k];
  }
  const Poly& gamma_e(size_t i, size_t a, size_t k) const {
    return gamma_e_[i][a][k];
  }
  const Poly& beta(size_t i, size_t j, size_t a, size_t k) const {
    return beta_[i][j][a][k];
  }
  const Poly3& gamma_m() const { return gamma_m_; }
  const Poly3& gamma_e() const { return gamma_e_; }
  const Poly4& beta() const { return beta_; }

  bool is_trivial() const {
    auto all_zero3 = [](const Poly3& t) {
      for (const auto& a : t)
        for (const auto& b : a)
          for (const auto& c : b)
            if (!c.is_zero()) return false;
      return true;
    };
    for (const auto& a : beta_)
      for (const auto& b : a)
        for (const auto& c : b)
          for (const auto& d : c)
            if (!d.is_zero()) return false;
    return all_zero3(gamma_m_) && all_zero3(gamma_e_);
  }

  friend bool operator==(const ConnectionTriple& a, const ConnectionTriple& b) {
    return a.vars_ == b.vars_ && a.m_ == b.m_ && a.gamma_m_ == b.gamma_m_ &&
           a.gamma_e_ == b.gamma_e_ && a.beta_ == b.beta_;
  }

 private:
  static void check_shape3(const Poly3& t, size_t d0, size_t d1, size_t d2,
                           const char* name) {
    if (t.size() != d0) throw error(std::string(name) + ": bad outer size");
    for (const auto& a : t) {
      if (a.size() != d1) throw error(std::string(name) + ": bad middle size");
      for (const auto& b : a)
        if (b.size() != d2) throw error(std::string(name) + ": bad inner size");
    }
  }
  static void check_shape4(const Poly4& t, size_t d0, size_t d1, size_t d2,
                           size_t d3, const char* name) {
    if (t.size() != d0) throw error(std::string(name) + ": bad outer size");
    for (const auto& a : t) {
      if (a.size() != d1) throw error(std::string(name) + ": bad size");
      for (const auto& b : a) {
        if (b.size() != d2) throw error(std::string(name) + ": bad size");
        for (const auto& c : b)
          if (c.size() != d3) throw error(std::string(name) + ": bad inner size");
      }
    }
  }

  std::vector<std::string> vars_;
  int m_ = 0;
  Poly3 gamma_m_;
  Poly3 gamma_e_;
  Poly4 beta_;
};

/// Bundle curvature of gammaE:
///   R(d_i, d_j) eps_a = nabla^E_i nabla^E_j eps_a - nabla^E_j nabla^E_i eps_a
/// returned as R[i][j][a][k] with R antisymmetric in (i, j).
inline ConnectionTriple::Poly4 curvature(const ConnectionTriple& t) {
  const size_t n = t.base_dim();
  const size_t m = static_cast<size_t>(t.odd_dim());
  const Poly z = Poly::zero(t.vars());
  ConnectionTriple::Poly4 r(
      n, std::vector<std::vector<std::vector<Poly>>>(
             n, std::vector<std::vector<Poly>>(m, std::vector<Poly>(m, z))));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t a = 0; a < m; ++a)
        for (size_t k = 0; k < m; ++k) {
          Poly acc = t.gamma_e(j, a, k).partial(i) - t.gamma_e(i, a, k).partial(j);
          for (size_t b = 0; b < m; ++b)
            acc += t.gamma_e(j, a, b) * t.gamma_e(i, b, k) -
                   t.gamma_e(i, a, b) * t.gamma_e(j, b, k);
          r[i][j][a][k] = std::move(acc);
        }
  return r;
}

/// One structural defect of a candidate triple. Violations are data, not
/// exceptions: validation reports all of them.
struct ConnectionViolation {
  std::string kind;          // "torsion" or "beta-curvature"
  std::vector<int> indices;  // offending index tuple, 1-based
  std::string detail;
};

/// Checks torsion-freeness of gammaM and the beta/curvature constraint.
inline std::vector<ConnectionViolation> validate(const ConnectionTriple& t) {
  std::vector<ConnectionViolation> out;
  const size_t n = t.base_dim();
  const size_t m = static_cast<size_t>(t.odd_dim());
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      for (size_t k = 0; k < n; ++k)
        if (t.gamma_m(i, j, k) != t.gamma_m(j, i, k))
          out.push_back({"torsion",
                         {static_cast<int>(i + 1), static_cast<int>(j + 1),
                          static_cast<int>(k + 1)},
                         "gammaM[" + std::to_string(i + 1) + "][" +
                             std::to_string(j + 1) + "][" + std::to_string(k + 1) +
                             "] != gammaM[" + std::to_string(j + 1) + "][" +
                             std::to_string(i + 1) + "][" + std::to_string(k + 1) +
                             "]"});
  const ConnectionTriple::Poly4 r = curvature(t);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t a = 0; a < m; ++a)
        for (size_t k = 0; k < m; ++k) {
          const Poly lhs = t.beta(i, j, a, k) - t.beta(j, i, a, k);
          if (lhs != -r[i][j][a][k])
            out.push_back(
                {"beta-curvature",
                 {static_cast<int>(i + 1), static_cast<int>(j + 1),
                  static_cast<int>(a + 1), static_cast<int>(k + 1)},
                 "beta antisymmetrization is " + lhs.str() + ", expected " +
                     (-r[i][j][a][k]).str()});
        }
  return out;
}

/// nabla^E along d/dx^i of a section, componentwise:
///   (nabla^E_i s)^k = d_i s^k + sum_a gammaE[i][a][k] s^a.
inline Section covariant_derivative_section(const ConnectionTriple& t,
                                            const Section& s, size_t i) {
  if (s.vars() != t.vars() || s.fiber_rank() != static_cast<size_t>(t.odd_dim()))
    throw error("covariant derivative: section does not match connection");
  const size_t m = s.fiber_rank();
  std::vector<Poly> comps;
  comps.reserve(m);
  for (size_t k = 0; k < m; ++k) {
    Poly c = s.component(k).partial(i);
    for (size_t a = 0; a < m; ++a) c += t.gamma_e(i, a, k) * s.component(a);
    comps.push_back(std::move(c));
  }
  return Section(s.vars(), std::move(comps));
}

/// Horizontal lift of d/dx^i: the dual connection on the odd coordinates
/// gives Xhat_i = d/dx^i - sum_{a,k} gammaE[i][a][k] xi^a d/dxi^k.
inline GradedVectorField horizontal_lift(const ConnectionTriple& t, size_t i) {
  const int m = t.odd_dim();
  GradedVectorField v = GradedVectorField::coordinate(t.vars(), m, i);
  for (int a = 1; a <= m; ++a)
    for (int k = 1; k <= m; ++k) {
      const Poly& g = t.gamma_e(i, static_cast<size_t>(a - 1),
                                static_cast<size_t>(k - 1));
      if (g.is_zero()) continue;
      v.xi_component(static_cast<size_t>(k - 1)) -=
          g * SuperFunction::xi(t.vars(), m, a);
    }
  return v;
}

/// A field expressed in the lifted frame {Xhat_1..Xhat_n, iota_1..iota_m}
/// with superfunction coefficients (iota_k is d/dxi^k, the contraction
/// with the k-th frame section).
struct LiftedField {
  std::vector<SuperFunction> hat;
  std::vector<SuperFunction> iota;

  static LiftedField from_coordinates(const ConnectionTriple& t,
                                      const GradedVectorField& v) {
    if (v.vars() != t.vars() || v.odd_dim() != t.odd_dim())
      throw error("lift: field does not match connection");
    const size_t n = t.base_dim();
    const int m = t.odd_dim();
    LiftedField out;
    out.hat.assign(v.x_components().begin(), v.x_components().end());
    out.iota.assign(v.xi_components().begin(), v.xi_components().end());
    // d/dx^i = Xhat_i + sum_{a,k} gammaE[i][a][k] xi^a iota_k
    for (size_t i = 0; i < n; ++i) {
      if (v.x_component(i).is_zero()) continue;
      for (int a = 1; a <= m; ++a)
        for (int k = 1; k <= m; ++k) {
          const Poly& g = t.gamma_e(i, static_cast<size_t>(a - 1),
                                    static_cast<size_t>(k - 1));
          if (g.is_zero()) continue;
          out.iota[static_cast<size_t>(k - 1)] +=
              v.x_component(i) * (g * SuperFunction::xi(t.vars(), m, a));
        }
    }
    return out;
  }

  GradedVectorField to_coordinates(const ConnectionTriple& t) const {
    GradedVectorField out = GradedVectorField::zero(t.vars(), t.odd_dim());
    for (size_t i = 0; i < hat.size(); ++i)
      out += hat[i] * horizontal_lift(t, i);
    for (size_t k = 0; k < iota.size(); ++k)
      out += iota[k] * GradedVectorField::odd_coordinate(t.vars(), t.odd_dim(),
                                                         static_cast<int>(k + 1));
    return out;
  }
};

/// nabla_{Xhat_i} Xhat_j = sum_c gammaM[i][j][c] Xhat_c
///                         + sum_{a,k} beta[i][j][a][k] xi^a iota_k.
inline GradedVectorField nabla_hat_hat(const ConnectionTriple& t, size_t i,
                                       size_t j) {
  const int m = t.odd_dim();
  GradedVectorField out = GradedVectorField::zero(t.vars(), m);
  for (size_t c = 0; c < t.base_dim(); ++c) {
    const Poly& g = t.gamma_m(i, j, c);
    if (g.is_zero()) continue;
    out += SuperFunction::from_poly(g, m) * horizontal_lift(t, c);
  }
  for (int a = 1; a <= m; ++a)
    for (int k = 1; k <= m; ++k) {
      const Poly& b = t.beta(i, j, static_cast<size_t>(a - 1),
                             static_cast<size_t>(k - 1));
      if (b.is_zero()) continue;
      out += (b * SuperFunction::xi(t.vars(), m, a)) *
             GradedVectorField::odd_coordinate(t.vars(), m, k);
    }
  return out;
}

/// Covariant derivative of one field along another. Both fields are first
/// expressed in the lifted frame; the expansion is function-linear in the
/// lower slot and graded-Leibniz in the upper one. The only nonzero values
/// on frame pairs are nabla_{Xhat_i} Xhat_j above and
/// nabla_{Xhat_i} iota_a = sum_k gammaE[i][a][k] iota_k; nabla along iota
/// directions kills every frame field.
inline GradedVectorField nabla_on_fields(const ConnectionTriple& t,
                                         const GradedVectorField& x,
                                         const GradedVectorField& y) {
  const size_t n = t.base_dim();
  const int m = t.odd_dim();
  const LiftedField lx = LiftedField::from_coordinates(t, x);
  const LiftedField ly = LiftedField::from_coordinates(t, y);
  GradedVectorField out = GradedVectorField::zero(t.vars(), m);

  std::vector<GradedVectorField> hats;
  hats.reserve(n);
  for (size_t i = 0; i < n; ++i) hats.push_back(horizontal_lift(t, i));
  std::vector<GradedVectorField> iotas;
  iotas.reserve(static_cast<size_t>(m));
  for (int k = 1; k <= m; ++k)
    iotas.push_back(GradedVectorField::odd_coordinate(t.vars(), m, k));

  // nabla_{Xhat_i} Y, scaled by the Xhat_i coefficient of X. Xhat_i is
  // even, so the graded Leibniz sign is +1 on every term.
  for (size_t i = 0; i < n; ++i) {
    if (lx.hat[i].is_zero()) continue;
    GradedVectorField along = GradedVectorField::zero(t.vars(), m);
    for (size_t j = 0; j < n; ++j) {
      if (!ly.hat[j].is_zero()) {
        along += apply(hats[i], ly.hat[j]) * hats[j];
        along += ly.hat[j] * nabla_hat_hat(t, i, j);
      }
    }
    for (size_t b = 0; b < static_cast<size_t>(m); ++b) {
      if (ly.iota[b].is_zero()) continue;
      along += apply(hats[i], ly.iota[b]) * iotas[b];
      for (size_t k = 0; k < static_cast<size_t>(m); ++k) {
        const Poly& g = t.gamma_e(i, b, k);
        if (!g.is_zero())
          along += ly.iota[b] * (SuperFunction::from_poly(g, m) * iotas[k]);
      }
    }
    out += lx.hat[i] * along;
  }

  // nabla_{iota_a} Y: frame fields are parallel along odd directions, so
  // only the derivative of the coefficients survives.
  for (size_t a = 0; a < static_cast<size_t>(m); ++a) {
    if (lx.iota[a].is_zero()) continue;
    GradedVectorField along = GradedVectorField::zero(t.vars(), m);
    for (size_t j = 0; j < n; ++j)
      if (!ly.hat[j].is_zero()) along += apply(iotas[a], ly.hat[j]) * hats[j];
    for (size_t b = 0; b < static_cast<size_t>(m); ++b)
      if (!ly.iota[b].is_zero()) along += apply(iotas[a], ly.iota[b]) * iotas[b];
    out += lx.iota[a] * along;
  }
  return out;
}

}  // namespace amp1
