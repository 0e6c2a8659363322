#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "amp1/connection.hpp"
#include "amp1/linalg.hpp"
#include "amp1/tensor.hpp"

namespace amp1 {

/// One decision problem: polynomial section data on a trivialized patch,
/// an optional connection triple, declared zero-locus sample points, and
/// the two search bounds (defaulted when a file does not pin them).
struct Amp1Problem {
  std::vector<std::string> vars;
  int m = 0;
  Section section;
  ConnectionTriple connection;
  bool explicit_connection = false;
  std::vector<std::vector<Rational>> zero_points;
  int degree_bound = 0;
  int jet_order = 0;

  int n() const { return static_cast<int>(vars.size()); }
};

inline int default_degree_bound(const Section& s) {
  return 2 * std::max(0, s.degree().value_or(0)) + 2;
}
inline constexpr int kDefaultJetOrder = 4;

/// Builds and validates a problem. Zero points must annihilate the section
/// exactly; bounds get their defaults when not supplied.
inline Amp1Problem make_problem(
    std::vector<std::string> vars, std::vector<Poly> section_components,
    std::vector<std::vector<Rational>> zero_points,
    std::optional<ConnectionTriple> connection = std::nullopt,
    std::optional<int> degree_bound = std::nullopt,
    std::optional<int> jet_order = std::nullopt) {
  if (vars.empty()) throw error("problem needs at least one base variable");
  Amp1Problem p;
  p.vars = vars;
  p.m = static_cast<int>(section_components.size());
  p.section = Section(vars, std::move(section_components));
  if (connection) {
    if (connection->vars() != vars || connection->odd_dim() != p.m)
      throw error("connection dimensions do not match the problem");
    p.connection = std::move(*connection);
    p.explicit_connection = true;
  } else {
    p.connection = ConnectionTriple::trivial(vars, p.m);
  }
  for (size_t t = 0; t < zero_points.size(); ++t) {
    const auto& pt = zero_points[t];
    if (pt.size() != vars.size())
      throw error("zero point #" + std::to_string(t + 1) + " has arity " +
                  std::to_string(pt.size()) + ", expected " +
                  std::to_string(vars.size()));
    if (!p.section.vanishes_at(pt))
      throw error("zero point #" + std::to_string(t + 1) +
                  " does not annihilate the section");
  }
  p.zero_points = std::move(zero_points);
  p.degree_bound = degree_bound.value_or(default_degree_bound(p.section));
  p.jet_order = jet_order.value_or(kDefaultJetOrder);
  if (p.degree_bound < 0 || p.jet_order < 0) throw error("bounds must be >= 0");
  return p;
}

// ---------------------------------------------------------------------------
// Coboundary matrices
// ---------------------------------------------------------------------------

/// One coboundary block with polynomial entries over the shared row basis
/// (dx^i . dx^j (x) eps_k, ordered by (k,i,j)). Column labels are printed
/// index tuples; columns appear in lexicographic order of those tuples.
struct OperatorMatrix {
  std::string name;
  std::vector<RowLabel> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<Poly>> entries;  // [row][col]

  size_t nrows() const { return row_labels.size(); }
  size_t ncols() const { return col_labels.size(); }
};

namespace detail {

inline OperatorMatrix empty_matrix(const Amp1Problem& p, std::string name,
                                   size_t ncols) {
  OperatorMatrix m;
  m.name = std::move(name);
  m.row_labels = RowBasis(p.n(), p.m).labels();
  m.col_labels.reserve(ncols);
  m.entries.assign(m.row_labels.size(),
                   std::vector<Poly>(ncols, Poly::zero(p.vars)));
  return m;
}

}  // namespace detail

/// d1 multiplies the xi coefficient by the section:
/// xi^l dx^i . dx^j (x) eps_k  |->  s^l dx^i . dx^j (x) eps_k.
inline OperatorMatrix build_d1(const Amp1Problem& p) {
  const int n = p.n(), m = p.m;
  const RowBasis rb(n, m);
  OperatorMatrix out =
      detail::empty_matrix(p, "d1", static_cast<size_t>(m) * rb.size());
  size_t col = 0;
  for (int l = 1; l <= m; ++l)
    for (int k = 1; k <= m; ++k)
      for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
          out.col_labels.push_back("(l=" + std::to_string(l) +
                                   ",k=" + std::to_string(k) +
                                   ",i=" + std::to_string(i) +
                                   ",j=" + std::to_string(j) + ")");
          out.entries[rb.index(k, i, j)][col] =
              p.section.component(static_cast<size_t>(l - 1));
          ++col;
        }
  return out;
}

/// d2 pairs the derivative of the section with the mixed block:
/// dxi^a (x) dx^b (x) eps_c  |->  sum_p d_p s^a dx^p . dx^b (x) eps_c,
/// the diagonal term entering once (literal matrix convention).
inline OperatorMatrix build_d2(const Amp1Problem& p) {
  const int n = p.n(), m = p.m;
  const RowBasis rb(n, m);
  OperatorMatrix out = detail::empty_matrix(
      p, "d2", static_cast<size_t>(m) * static_cast<size_t>(m) * n);
  size_t col = 0;
  for (int a = 1; a <= m; ++a)
    for (int c = 1; c <= m; ++c)
      for (int b = 1; b <= n; ++b) {
        out.col_labels.push_back("(a=" + std::to_string(a) +
                                 ",c=" + std::to_string(c) +
                                 ",b=" + std::to_string(b) + ")");
        for (int q = 1; q <= n; ++q) {
          const Poly d = p.section.component(static_cast<size_t>(a - 1))
                             .partial(static_cast<size_t>(q - 1));
          out.entries[rb.index(c, std::min(q, b), std::max(q, b))][col] += d;
        }
        ++col;
      }
  return out;
}

/// d3 post-composes the base block with the derivative of the section:
/// dx^a . dx^b (x) d_c  |->  sum_p d_c s^p dx^a . dx^b (x) eps_p.
inline OperatorMatrix build_d3(const Amp1Problem& p) {
  const int n = p.n(), m = p.m;
  const RowBasis rb(n, m);
  OperatorMatrix out = detail::empty_matrix(
      p, "d3",
      static_cast<size_t>(n) * (n + 1) / 2 * static_cast<size_t>(n));
  size_t col = 0;
  for (int a = 1; a <= n; ++a)
    for (int b = a; b <= n; ++b)
      for (int c = 1; c <= n; ++c) {
        out.col_labels.push_back("(a=" + std::to_string(a) +
                                 ",b=" + std::to_string(b) +
                                 ",c=" + std::to_string(c) + ")");
        for (int q = 1; q <= m; ++q)
          out.entries[rb.index(q, a, b)][col] +=
              p.section.component(static_cast<size_t>(q - 1))
                  .partial(static_cast<size_t>(c - 1));
        ++col;
      }
  return out;
}

struct Operators {
  OperatorMatrix d1, d2, d3;
};

inline Operators build_operators(const Amp1Problem& p) {
  return Operators{build_d1(p), build_d2(p), build_d3(p)};
}

/// Matrix route for the coboundary of a degree-0 tensor: multiply each
/// block's coefficient vector through its matrix and add up.
inline Cocycle apply_operators(const Operators& ops, const TensorDeg0& t) {
  Cocycle out(t.vars, t.m);
  auto accumulate = [&](const OperatorMatrix& mat, const std::vector<Poly>& coef) {
    if (coef.size() != mat.ncols())
      throw error("coefficient block does not match matrix " + mat.name);
    for (size_t r = 0; r < mat.nrows(); ++r) {
      const RowLabel& lab = mat.row_labels[r];
      for (size_t c = 0; c < coef.size(); ++c) {
        if (coef[c].is_zero() || mat.entries[r][c].is_zero()) continue;
        out.add_entry(lab.i, lab.j, lab.k, mat.entries[r][c] * coef[c]);
      }
    }
  };
  accumulate(ops.d1, t.xi_block);
  accumulate(ops.d2, t.mixed_block);
  accumulate(ops.d3, t.base_block);
  return out;
}

// ---------------------------------------------------------------------------
// Cocycle, two routes
// ---------------------------------------------------------------------------

/// Closed form: at(X,Y) = nablaE_X nablaE_Y s - nablaE_{nablaM_X Y} s
/// + beta(X,Y) s on coordinate fields, symmetrized over (i,j) by
/// averaging (the two expressions agree for valid triples).
inline Cocycle cocycle_closed_form(const Amp1Problem& p) {
  const int n = p.n(), m = p.m;
  Cocycle out(p.vars, m);
  std::vector<Section> first_derivs;
  first_derivs.reserve(static_cast<size_t>(n));
  for (int c = 0; c < n; ++c)
    first_derivs.push_back(covariant_derivative_section(
        p.connection, p.section, static_cast<size_t>(c)));
  auto one_sided = [&](int i, int j) {
    // components of nablaE_i nablaE_j s - sum_c gammaM[i][j][c] nablaE_c s
    //            + beta(i,j) s
    Section dd = covariant_derivative_section(
        p.connection, first_derivs[static_cast<size_t>(j)],
        static_cast<size_t>(i));
    std::vector<Poly> comps(dd.components());
    for (int c = 0; c < n; ++c) {
      const Poly& g = p.connection.gamma_m(static_cast<size_t>(i),
                                           static_cast<size_t>(j),
                                           static_cast<size_t>(c));
      if (g.is_zero()) continue;
      for (int k = 0; k < m; ++k)
        comps[static_cast<size_t>(k)] -=
            g * first_derivs[static_cast<size_t>(c)].component(
                    static_cast<size_t>(k));
    }
    for (int k = 0; k < m; ++k)
      for (int a = 0; a < m; ++a) {
        const Poly& b =
            p.connection.beta(static_cast<size_t>(i), static_cast<size_t>(j),
                              static_cast<size_t>(a), static_cast<size_t>(k));
        if (!b.is_zero())
          comps[static_cast<size_t>(k)] +=
              b * p.section.component(static_cast<size_t>(a));
      }
    return comps;
  };
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      const std::vector<Poly> tij = one_sided(i - 1, j - 1);
      const std::vector<Poly> tji = one_sided(j - 1, i - 1);
      for (int k = 1; k <= m; ++k)
        out.set_entry(i, j, k,
                      Rational(1, 2) * (tij[static_cast<size_t>(k - 1)] +
                                        tji[static_cast<size_t>(k - 1)]));
    }
  return out;
}

/// Definitional route: evaluate
///   At(X,Y) = [Q, nabla_X Y] - nabla_{[Q,X]} Y - (-1)^{|X|} nabla_X [Q,Y]
/// on lifted frame pairs with the derivation algebra, checking on the way
/// that the odd-odd and odd-even slots vanish and that the even-even
/// values are concentrated in degree +1.
inline Cocycle cocycle_definitional(const Amp1Problem& p) {
  const int n = p.n(), m = p.m;
  const GradedVectorField q = interior_product(p.section);
  std::vector<GradedVectorField> hats;
  hats.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    hats.push_back(horizontal_lift(p.connection, static_cast<size_t>(i)));
  std::vector<GradedVectorField> iotas;
  iotas.reserve(static_cast<size_t>(m));
  for (int k = 1; k <= m; ++k)
    iotas.push_back(GradedVectorField::odd_coordinate(p.vars, m, k));

  auto at = [&](const GradedVectorField& x, int deg_x,
                const GradedVectorField& y) {
    GradedVectorField r = bracket(q, nabla_on_fields(p.connection, x, y));
    r -= nabla_on_fields(p.connection, bracket(q, x), y);
    GradedVectorField last = nabla_on_fields(p.connection, x, bracket(q, y));
    if (deg_x % 2 == 0)
      r -= last;
    else
      r += last;
    return r;
  };

  // Odd arguments contribute nothing: a degree check at amplitude +1.
  for (int a = 0; a < m; ++a) {
    for (int b = a; b < m; ++b)
      if (!at(iotas[static_cast<size_t>(a)], 1, iotas[static_cast<size_t>(b)])
               .is_zero())
        throw internal_error("cocycle does not vanish on odd-odd arguments");
    for (int j = 0; j < n; ++j)
      if (!at(iotas[static_cast<size_t>(a)], 1, hats[static_cast<size_t>(j)])
               .is_zero())
        throw internal_error("cocycle does not vanish on odd-even arguments");
  }

  Cocycle out(p.vars, m);
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      const GradedVectorField rij =
          at(hats[static_cast<size_t>(i - 1)], 0, hats[static_cast<size_t>(j - 1)]);
      if (i != j &&
          rij != at(hats[static_cast<size_t>(j - 1)], 0,
                    hats[static_cast<size_t>(i - 1)]))
        throw internal_error("cocycle is not symmetric");
      for (const auto& f : rij.x_components())
        if (!f.is_zero())
          throw internal_error("cocycle has a base-direction component");
      for (int k = 1; k <= m; ++k) {
        const SuperFunction& c = rij.xi_component(static_cast<size_t>(k - 1));
        if (!c.is_homogeneous(0))
          throw internal_error("cocycle is not concentrated in degree +1");
        out.set_entry(i, j, k, c.body());
      }
    }
  return out;
}

enum class Route { Closed, Definitional };

inline Cocycle cocycle(const Amp1Problem& p, Route route = Route::Closed) {
  return route == Route::Closed ? cocycle_closed_form(p)
                                : cocycle_definitional(p);
}

/// Converts a cocycle from evaluation form to coefficient form.
///
/// Both routes report the entry at row (k,i,j) as the evaluation of the
/// cocycle on the pair of coordinate fields (i,j). The coboundary matrices,
/// however, act on coefficients with respect to the symmetric-pair basis,
/// whose diagonal element pairs with (i,i) twice. Evaluations therefore
/// carry a factor 2 on diagonal rows relative to coefficients, and every
/// exactness or jet-membership question against the matrices must use the
/// coefficient form produced here.
inline Cocycle to_coefficient_vector(const Cocycle& c) {
  Cocycle out(c.vars(), c.basis().m());
  const auto& labels = c.basis().labels();
  for (size_t r = 0; r < labels.size(); ++r) {
    Poly e = c.entries()[r];
    if (labels[r].i == labels[r].j) e = e * Rational(1, 2);
    out.set_entry(labels[r].i, labels[r].j, labels[r].k, std::move(e));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Decision procedure
// ---------------------------------------------------------------------------

/// Exact membership witness: one coefficient polynomial per column of
/// d1, d2, d3 with cocycle = d1 f1 + d2 f2 + d3 f3, all degrees <= degree.
struct Certificate {
  int degree = 0;
  std::vector<Poly> d1, d2, d3;
};

/// Recombines a certificate through the matrices.
inline Cocycle replay_certificate(const Operators& ops, const Certificate& cert,
                                  const std::vector<std::string>& vars, int m) {
  TensorDeg0 t = TensorDeg0::zero(vars, m);
  t.xi_block = cert.d1;
  t.mixed_block = cert.d2;
  t.base_block = cert.d3;
  return apply_operators(ops, t);
}

namespace detail {

inline std::vector<const OperatorMatrix*> matrix_list(const Operators& ops) {
  return {&ops.d1, &ops.d2, &ops.d3};
}

/// Membership at one exact degree: unknowns are the coefficients of each
/// column's polynomial, equations match every monomial of every row.
inline std::optional<Certificate> certificate_at_degree(const Operators& ops,
                                                        const Cocycle& cocycle,
                                                        int degree) {
  const auto mats = matrix_list(ops);
  const std::vector<std::string>& vars = cocycle.vars();
  const int n = static_cast<int>(vars.size());
  const std::vector<Monomial> monos = monomials_up_to(n, degree);
  const size_t t = monos.size();
  size_t total_cols = 0;
  for (const auto* mat : mats) total_cols += mat->ncols();
  const size_t unknowns = total_cols * t;

  RatMatrix a;
  std::vector<Rational> rhs;
  const size_t nrows = cocycle.entries().size();
  for (size_t r = 0; r < nrows; ++r) {
    // union of monomials that can appear in this row's identity
    std::map<Monomial, size_t, GrlexDescending> gammas;
    auto note = [&](const Monomial& g) {
      gammas.emplace(g, 0);
    };
    for (const auto& [mono, c] : cocycle.entries()[r].terms()) note(mono);
    for (const auto* mat : mats)
      for (size_t col = 0; col < mat->ncols(); ++col)
        for (const auto& [mono, c] : mat->entries[r][col].terms())
          for (const auto& alpha : monos) {
            Monomial g(mono.size());
            for (size_t v = 0; v < g.size(); ++v) g[v] = mono[v] + alpha[v];
            note(g);
          }
    for (auto& [g, row_id] : gammas) {
      row_id = a.size();
      a.emplace_back(unknowns, Rational(0));
      rhs.push_back(cocycle.entries()[r].coeff(g));
    }
    size_t col_base = 0;
    for (const auto* mat : mats) {
      for (size_t col = 0; col < mat->ncols(); ++col) {
        const Poly& entry = mat->entries[r][col];
        if (!entry.is_zero()) {
          for (const auto& [mono, c] : entry.terms())
            for (size_t ai = 0; ai < t; ++ai) {
              Monomial g(mono.size());
              for (size_t v = 0; v < g.size(); ++v) g[v] = mono[v] + monos[ai][v];
              a[gammas.at(g)][(col_base + col) * t + ai] += c;
            }
        }
      }
      col_base += mat->ncols();
    }
  }

  const auto sol = solve(a, rhs, unknowns);
  if (!sol) return std::nullopt;
  Certificate cert;
  cert.degree = degree;
  size_t col_base = 0;
  auto extract = [&](const OperatorMatrix& mat) {
    std::vector<Poly> block;
    block.reserve(mat.ncols());
    for (size_t col = 0; col < mat.ncols(); ++col) {
      Poly f = Poly::zero(vars);
      for (size_t ai = 0; ai < t; ++ai) {
        const Rational& c = (*sol)[(col_base + col) * t + ai];
        if (!c.is_zero()) f += Poly::monomial(vars, monos[ai], c);
      }
      block.push_back(std::move(f));
    }
    col_base += mat.ncols();
    return block;
  };
  cert.d1 = extract(ops.d1);
  cert.d2 = extract(ops.d2);
  cert.d3 = extract(ops.d3);
  return cert;
}

}  // namespace detail

/// Scans degrees 0..degree_bound ascending and returns the first exact
/// membership certificate, if any. The returned certificate has already
/// been replayed against the matrices.
inline std::optional<Certificate> certificate_search(const Operators& ops,
                                                     const Cocycle& cocycle,
                                                     int degree_bound) {
  for (int d = 0; d <= degree_bound; ++d) {
    auto cert = detail::certificate_at_degree(ops, cocycle, d);
    if (cert) {
      if (replay_certificate(ops, *cert, cocycle.vars(),
                             cocycle.basis().m()) != cocycle)
        throw internal_error("certificate replay mismatch");
      return cert;
    }
  }
  return std::nullopt;
}

/// Order-N jet feasibility at a point: can ANY coefficient functions
/// combine the columns into the cocycle up to O(|x-p|^{N+1})? Infeasible
/// is a sound proof that the cocycle is not in the module generated by
/// the columns over smooth functions. The point need not lie on the zero
/// locus for the test to be meaningful.
inline bool jet_obstruction_feasible(const Operators& ops, const Cocycle& cocycle,
                                     const std::vector<Rational>& point,
                                     int order) {
  const auto mats = detail::matrix_list(ops);
  const std::vector<std::string>& vars = cocycle.vars();
  const int n = static_cast<int>(vars.size());
  if (point.size() != static_cast<size_t>(n))
    throw error("jet point arity mismatch");

  // The all-zero jet is a solution whenever the cocycle's own jet vanishes,
  // so the linear system only needs to be assembled for a nonzero target.
  bool target_zero = true;
  for (const Poly& entry : cocycle.entries())
    if (!entry.shifted(point).truncated(order).is_zero()) {
      target_zero = false;
      break;
    }
  if (target_zero) return true;

  const std::vector<Monomial> monos = monomials_up_to(n, order);
  const size_t t = monos.size();
  std::map<Monomial, size_t> mono_index;
  for (size_t i = 0; i < t; ++i) mono_index[monos[i]] = i;

  size_t total_cols = 0;
  for (const auto* mat : mats) total_cols += mat->ncols();
  const size_t unknowns = total_cols * t;

  RatMatrix a;
  std::vector<Rational> rhs;
  const size_t nrows = cocycle.entries().size();
  for (size_t r = 0; r < nrows; ++r) {
    const size_t eq_base = a.size();
    for (size_t g = 0; g < t; ++g) {
      a.emplace_back(unknowns, Rational(0));
      rhs.push_back(Rational(0));
    }
    const Poly crow = cocycle.entries()[r].shifted(point).truncated(order);
    for (const auto& [mono, c] : crow.terms()) rhs[eq_base + mono_index.at(mono)] = c;
    size_t col_base = 0;
    for (const auto* mat : mats) {
      for (size_t col = 0; col < mat->ncols(); ++col) {
        const Poly entry = mat->entries[r][col].shifted(point).truncated(order);
        for (const auto& [mono, c] : entry.terms())
          for (size_t ai = 0; ai < t; ++ai) {
            Monomial g(mono.size());
            int deg = 0;
            for (size_t v = 0; v < g.size(); ++v) {
              g[v] = mono[v] + monos[ai][v];
              deg += g[v];
            }
            if (deg > order) continue;
            a[eq_base + mono_index.at(g)][(col_base + col) * t + ai] += c;
          }
      }
      col_base += mat->ncols();
    }
  }
  return solve(a, rhs, unknowns).has_value();
}

/// Decision result. Vanishes carries the replayable certificate;
/// NonVanishing carries the witness point and the jet order that is
/// infeasible; Unknown records the bounds that were exhausted.
struct Verdict {
  enum class Kind { Vanishes, NonVanishing, Unknown };
  Kind kind = Kind::Unknown;
  std::optional<Certificate> certificate;
  std::vector<Rational> witness_point;
  int witness_jet_order = -1;
  size_t witness_point_index = 0;
  int degree_bound = 0;
  int jet_order = 0;

  int exit_code() const {
    switch (kind) {
      case Kind::Vanishes: return 0;
      case Kind::NonVanishing: return 1;
      default: return 2;
    }
  }
  std::string kind_str() const {
    switch (kind) {
      case Kind::Vanishes: return "Vanishes";
      case Kind::NonVanishing: return "NonVanishing";
      default: return "Unknown";
    }
  }
};

/// Semidecision procedure. Scan order is pinned: zero points in file
/// order, jet orders ascending at each point; then certificate degrees
/// ascending. Both halves are sound; Unknown is the honest fallback.
inline Verdict decide(const Amp1Problem& p, Route route = Route::Closed,
                      bool check_both = false) {
  const auto violations = validate(p.connection);
  if (!violations.empty())
    throw error("invalid connection triple: " + violations.front().detail);
  Cocycle raw = cocycle(p, route);
  if (check_both) {
    const Cocycle other = cocycle(
        p, route == Route::Closed ? Route::Definitional : Route::Closed);
    if (other != raw) throw internal_error("cocycle routes disagree");
  }
  const Cocycle c = to_coefficient_vector(raw);
  const Operators ops = build_operators(p);
  Verdict v;
  v.degree_bound = p.degree_bound;
  v.jet_order = p.jet_order;
  for (size_t idx = 0; idx < p.zero_points.size(); ++idx) {
    for (int order = 0; order <= p.jet_order; ++order) {
      if (!jet_obstruction_feasible(ops, c, p.zero_points[idx], order)) {
        v.kind = Verdict::Kind::NonVanishing;
        v.witness_point = p.zero_points[idx];
        v.witness_jet_order = order;
        v.witness_point_index = idx;
        return v;
      }
    }
  }
  if (auto cert = certificate_search(ops, c, p.degree_bound)) {
    v.kind = Verdict::Kind::Vanishes;
    v.certificate = std::move(cert);
    return v;
  }
  v.kind = Verdict::Kind::Unknown;
  return v;
}

}  // namespace amp1
