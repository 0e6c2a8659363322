#pragma once

#include <string>
#include <vector>

#include "amp1/super.hpp"

namespace amp1 {

/// Basis index of the degree +1 tensor space Hom(S^2 TM, E[-1]):
/// dx^i . dx^j (x) eps_k with i <= j. Rows are ordered by (k, i, j)
/// lexicographically (fiber index slowest), 1-based.
struct RowLabel {
  int k, i, j;
  friend bool operator==(const RowLabel& a, const RowLabel& b) {
    return a.k == b.k && a.i == b.i && a.j == b.j;
  }
};

/// Enumeration of the symmetric-pair row basis for given dimensions.
class RowBasis {
 public:
  RowBasis(int n, int m) : n_(n), m_(m) {
    for (int k = 1; k <= m; ++k)
      for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) labels_.push_back(RowLabel{k, i, j});
  }

  int n() const { return n_; }
  int m() const { return m_; }
  size_t size() const { return labels_.size(); }
  const std::vector<RowLabel>& labels() const { return labels_; }

  size_t index(int k, int i, int j) const {
    if (i > j) std::swap(i, j);
    if (k < 1 || k > m_ || i < 1 || j > n_)
      throw error("row index out of range");
    const size_t pairs = static_cast<size_t>(n_) * (n_ + 1) / 2;
    // pairs (i,j), i<=j, in lex order: i-1 full blocks then offset j-i
    const size_t pair_index =
        static_cast<size_t>(i - 1) * (2 * n_ - i + 2) / 2 +
        static_cast<size_t>(j - i);
    return static_cast<size_t>(k - 1) * pairs + pair_index;
  }

 private:
  int n_, m_;
  std::vector<RowLabel> labels_;
};

/// Degree +1 component of the symbolic tensor space, used both for the
/// Atiyah cocycle and for coboundary images: one polynomial per row label.
class Cocycle {
 public:
  Cocycle(std::vector<std::string> vars, int m)
      : vars_(std::move(vars)),
        basis_(static_cast<int>(vars_.size()), m),
        entries_(basis_.size(), Poly::zero(vars_)) {}

  const std::vector<std::string>& vars() const { return vars_; }
  const RowBasis& basis() const { return basis_; }
  const std::vector<Poly>& entries() const { return entries_; }

  const Poly& entry(int i, int j, int k) const {
    return entries_[basis_.index(k, i, j)];
  }
  void set_entry(int i, int j, int k, Poly p) {
    entries_[basis_.index(k, i, j)] = std::move(p);
  }
  void add_entry(int i, int j, int k, const Poly& p) {
    entries_[basis_.index(k, i, j)] += p;
  }

  bool is_zero() const {
    for (const auto& e : entries_)
      if (!e.is_zero()) return false;
    return true;
  }

  std::optional<int> degree() const {
    std::optional<int> d;
    for (const auto& e : entries_) {
      auto ed = e.degree();
      if (ed && (!d || *ed > *d)) d = ed;
    }
    return d;
  }

  friend bool operator==(const Cocycle& a, const Cocycle& b) {
    return a.vars_ == b.vars_ && a.basis_.m() == b.basis_.m() &&
           a.entries_ == b.entries_;
  }
  friend bool operator!=(const Cocycle& a, const Cocycle& b) { return !(a == b); }

 private:
  std::vector<std::string> vars_;
  RowBasis basis_;
  std::vector<Poly> entries_;
};

/// Degree 0 component of the symbolic (1,2)-tensor space. It splits into
/// three blocks, stored flat in the same deterministic column orders the
/// coboundary matrices use:
///   xi_block[l][k][i<=j] : xi^l dx^i . dx^j (x) eps_k, order (l,k,i,j)
///   mixed_block[a][c][b] : dxi^a (x) dx^b (x) eps_c,   order (a,c,b)
///   base_block[a<=b][c]  : dx^a . dx^b (x) d_c,        order (a,b,c)
struct TensorDeg0 {
  std::vector<std::string> vars;
  int m = 0;
  std::vector<Poly> xi_block;
  std::vector<Poly> mixed_block;
  std::vector<Poly> base_block;

  static TensorDeg0 zero(std::vector<std::string> vars, int m) {
    TensorDeg0 t;
    const int n = static_cast<int>(vars.size());
    const size_t pairs = static_cast<size_t>(n) * (n + 1) / 2;
    t.vars = std::move(vars);
    t.m = m;
    t.xi_block.assign(static_cast<size_t>(m) * m * pairs, Poly::zero(t.vars));
    t.mixed_block.assign(static_cast<size_t>(m) * m * n, Poly::zero(t.vars));
    t.base_block.assign(pairs * static_cast<size_t>(n), Poly::zero(t.vars));
    return t;
  }

  int n() const { return static_cast<int>(vars.size()); }

  size_t xi_index(int l, int k, int i, int j) const {
    if (i > j) std::swap(i, j);
    const RowBasis rb(n(), m);
    return static_cast<size_t>(l - 1) * rb.size() + rb.index(k, i, j);
  }
  size_t mixed_index(int a, int c, int b) const {
    return (static_cast<size_t>(a - 1) * m + static_cast<size_t>(c - 1)) * n() +
           static_cast<size_t>(b - 1);
  }
  size_t base_index(int a, int b, int c) const {
    if (a > b) std::swap(a, b);
    const size_t pair_index =
        static_cast<size_t>(a - 1) * (2 * n() - a + 2) / 2 +
        static_cast<size_t>(b - a);
    return pair_index * static_cast<size_t>(n()) + static_cast<size_t>(c - 1);
  }
};

/// Structurally zero: the degree +2 component of the tensor space on an
/// amplitude +1 manifold is trivial, so the coboundary of any degree +1
/// tensor lives in a zero space.
struct DegreeTwoTensor {
  friend bool operator==(DegreeTwoTensor, DegreeTwoTensor) { return true; }
};

namespace detail {

/// Bilinear values of a degree-0 tensor on the coordinate frame, under the
/// identification that makes the coboundary matrices literal:
///  * the symmetric pairing double-counts diagonals, so stored (i,i)
///    coefficients enter values doubled and are halved on readout;
///  * the Hom(S^2 TM, TM) block embeds with a -1 (suspension sign on the
///    TM-valued summand).
struct TensorValues {
  // value on (d_i, d_j), both orders identical
  std::vector<std::vector<GradedVectorField>> dd;
  // value on (eps_a, d_b) == value on (d_b, eps_a)
  std::vector<std::vector<GradedVectorField>> ed;
};

inline TensorValues tensor_values(const TensorDeg0& t) {
  const int n = t.n(), m = t.m;
  TensorValues v;
  v.dd.assign(static_cast<size_t>(n),
              std::vector<GradedVectorField>(
                  static_cast<size_t>(n), GradedVectorField::zero(t.vars, m)));
  v.ed.assign(static_cast<size_t>(m),
              std::vector<GradedVectorField>(
                  static_cast<size_t>(n), GradedVectorField::zero(t.vars, m)));
  for (int l = 1; l <= m; ++l)
    for (int k = 1; k <= m; ++k)
      for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
          const Poly& c = t.xi_block[t.xi_index(l, k, i, j)];
          if (c.is_zero()) continue;
          GradedVectorField f =
              (c * SuperFunction::xi(t.vars, m, l)) *
              GradedVectorField::odd_coordinate(t.vars, m, k);
          v.dd[i - 1][j - 1] += f;
          if (i != j)
            v.dd[j - 1][i - 1] += f;
          else
            v.dd[i - 1][i - 1] += f;  // diagonal pairing double-counts
        }
  for (int a = 1; a <= m; ++a)
    for (int c = 1; c <= m; ++c)
      for (int b = 1; b <= n; ++b) {
        const Poly& h = t.mixed_block[t.mixed_index(a, c, b)];
        if (h.is_zero()) continue;
        v.ed[a - 1][b - 1] += SuperFunction::from_poly(h, m) *
                              GradedVectorField::odd_coordinate(t.vars, m, c);
      }
  for (int a = 1; a <= n; ++a)
    for (int b = a; b <= n; ++b)
      for (int c = 1; c <= n; ++c) {
        const Poly& g = t.base_block[t.base_index(a, b, c)];
        if (g.is_zero()) continue;
        GradedVectorField f =
            SuperFunction::from_poly(-g, m) *
            GradedVectorField::coordinate(t.vars, m, static_cast<size_t>(c - 1));
        v.dd[a - 1][b - 1] += f;
        if (a != b)
          v.dd[b - 1][a - 1] += f;
        else
          v.dd[a - 1][a - 1] += f;
      }
  return v;
}

}  // namespace detail

/// Lie derivative of a degree-0 symbolic tensor along the homological
/// field Q = iota_s, evaluated on coordinate pairs and read back in the
/// degree +1 row basis:
///   (L_Q F)(X,Y) = [Q, F(X,Y)] - F([Q,X],Y) - F(X,[Q,Y]).
/// Every ingredient is computed with the derivation algebra (brackets and
/// contractions), making this an independent route to the coboundary.
inline Cocycle lie_derivative_tensor(const Section& s, const TensorDeg0& t) {
  if (s.vars() != t.vars || static_cast<int>(s.fiber_rank()) != t.m)
    throw error("lie derivative: section does not match tensor");
  const int n = t.n(), m = t.m;
  const GradedVectorField q = interior_product(s);
  const detail::TensorValues v = detail::tensor_values(t);

  // [Q, d/dx^i] for each i; a pure degree +1 field with poly coefficients.
  std::vector<GradedVectorField> qd;
  qd.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    qd.push_back(
        bracket(q, GradedVectorField::coordinate(t.vars, m, static_cast<size_t>(i))));

  Cocycle out(t.vars, m);
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      GradedVectorField res = bracket(q, v.dd[i - 1][j - 1]);
      for (int a = 1; a <= m; ++a) {
        const Poly wi = qd[i - 1].xi_component(static_cast<size_t>(a - 1)).body();
        const Poly wj = qd[j - 1].xi_component(static_cast<size_t>(a - 1)).body();
        if (!wi.is_zero())
          res -= SuperFunction::from_poly(wi, m) * v.ed[a - 1][j - 1];
        if (!wj.is_zero())
          res -= SuperFunction::from_poly(wj, m) * v.ed[a - 1][i - 1];
      }
      for (const auto& f : res.x_components())
        if (!f.is_zero())
          throw internal_error("coboundary has a base-direction component");
      for (int k = 1; k <= m; ++k) {
        const SuperFunction& c = res.xi_component(static_cast<size_t>(k - 1));
        if (!c.is_homogeneous(0))
          throw internal_error("coboundary readout is not concentrated in degree +1");
        Poly val = c.body();
        if (i == j) val = Rational(1, 2) * val;  // halve the doubled diagonal
        out.set_entry(i, j, k, std::move(val));
      }
    }
  return out;
}

/// The coboundary of a degree +1 tensor: the target space is zero.
inline DegreeTwoTensor lie_derivative_tensor(const Section&, const Cocycle&) {
  return DegreeTwoTensor{};
}

}  // namespace amp1
