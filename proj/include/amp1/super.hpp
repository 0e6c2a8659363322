#pragma once

#include <algorithm>
#include <iterator>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "amp1/poly.hpp"

namespace amp1 {

/// Strictly increasing list of 1-based odd-coordinate indices; the key of
/// one monomial xi^{a_1}...xi^{a_p}. The empty subset is the even part.
using XiSubset = std::vector<int>;

/// Subsets ordered by size first, then lexicographically: a deterministic
/// degree-graded order for printing and canonical storage.
struct XiSubsetOrder {
  bool operator()(const XiSubset& a, const XiSubset& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/// Function on the graded manifold: polynomial coefficients on a basis of
/// odd monomials. Base coordinates x^i have degree 0, odd coordinates xi^a
/// have degree -1, so a term with p odd factors is homogeneous of degree -p.
class SuperFunction {
 public:
  using TermMap = std::map<XiSubset, Poly, XiSubsetOrder>;

  SuperFunction() = default;
  SuperFunction(std::vector<std::string> vars, int m)
      : vars_(std::move(vars)), m_(m) {
    if (m < 0) throw error("negative odd dimension");
  }

  static SuperFunction zero(std::vector<std::string> vars, int m) {
    return SuperFunction(std::move(vars), m);
  }

  static SuperFunction from_poly(Poly p, int m) {
    SuperFunction f(p.vars(), m);
    f.add_term({}, std::move(p));
    return f;
  }

  static SuperFunction constant(std::vector<std::string> vars, int m, Rational c) {
    return from_poly(Poly::constant(std::move(vars), std::move(c)), m);
  }

  /// The odd coordinate xi^k (1-based).
  static SuperFunction xi(std::vector<std::string> vars, int m, int k) {
    SuperFunction f(vars, m);
    f.check_xi_index(k);
    f.add_term({k}, Poly::constant(vars, Rational(1)));
    return f;
  }

  const std::vector<std::string>& vars() const { return vars_; }
  int odd_dim() const { return m_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// True if every term has odd length p with -p == d.
  bool is_homogeneous(int d) const {
    for (const auto& [s, p] : terms_)
      if (-static_cast<int>(s.size()) != d) return false;
    return true;
  }

  SuperFunction homogeneous_part(int d) const {
    SuperFunction r(vars_, m_);
    for (const auto& [s, p] : terms_)
      if (-static_cast<int>(s.size()) == d) r.terms_[s] = p;
    return r;
  }

  /// Degrees d with a nonzero component, ascending.
  std::vector<int> degrees() const {
    std::set<int> ds;
    for (const auto& [s, p] : terms_) ds.insert(-static_cast<int>(s.size()));
    return {ds.begin(), ds.end()};
  }

  /// Coefficient polynomial of one odd monomial.
  Poly coefficient(const XiSubset& s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? Poly::zero(vars_) : it->second;
  }

  /// The purely even part as a polynomial.
  Poly body() const { return coefficient({}); }

  SuperFunction operator-() const {
    SuperFunction r(vars_, m_);
    for (const auto& [s, p] : terms_) r.terms_[s] = -p;
    return r;
  }

  SuperFunction& operator+=(const SuperFunction& o) {
    check_compatible(o);
    for (const auto& [s, p] : o.terms_) add_term(s, p);
    return *this;
  }
  SuperFunction& operator-=(const SuperFunction& o) {
    check_compatible(o);
    for (const auto& [s, p] : o.terms_) add_term(s, -p);
    return *this;
  }
  friend SuperFunction operator+(SuperFunction a, const SuperFunction& b) {
    return a += b;
  }
  friend SuperFunction operator-(SuperFunction a, const SuperFunction& b) {
    return a -= b;
  }

  /// Supercommutative product with the Koszul sign: merging two odd
  /// monomials costs (-1) for every transposed pair of odd factors.
  friend SuperFunction operator*(const SuperFunction& a, const SuperFunction& b) {
    a.check_compatible(b);
    SuperFunction r(a.vars_, a.m_);
    for (const auto& [sa, pa] : a.terms_) {
      for (const auto& [sb, pb] : b.terms_) {
        int inversions = 0;
        bool repeated = false;
        for (int u : sa)
          for (int v : sb) {
            if (u == v) repeated = true;
            if (u > v) ++inversions;
          }
        if (repeated) continue;  // xi^a * xi^a = 0
        XiSubset merged;
        merged.reserve(sa.size() + sb.size());
        std::merge(sa.begin(), sa.end(), sb.begin(), sb.end(),
                   std::back_inserter(merged));
        Poly c = pa * pb;
        if (inversions % 2) c = -c;
        r.add_term(merged, std::move(c));
      }
    }
    return r;
  }

  friend SuperFunction operator*(const Poly& p, const SuperFunction& f) {
    SuperFunction r(f.vars_, f.m_);
    for (const auto& [s, q] : f.terms_) r.add_term(s, p * q);
    return r;
  }
  friend SuperFunction operator*(const Rational& c, const SuperFunction& f) {
    SuperFunction r(f.vars_, f.m_);
    for (const auto& [s, q] : f.terms_) r.add_term(s, c * q);
    return r;
  }

  friend bool operator==(const SuperFunction& a, const SuperFunction& b) {
    return a.vars_ == b.vars_ && a.m_ == b.m_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const SuperFunction& a, const SuperFunction& b) {
    return !(a == b);
  }

  /// d/dx^i, acting on the polynomial coefficients (0-based i).
  SuperFunction x_partial(size_t i) const {
    SuperFunction r(vars_, m_);
    for (const auto& [s, p] : terms_) r.add_term(s, p.partial(i));
    return r;
  }

  /// Signed odd derivative d/dxi^k (1-based k): removing the j-th odd
  /// factor of a monomial (1-based position) costs (-1)^(j-1).
  SuperFunction xi_partial(int k) const {
    check_xi_index(k);
    SuperFunction r(vars_, m_);
    for (const auto& [s, p] : terms_) {
      for (size_t j = 0; j < s.size(); ++j) {
        if (s[j] != k) continue;
        XiSubset reduced;
        reduced.reserve(s.size() - 1);
        for (size_t t = 0; t < s.size(); ++t)
          if (t != j) reduced.push_back(s[t]);
        r.add_term(reduced, (j % 2) ? -p : p);
        break;
      }
    }
    return r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [s, p] : terms_) {
      if (!first) out += " + ";
      first = false;
      out += "(" + p.str() + ")";
      for (int k : s) out += "*xi" + std::to_string(k);
    }
    return out;
  }

 private:
  void check_compatible(const SuperFunction& o) const {
    if (vars_ != o.vars_ || m_ != o.m_)
      throw error("superfunction contexts differ");
  }
  void check_xi_index(int k) const {
    if (k < 1 || k > m_)
      throw error("odd coordinate index " + std::to_string(k) + " out of range");
  }
  void add_term(const XiSubset& s, Poly p) {
    if (p.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(s, p);
    if (!inserted) {
      it->second += p;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  std::vector<std::string> vars_;
  int m_ = 0;
  TermMap terms_;
};

/// Polynomial section data: one polynomial per fiber component, s^1..s^m.
class Section {
 public:
  Section() = default;
  Section(std::vector<std::string> vars, std::vector<Poly> components)
      : vars_(std::move(vars)), comps_(std::move(components)) {
    for (const auto& c : comps_)
      if (c.vars() != vars_) throw error("section component variable mismatch");
  }

  const std::vector<std::string>& vars() const { return vars_; }
  size_t fiber_rank() const { return comps_.size(); }
  const std::vector<Poly>& components() const { return comps_; }
  const Poly& component(size_t k) const { return comps_.at(k); }

  /// Max component degree; disengaged when every component is zero.
  std::optional<int> degree() const {
    std::optional<int> d;
    for (const auto& c : comps_) {
      auto cd = c.degree();
      if (cd && (!d || *cd > *d)) d = cd;
    }
    return d;
  }

  bool vanishes_at(const std::vector<Rational>& p) const {
    for (const auto& c : comps_)
      if (!c.evaluate(p).is_zero()) return false;
    return true;
  }

  friend bool operator==(const Section& a, const Section& b) {
    return a.vars_ == b.vars_ && a.comps_ == b.comps_;
  }
  friend bool operator!=(const Section& a, const Section& b) { return !(a == b); }

 private:
  std::vector<std::string> vars_;
  std::vector<Poly> comps_;
};

/// Graded vector field: superfunction coefficients on the coordinate
/// derivations d/dx^i (degree 0) and d/dxi^k (degree +1).
class GradedVectorField {
 public:
  GradedVectorField() = default;
  GradedVectorField(std::vector<std::string> vars, int m)
      : vars_(std::move(vars)),
        m_(m),
        x_(vars_.size(), SuperFunction::zero(vars_, m)),
        xi_(static_cast<size_t>(m), SuperFunction::zero(vars_, m)) {}

  static GradedVectorField zero(std::vector<std::string> vars, int m) {
    return GradedVectorField(std::move(vars), m);
  }

  /// d/dx^i (0-based i).
  static GradedVectorField coordinate(std::vector<std::string> vars, int m,
                                      size_t i) {
    GradedVectorField v(std::move(vars), m);
    v.x_.at(i) = SuperFunction::constant(v.vars_, m, Rational(1));
    return v;
  }

  /// d/dxi^k (1-based k).
  static GradedVectorField odd_coordinate(std::vector<std::string> vars, int m,
                                          int k) {
    GradedVectorField v(std::move(vars), m);
    v.xi_.at(static_cast<size_t>(k - 1)) =
        SuperFunction::constant(v.vars_, m, Rational(1));
    return v;
  }

  const std::vector<std::string>& vars() const { return vars_; }
  int odd_dim() const { return m_; }
  size_t base_dim() const { return vars_.size(); }
  const std::vector<SuperFunction>& x_components() const { return x_; }
  const std::vector<SuperFunction>& xi_components() const { return xi_; }
  SuperFunction& x_component(size_t i) { return x_.at(i); }
  SuperFunction& xi_component(size_t k) { return xi_.at(k); }
  const SuperFunction& x_component(size_t i) const { return x_.at(i); }
  const SuperFunction& xi_component(size_t k) const { return xi_.at(k); }

  bool is_zero() const {
    for (const auto& f : x_)
      if (!f.is_zero()) return false;
    for (const auto& f : xi_)
      if (!f.is_zero()) return false;
    return true;
  }

  /// True if the field is concentrated in degree d: x-coefficients of
  /// degree d, xi-coefficients of degree d-1.
  bool is_homogeneous(int d) const {
    for (const auto& f : x_)
      if (!f.is_homogeneous(d)) return false;
    for (const auto& f : xi_)
      if (!f.is_homogeneous(d - 1)) return false;
    return true;
  }

  GradedVectorField homogeneous_part(int d) const {
    GradedVectorField v(vars_, m_);
    for (size_t i = 0; i < x_.size(); ++i) v.x_[i] = x_[i].homogeneous_part(d);
    for (size_t k = 0; k < xi_.size(); ++k)
      v.xi_[k] = xi_[k].homogeneous_part(d - 1);
    return v;
  }

  /// Degrees with a nonzero homogeneous layer, ascending. A field on an
  /// amplitude +1 manifold lives in degrees -m..+1.
  std::vector<int> layer_degrees() const {
    std::vector<int> out;
    for (int d = -m_; d <= 1; ++d)
      if (!homogeneous_part(d).is_zero()) out.push_back(d);
    return out;
  }

  GradedVectorField operator-() const {
    GradedVectorField v(vars_, m_);
    for (size_t i = 0; i < x_.size(); ++i) v.x_[i] = -x_[i];
    for (size_t k = 0; k < xi_.size(); ++k) v.xi_[k] = -xi_[k];
    return v;
  }
  GradedVectorField& operator+=(const GradedVectorField& o) {
    check_compatible(o);
    for (size_t i = 0; i < x_.size(); ++i) x_[i] += o.x_[i];
    for (size_t k = 0; k < xi_.size(); ++k) xi_[k] += o.xi_[k];
    return *this;
  }
  GradedVectorField& operator-=(const GradedVectorField& o) {
    check_compatible(o);
    for (size_t i = 0; i < x_.size(); ++i) x_[i] -= o.x_[i];
    for (size_t k = 0; k < xi_.size(); ++k) xi_[k] -= o.xi_[k];
    return *this;
  }
  friend GradedVectorField operator+(GradedVectorField a,
                                     const GradedVectorField& b) {
    return a += b;
  }
  friend GradedVectorField operator-(GradedVectorField a,
                                     const GradedVectorField& b) {
    return a -= b;
  }

  /// Left multiplication by a superfunction coefficient.
  friend GradedVectorField operator*(const SuperFunction& f,
                                     const GradedVectorField& v) {
    GradedVectorField r(v.vars_, v.m_);
    for (size_t i = 0; i < v.x_.size(); ++i) r.x_[i] = f * v.x_[i];
    for (size_t k = 0; k < v.xi_.size(); ++k) r.xi_[k] = f * v.xi_[k];
    return r;
  }

  friend bool operator==(const GradedVectorField& a, const GradedVectorField& b) {
    return a.vars_ == b.vars_ && a.m_ == b.m_ && a.x_ == b.x_ && a.xi_ == b.xi_;
  }
  friend bool operator!=(const GradedVectorField& a, const GradedVectorField& b) {
    return !(a == b);
  }

  std::string str() const {
    std::string out;
    for (size_t i = 0; i < x_.size(); ++i) {
      if (x_[i].is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "(" + x_[i].str() + ")*d/d" + vars_[i];
    }
    for (size_t k = 0; k < xi_.size(); ++k) {
      if (xi_[k].is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "(" + xi_[k].str() + ")*d/dxi" + std::to_string(k + 1);
    }
    return out.empty() ? "0" : out;
  }

 private:
  void check_compatible(const GradedVectorField& o) const {
    if (vars_ != o.vars_ || m_ != o.m_) throw error("vector field contexts differ");
  }

  std::vector<std::string> vars_;
  int m_ = 0;
  std::vector<SuperFunction> x_;
  std::vector<SuperFunction> xi_;
};

/// V acting on a function as a derivation: the coefficients multiply the
/// coordinate derivatives from the left, Koszul signs live in xi_partial.
inline SuperFunction apply(const GradedVectorField& v, const SuperFunction& f) {
  if (v.vars() != f.vars() || v.odd_dim() != f.odd_dim())
    throw error("apply: contexts differ");
  SuperFunction out = SuperFunction::zero(v.vars(), v.odd_dim());
  for (size_t i = 0; i < v.base_dim(); ++i) {
    if (v.x_component(i).is_zero()) continue;
    out += v.x_component(i) * f.x_partial(i);
  }
  for (int k = 1; k <= v.odd_dim(); ++k) {
    const auto& c = v.xi_component(static_cast<size_t>(k - 1));
    if (c.is_zero()) continue;
    out += c * f.xi_partial(k);
  }
  return out;
}

/// Contraction with a section: iota_s = sum_k s^k d/dxi^k, degree +1.
/// This is the homological vector field of the amplitude +1 data (E, s).
inline GradedVectorField interior_product(const Section& s) {
  const int m = static_cast<int>(s.fiber_rank());
  GradedVectorField v(s.vars(), m);
  for (int k = 0; k < m; ++k)
    v.xi_component(static_cast<size_t>(k)) =
        SuperFunction::from_poly(s.component(static_cast<size_t>(k)), m);
  return v;
}

/// Graded commutator [X, Y] = X Y - (-1)^{|X||Y|} Y X, computed layer by
/// layer on inhomogeneous fields and read off on the coordinate generators.
inline GradedVectorField bracket(const GradedVectorField& x,
                                 const GradedVectorField& y) {
  if (x.vars() != y.vars() || x.odd_dim() != y.odd_dim())
    throw error("bracket: contexts differ");
  GradedVectorField out = GradedVectorField::zero(x.vars(), x.odd_dim());
  for (int dx : x.layer_degrees()) {
    const GradedVectorField xl = x.homogeneous_part(dx);
    for (int dy : y.layer_degrees()) {
      const GradedVectorField yl = y.homogeneous_part(dy);
      const bool flip = (dx * dy) % 2 != 0;
      for (size_t i = 0; i < x.base_dim(); ++i) {
        SuperFunction t = apply(xl, yl.x_component(i));
        SuperFunction u = apply(yl, xl.x_component(i));
        out.x_component(i) += flip ? t + u : t - u;
      }
      for (size_t k = 0; k < static_cast<size_t>(x.odd_dim()); ++k) {
        SuperFunction t = apply(xl, yl.xi_component(k));
        SuperFunction u = apply(yl, xl.xi_component(k));
        out.xi_component(k) += flip ? t + u : t - u;
      }
    }
  }
  return out;
}

}  // namespace amp1
