#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "amp1/rational.hpp"

namespace amp1 {

/// Exponent vector of a monomial; entry i is the power of the i-th variable.
using Monomial = std::vector<int>;

inline int total_degree(const Monomial& m) {
  return std::accumulate(m.begin(), m.end(), 0);
}

/// Graded lexicographic order, "leading term first": higher total degree
/// sorts first; within a degree, lexicographically larger exponent vectors
/// sort first (so x1^2 > x1*x2 > x2^2).
struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const int da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

/// All exponent vectors in `nvars` variables of total degree <= bound,
/// listed low degree first (each degree block in ascending lex order).
/// Deterministic; used to index unknowns in the linear solvers.
inline std::vector<Monomial> monomials_up_to(int nvars, int bound) {
  std::vector<Monomial> out;
  Monomial cur(static_cast<size_t>(nvars), 0);
  for (int deg = 0; deg <= bound; ++deg) {
    // enumerate compositions of `deg` into nvars parts
    std::vector<Monomial> block;
    auto rec = [&](auto&& self, int pos, int left) -> void {
      if (pos == nvars - 1 || nvars == 0) {
        if (nvars == 0) {
          if (left == 0) block.push_back(cur);
          return;
        }
        cur[pos] = left;
        block.push_back(cur);
        return;
      }
      for (int e = 0; e <= left; ++e) {
        cur[pos] = e;
        self(self, pos + 1, left - e);
      }
      cur[pos] = 0;
    };
    if (nvars == 0) {
      if (deg == 0) out.push_back(Monomial{});
      continue;
    }
    rec(rec, 0, deg);
    std::sort(block.begin(), block.end());
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

/// Polynomial with exact rational coefficients over a named variable list.
/// Canonical form: a map from exponent vectors to nonzero coefficients in
/// graded-lex order. Two polynomials are equal iff their variable lists and
/// term maps are equal; all operations preserve canonical form.
class Poly {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexDescending>;

  Poly() = default;
  explicit Poly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static Poly zero(std::vector<std::string> vars) { return Poly(std::move(vars)); }

  static Poly constant(std::vector<std::string> vars, Rational c) {
    Poly p(std::move(vars));
    if (!c.is_zero()) p.terms_[Monomial(p.vars_.size(), 0)] = std::move(c);
    return p;
  }

  /// The i-th variable (0-based) as a polynomial.
  static Poly variable(std::vector<std::string> vars, size_t i) {
    Poly p(std::move(vars));
    if (i >= p.vars_.size()) throw error("variable index out of range");
    Monomial m(p.vars_.size(), 0);
    m[i] = 1;
    p.terms_[std::move(m)] = Rational(1);
    return p;
  }

  static Poly monomial(std::vector<std::string> vars, Monomial m, Rational c) {
    Poly p(std::move(vars));
    if (m.size() != p.vars_.size()) throw error("monomial arity mismatch");
    for (int e : m)
      if (e < 0) throw error("negative exponent in monomial");
    if (!c.is_zero()) p.terms_[std::move(m)] = std::move(c);
    return p;
  }

  const std::vector<std::string>& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  size_t nvars() const { return vars_.size(); }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
  }

  /// Total degree; disengaged for the zero polynomial ("minus infinity").
  std::optional<int> degree() const {
    if (terms_.empty()) return std::nullopt;
    return total_degree(terms_.begin()->first);  // leading term is first
  }

  Rational coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational constant_term() const { return coeff(Monomial(vars_.size(), 0)); }

  Poly operator-() const {
    Poly r(vars_);
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
  }

  Poly& operator+=(const Poly& o) {
    check_same_vars(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_same_vars(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_same_vars(b);
    Poly r(a.vars_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m(ma.size());
        for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
        r.add_term(m, ca * cb);
      }
    }
    return r;
  }

  friend Poly operator*(const Rational& c, const Poly& p) {
    Poly r(p.vars_);
    if (c.is_zero()) return r;
    for (const auto& [m, pc] : p.terms_) r.terms_[m] = c * pc;
    return r;
  }
  friend Poly operator*(const Poly& p, const Rational& c) { return c * p; }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly pow(int e) const {
    if (e < 0) throw error("negative exponent");
    Poly acc = Poly::constant(vars_, Rational(1));
    Poly base = *this;
    while (e > 0) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  /// Partial derivative with respect to the i-th variable (0-based).
  Poly partial(size_t i) const {
    if (i >= vars_.size()) throw error("partial: variable index out of range");
    Poly r(vars_);
    for (const auto& [m, c] : terms_) {
      if (m[i] == 0) continue;
      Monomial d = m;
      d[i] -= 1;
      r.add_term(d, c * Rational(m[i]));
    }
    return r;
  }

  /// Exact value at a rational point.
  Rational evaluate(const std::vector<Rational>& point) const {
    if (point.size() != vars_.size()) throw error("evaluate: point arity mismatch");
    Rational acc(0);
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (size_t i = 0; i < m.size(); ++i)
        for (int e = 0; e < m[i]; ++e) t *= point[i];
      acc += t;
    }
    return acc;
  }

  /// Substitutes maps[i] for the i-th variable. All maps must share one
  /// variable list, which becomes the result's variable list.
  Poly compose(const std::vector<Poly>& maps) const {
    if (maps.size() != vars_.size()) throw error("compose: map arity mismatch");
    std::vector<std::string> tvars =
        maps.empty() ? std::vector<std::string>{} : maps[0].vars();
    for (const auto& mp : maps)
      if (mp.vars() != tvars) throw error("compose: inconsistent map variables");
    Poly acc = Poly::zero(tvars);
    // cache powers of each substituted map as needed
    std::vector<std::vector<Poly>> powers(maps.size());
    auto power_of = [&](size_t i, int e) -> const Poly& {
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(Poly::constant(tvars, Rational(1)));
      while (static_cast<int>(cache.size()) <= e)
        cache.push_back(cache.back() * maps[i]);
      return cache[static_cast<size_t>(e)];
    };
    for (const auto& [m, c] : terms_) {
      Poly t = Poly::constant(tvars, c);
      for (size_t i = 0; i < m.size(); ++i)
        if (m[i] > 0) t = t * power_of(i, m[i]);
      acc += t;
    }
    return acc;
  }

  /// The polynomial q(y) = p(y + point), same variable list.
  Poly shifted(const std::vector<Rational>& point) const {
    if (point.size() != vars_.size()) throw error("shift: point arity mismatch");
    std::vector<Poly> maps;
    maps.reserve(vars_.size());
    for (size_t i = 0; i < vars_.size(); ++i)
      maps.push_back(Poly::variable(vars_, i) + Poly::constant(vars_, point[i]));
    return compose(maps);
  }

  /// Drops all terms of total degree > bound.
  Poly truncated(int bound) const {
    Poly r(vars_);
    for (const auto& [m, c] : terms_)
      if (total_degree(m) <= bound) r.terms_[m] = c;
    return r;
  }

  /// Canonical text form; parses back to an equal polynomial.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      const bool neg = c.sign() < 0;
      const Rational a = neg ? -c : c;
      if (first) {
        if (neg) out += "-";
        first = false;
      } else {
        out += neg ? " - " : " + ";
      }
      std::string factors;
      for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!factors.empty()) factors += "*";
        factors += vars_[i];
        if (m[i] > 1) factors += "^" + std::to_string(m[i]);
      }
      if (factors.empty()) {
        out += a.str();
      } else if (a.is_one()) {
        out += factors;
      } else {
        out += a.str() + "*" + factors;
      }
    }
    return out;
  }

 private:
  void check_same_vars(const Poly& o) const {
    if (vars_ != o.vars_)
      throw error("polynomial variable lists differ ('" + join(vars_) +
                  "' vs '" + join(o.vars_) + "')");
  }
  static std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += v[i];
    }
    return s;
  }
  void add_term(const Monomial& m, Rational c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  std::vector<std::string> vars_;
  TermMap terms_;
};

}  // namespace amp1
