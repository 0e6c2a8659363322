#pragma once

#include <optional>
#include <string>
#include <vector>

#include "amp1/linalg.hpp"
#include "amp1/poly.hpp"
#include "amp1/super.hpp"

namespace amp1 {

/// One parametrized piece of the zero locus through a declared point.
/// param_map has one polynomial per base variable, written in param_vars.
struct ZeroLocusChart {
  std::vector<Rational> base_point;
  std::vector<std::string> param_vars;
  std::vector<Poly> param_map;
  std::vector<Rational> param_point;
  int claimed_dim = 0;
};

/// Witness data for the zero locus: sample points, parametrized charts,
/// and corpus metadata declaring the locus singular (non-manifold). The
/// oracle validates charts and checks the rank criterion; it never
/// discovers the locus on its own.
struct ZeroLocusWitness {
  std::vector<std::vector<Rational>> points;
  std::vector<ZeroLocusChart> charts;
  bool declared_singular = false;
};

struct CleanVerdict {
  enum class Kind { Clean, NotClean, Unknown };
  Kind kind = Kind::Unknown;
  /// "rank-equation-failure" or "declared-singular" for NotClean; free-form
  /// explanation for Unknown.
  std::string reason;
  std::vector<Rational> witness_point;
  /// Replayable exact numbers for the rank criterion dim + rank = n.
  int claimed_dim = -1;
  int rank_ds = -1;
  int n = -1;
  std::optional<size_t> chart_index;

  int exit_code() const {
    switch (kind) {
      case Kind::Clean: return 0;
      case Kind::NotClean: return 1;
      default: return 2;
    }
  }
  std::string kind_str() const {
    switch (kind) {
      case Kind::Clean: return "Clean";
      case Kind::NotClean: return "NotClean";
      default: return "Unknown";
    }
  }
};

/// Exact Jacobian of a polynomial map at a point: rows follow the map
/// components, columns the variables of those components.
inline RatMatrix jacobian_at(const std::vector<Poly>& map,
                             const std::vector<Rational>& point) {
  RatMatrix j;
  j.reserve(map.size());
  for (const Poly& comp : map) {
    std::vector<Rational> row;
    row.reserve(point.size());
    for (size_t v = 0; v < point.size(); ++v)
      row.push_back(comp.partial(v).evaluate(point));
    j.push_back(std::move(row));
  }
  return j;
}

/// Jacobian of the section at a zero-locus point, as an m x n matrix.
inline RatMatrix ds_matrix(const Section& s, const std::vector<Rational>& p) {
  if (p.size() != s.vars().size())
    throw error("point arity does not match the base dimension");
  if (!s.vanishes_at(p))
    throw error("point is not on the zero locus");
  return jacobian_at(s.components(), p);
}

/// Throws a structured error when chart data is inconsistent with the
/// section; these are witness defects, not verdicts.
inline void validate_chart(const Section& s, const ZeroLocusChart& chart,
                           size_t index) {
  const std::string where = "chart #" + std::to_string(index + 1);
  const size_t n = s.vars().size();
  if (chart.base_point.size() != n)
    throw error(where + ": base point arity mismatch");
  if (chart.param_map.size() != n)
    throw error(where + ": parametrization needs one polynomial per base variable");
  if (chart.param_point.size() != chart.param_vars.size())
    throw error(where + ": parameter point arity mismatch");
  if (chart.claimed_dim < 0 || chart.claimed_dim > static_cast<int>(n))
    throw error(where + ": claimed dimension out of range");
  for (const Poly& comp : chart.param_map)
    if (comp.vars() != chart.param_vars)
      throw error(where + ": parametrization uses foreign variables");
  for (size_t v = 0; v < n; ++v)
    if (chart.param_map[v].evaluate(chart.param_point) != chart.base_point[v])
      throw error(where + ": parametrization does not pass through the base point");
  for (size_t k = 0; k < s.fiber_rank(); ++k)
    if (!s.component(k).compose(chart.param_map).is_zero())
      throw error(where + ": parametrized set leaves the zero locus (component " +
                  std::to_string(k + 1) + ")");
  const size_t jrank =
      rank_fraction_free(jacobian_at(chart.param_map, chart.param_point));
  if (jrank != static_cast<size_t>(chart.claimed_dim))
    throw error(where + ": parametrization rank " + std::to_string(jrank) +
                " does not match claimed dimension " +
                std::to_string(chart.claimed_dim));
}

/// Rank criterion at every chart point: the locus is clean iff
/// claimed_dim + rank Ds = n throughout. declared_singular is corpus
/// metadata; it can only be confirmed through a rank-equation failure
/// (two same-point charts with different dims force one), so unconfirmed
/// declarations come back Unknown.
inline CleanVerdict clean_check(const Section& s, const ZeroLocusWitness& w) {
  const int n = static_cast<int>(s.vars().size());
  for (size_t t = 0; t < w.points.size(); ++t) {
    if (w.points[t].size() != static_cast<size_t>(n))
      throw error("witness point #" + std::to_string(t + 1) + " arity mismatch");
    if (!s.vanishes_at(w.points[t]))
      throw error("witness point #" + std::to_string(t + 1) +
                  " is not on the zero locus");
  }
  for (size_t c = 0; c < w.charts.size(); ++c) validate_chart(s, w.charts[c], c);

  CleanVerdict v;
  v.n = n;
  if (w.charts.empty()) {
    if (!w.points.empty()) {
      v.kind = CleanVerdict::Kind::Unknown;
      v.reason = "zero points declared but no charts supplied";
      return v;
    }
    if (w.declared_singular) {
      v.kind = CleanVerdict::Kind::Unknown;
      v.reason = "declared singular but no charts support the declaration";
      return v;
    }
    // declared-empty zero locus: the intersection is vacuously clean
    v.kind = CleanVerdict::Kind::Clean;
    return v;
  }
  for (size_t c = 0; c < w.charts.size(); ++c) {
    const ZeroLocusChart& chart = w.charts[c];
    const size_t r = rank_fraction_free(ds_matrix(s, chart.base_point));
    if (chart.claimed_dim + static_cast<int>(r) != n) {
      v.kind = CleanVerdict::Kind::NotClean;
      v.reason = w.declared_singular ? "declared-singular" : "rank-equation-failure";
      v.witness_point = chart.base_point;
      v.claimed_dim = chart.claimed_dim;
      v.rank_ds = static_cast<int>(r);
      v.chart_index = c;
      return v;
    }
  }
  if (w.declared_singular) {
    v.kind = CleanVerdict::Kind::Unknown;
    v.reason = "declared singular but every chart satisfies the rank equation";
    return v;
  }
  v.kind = CleanVerdict::Kind::Clean;
  return v;
}

/// Detects sections that are exactly x^1 e_1 + ... + x^r e_r after an
/// invertible constant frame change and a permutation of the variables:
/// all components affine with zero constant term and the row-reduced
/// coefficient matrix made of standard basis rows. Returns r when the
/// form is recognized.
inline std::optional<int> linear_normal_form_detect(const Section& s) {
  const size_t n = s.vars().size();
  const size_t m = s.fiber_rank();
  RatMatrix a(m, std::vector<Rational>(n, Rational(0)));
  for (size_t k = 0; k < m; ++k) {
    const Poly& comp = s.component(k);
    if (comp.degree().value_or(0) > 1) return std::nullopt;
    if (!comp.constant_term().is_zero()) return std::nullopt;
    for (size_t v = 0; v < n; ++v) {
      Monomial mono(n, 0);
      mono[v] = 1;
      a[k][v] = comp.coeff(mono);
    }
  }
  const std::vector<size_t> pivots = rref_in_place(a);
  // every nonzero row must be a standard basis vector: no entries away
  // from its pivot column
  for (size_t r = 0; r < pivots.size(); ++r)
    for (size_t v = 0; v < n; ++v)
      if (v != pivots[r] && !a[r][v].is_zero()) return std::nullopt;
  return static_cast<int>(pivots.size());
}

}  // namespace amp1
