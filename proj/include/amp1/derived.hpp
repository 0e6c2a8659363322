#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "amp1/atiyah.hpp"
#include "amp1/clean.hpp"

namespace amp1 {

/// Polynomial parametrization of an embedded submanifold of R^d.
struct SubmanifoldParam {
  int ambient_dim = 0;
  std::vector<std::string> param_vars;
  std::vector<Poly> map;  // ambient_dim polynomials in param_vars

  int dim() const { return static_cast<int>(param_vars.size()); }
};

/// Declared intersection: parameter values on each side mapping to the
/// same ambient point, with the dimension of the intersection there.
struct IntersectionPoint {
  std::vector<Rational> x_params;
  std::vector<Rational> y_params;
  int claimed_dim = 0;
};

struct DerivedProblem {
  SubmanifoldParam x, y;
  std::vector<IntersectionPoint> intersections;
};

/// Structured validation of the parametrizations and the declared
/// intersection points (exact equality, immersion ranks).
inline void validate_derived(const DerivedProblem& dp) {
  const auto check_param = [](const SubmanifoldParam& sub, const char* name) {
    if (sub.ambient_dim <= 0)
      throw error(std::string(name) + ": ambient dimension must be positive");
    if (sub.param_vars.empty())
      throw error(std::string(name) + ": needs at least one parameter");
    if (sub.map.size() != static_cast<size_t>(sub.ambient_dim))
      throw error(std::string(name) + ": map needs one polynomial per ambient coordinate");
    for (const Poly& comp : sub.map)
      if (comp.vars() != sub.param_vars)
        throw error(std::string(name) + ": map uses foreign variables");
  };
  check_param(dp.x, "X");
  check_param(dp.y, "Y");
  if (dp.x.ambient_dim != dp.y.ambient_dim)
    throw error("X and Y live in different ambient spaces");
  for (const std::string& v : dp.x.param_vars)
    if (std::find(dp.y.param_vars.begin(), dp.y.param_vars.end(), v) !=
        dp.y.param_vars.end())
      throw error("X and Y parameter variables must be disjoint (shared '" + v +
                  "')");
  for (size_t t = 0; t < dp.intersections.size(); ++t) {
    const IntersectionPoint& pt = dp.intersections[t];
    const std::string where = "intersection #" + std::to_string(t + 1);
    if (pt.x_params.size() != dp.x.param_vars.size() ||
        pt.y_params.size() != dp.y.param_vars.size())
      throw error(where + ": parameter arity mismatch");
    for (int i = 0; i < dp.x.ambient_dim; ++i)
      if (dp.x.map[static_cast<size_t>(i)].evaluate(pt.x_params) !=
          dp.y.map[static_cast<size_t>(i)].evaluate(pt.y_params))
        throw error(where + ": the declared parameters map to different points");
    if (rank_fraction_free(jacobian_at(dp.x.map, pt.x_params)) !=
        dp.x.param_vars.size())
      throw error(where + ": X is not an immersion at the declared parameters");
    if (rank_fraction_free(jacobian_at(dp.y.map, pt.y_params)) !=
        dp.y.param_vars.size())
      throw error(where + ": Y is not an immersion at the declared parameters");
    if (pt.claimed_dim < 0)
      throw error(where + ": claimed dimension must be non-negative");
  }
}

namespace detail {

/// Re-expresses a polynomial over a larger variable list, with its own
/// variables starting at `offset`.
inline Poly embed_poly(const Poly& p, const std::vector<std::string>& vars,
                       size_t offset) {
  Poly out = Poly::zero(vars);
  for (const auto& [mono, c] : p.terms()) {
    Monomial wide(vars.size(), 0);
    for (size_t v = 0; v < mono.size(); ++v) wide[offset + v] = mono[v];
    out += Poly::monomial(vars, wide, c);
  }
  return out;
}

}  // namespace detail

/// Flat-chart model of the derived intersection: base variables are the
/// X parameters followed by the Y parameters, the fiber is the ambient
/// space, and the section is s(t, u) = map_Y(u) - map_X(t). Declared
/// intersections become the zero points.
inline Amp1Problem build_amp1(const DerivedProblem& dp,
                              std::optional<int> degree_bound = std::nullopt,
                              std::optional<int> jet_order = std::nullopt) {
  validate_derived(dp);
  std::vector<std::string> vars = dp.x.param_vars;
  vars.insert(vars.end(), dp.y.param_vars.begin(), dp.y.param_vars.end());
  const size_t k = dp.x.param_vars.size();
  std::vector<Poly> comps;
  comps.reserve(static_cast<size_t>(dp.x.ambient_dim));
  for (int i = 0; i < dp.x.ambient_dim; ++i)
    comps.push_back(detail::embed_poly(dp.y.map[static_cast<size_t>(i)], vars, k) -
                    detail::embed_poly(dp.x.map[static_cast<size_t>(i)], vars, 0));
  std::vector<std::vector<Rational>> zero_points;
  zero_points.reserve(dp.intersections.size());
  for (const IntersectionPoint& pt : dp.intersections) {
    std::vector<Rational> z = pt.x_params;
    z.insert(z.end(), pt.y_params.begin(), pt.y_params.end());
    zero_points.push_back(std::move(z));
  }
  return make_problem(std::move(vars), std::move(comps), std::move(zero_points),
                      std::nullopt, degree_bound, jet_order);
}

/// Independent clean check: at each declared intersection, the tangent
/// spaces are the column spans of the parametrization Jacobians, and the
/// tangent intersection has dim X + dim Y - rank [DX | DY] dimensions.
/// Clean iff that number equals the claimed one at every point.
inline CleanVerdict tangent_clean_check(const DerivedProblem& dp) {
  validate_derived(dp);
  const int k = dp.x.dim(), l = dp.y.dim();
  CleanVerdict v;
  v.n = k + l;
  for (size_t t = 0; t < dp.intersections.size(); ++t) {
    const IntersectionPoint& pt = dp.intersections[t];
    const RatMatrix dx = jacobian_at(dp.x.map, pt.x_params);
    const RatMatrix dy = jacobian_at(dp.y.map, pt.y_params);
    RatMatrix combined(dx.size());
    for (size_t r = 0; r < dx.size(); ++r) {
      combined[r] = dx[r];
      combined[r].insert(combined[r].end(), dy[r].begin(), dy[r].end());
    }
    const int rank_c = static_cast<int>(rank_fraction_free(combined));
    const int tangent_dim = k + l - rank_c;
    if (tangent_dim != pt.claimed_dim) {
      v.kind = CleanVerdict::Kind::NotClean;
      v.reason = "rank-equation-failure";
      v.witness_point = pt.x_params;
      v.witness_point.insert(v.witness_point.end(), pt.y_params.begin(),
                             pt.y_params.end());
      v.claimed_dim = pt.claimed_dim;
      v.rank_ds = rank_c;
      v.chart_index = t;
      return v;
    }
  }
  v.kind = CleanVerdict::Kind::Clean;
  return v;
}

/// Consistency report between the declared intersections and the zero
/// points of a built problem. Mismatches are data, not errors.
struct IsoReport {
  std::vector<std::string> mismatches;
  bool consistent() const { return mismatches.empty(); }
};

inline IsoReport zero_locus_iso_check(const DerivedProblem& dp,
                                      const Amp1Problem& p) {
  IsoReport report;
  std::vector<std::vector<Rational>> expected;
  expected.reserve(dp.intersections.size());
  for (const IntersectionPoint& pt : dp.intersections) {
    std::vector<Rational> z = pt.x_params;
    z.insert(z.end(), pt.y_params.begin(), pt.y_params.end());
    expected.push_back(std::move(z));
  }
  auto point_str = [](const std::vector<Rational>& z) {
    std::string out = "(";
    for (size_t i = 0; i < z.size(); ++i)
      out += (i ? "," : "") + z[i].str();
    return out + ")";
  };
  for (size_t t = 0; t < expected.size(); ++t) {
    if (std::find(p.zero_points.begin(), p.zero_points.end(), expected[t]) ==
        p.zero_points.end())
      report.mismatches.push_back("intersection #" + std::to_string(t + 1) +
                                  " " + point_str(expected[t]) +
                                  " has no matching zero point");
    else if (!p.section.vanishes_at(expected[t]))
      report.mismatches.push_back("intersection #" + std::to_string(t + 1) +
                                  " does not annihilate the section");
  }
  for (size_t t = 0; t < p.zero_points.size(); ++t)
    if (std::find(expected.begin(), expected.end(), p.zero_points[t]) ==
        expected.end())
      report.mismatches.push_back("zero point #" + std::to_string(t + 1) + " " +
                                  point_str(p.zero_points[t]) +
                                  " does not arise from a declared intersection");
  return report;
}

}  // namespace amp1
