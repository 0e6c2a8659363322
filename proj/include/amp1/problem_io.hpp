#pragma once

#include <cctype>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "amp1/atiyah.hpp"
#include "amp1/clean.hpp"
#include "amp1/derived.hpp"
#include "amp1/poly_parser.hpp"

namespace amp1 {

/// A parsed problem file. Both kinds carry a ready-to-decide problem;
/// the derived kind additionally keeps the construction data, the amp1
/// kind the zero-locus witness when the file supplies one.
struct LoadedProblem {
  std::string kind;
  Amp1Problem problem;
  std::optional<ZeroLocusWitness> witness;
  std::optional<DerivedProblem> derived;
};

namespace detail {

using Json = nlohmann::json;

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
  throw error(where + ": " + what);
}

inline void expect_object(const Json& v, const std::string& where) {
  if (!v.is_object()) fail(where, "expected an object");
}

inline void expect_keys(const Json& obj, const std::set<std::string>& allowed,
                        const std::string& where) {
  for (const auto& item : obj.items())
    if (allowed.find(item.key()) == allowed.end())
      fail(where, "unknown key '" + item.key() + "'");
}

inline const Json& require(const Json& obj, const std::string& key,
                           const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where, "missing key '" + key + "'");
  return *it;
}

inline std::string get_string(const Json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected a string");
  return v.get<std::string>();
}

/// All numeric leaves are strings in the exact-rational grammar; host
/// float parsing never runs.
inline Rational get_rational(const Json& v, const std::string& where) {
  if (!v.is_string())
    fail(where, "numbers must be written as strings, e.g. \"3\" or \"-1/2\"");
  try {
    return Rational::parse(v.get<std::string>());
  } catch (const error& e) {
    fail(where, e.what());
  }
}

inline int get_int(const Json& v, const std::string& where) {
  const Rational r = get_rational(v, where);
  if (!r.is_integer()) fail(where, "expected an integer");
  const auto wide = r.to_int();
  if (wide < -1000000 || wide > 1000000) fail(where, "integer out of range");
  return static_cast<int>(wide);
}

inline bool get_bool(const Json& v, const std::string& where) {
  if (!v.is_boolean()) fail(where, "expected true or false");
  return v.get<bool>();
}

inline std::vector<Rational> get_point(const Json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of rational strings");
  std::vector<Rational> out;
  out.reserve(v.size());
  for (size_t i = 0; i < v.size(); ++i)
    out.push_back(get_rational(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

inline std::vector<std::string> get_var_list(const Json& v,
                                             const std::string& where,
                                             bool allow_empty = false) {
  if (!v.is_array()) fail(where, "expected an array of variable names");
  if (v.empty() && !allow_empty) fail(where, "must not be empty");
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (size_t i = 0; i < v.size(); ++i) {
    const std::string name =
        get_string(v[i], where + "[" + std::to_string(i) + "]");
    if (!valid_identifier(name))
      fail(where, "'" + name + "' is not a valid variable name");
    if (!seen.insert(name).second) fail(where, "duplicate variable '" + name + "'");
    out.push_back(name);
  }
  return out;
}

inline Poly get_poly(const Json& v, const std::vector<std::string>& vars,
                     const std::string& where) {
  const std::string text = get_string(v, where);
  try {
    return parse_poly(text, vars);
  } catch (const parse_error& e) {
    fail(where, e.what());
  }
}

inline std::vector<Poly> get_poly_list(const Json& v,
                                       const std::vector<std::string>& vars,
                                       const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of expression strings");
  std::vector<Poly> out;
  out.reserve(v.size());
  for (size_t i = 0; i < v.size(); ++i)
    out.push_back(get_poly(v[i], vars, where + "[" + std::to_string(i) + "]"));
  return out;
}

/// Sparse connection component: an object from 1-based index tuples like
/// "1,2,1" to expression strings; unlisted entries are zero.
inline void fill_sparse(const Json& obj, const std::vector<std::string>& vars,
                        const std::vector<size_t>& dims, const std::string& where,
                        const std::function<Poly&(const std::vector<size_t>&)>& slot) {
  expect_object(obj, where);
  for (const auto& item : obj.items()) {
    const std::string key_where = where + "[\"" + item.key() + "\"]";
    std::vector<size_t> idx;
    std::stringstream ss(item.key());
    std::string part;
    while (std::getline(ss, part, ','))
      idx.push_back(static_cast<size_t>(get_int(Json(part), key_where)));
    if (idx.size() != dims.size())
      fail(key_where, "expected " + std::to_string(dims.size()) + " indices");
    for (size_t d = 0; d < dims.size(); ++d) {
      if (idx[d] < 1 || idx[d] > dims[d]) fail(key_where, "index out of range");
      --idx[d];
    }
    slot(idx) = get_poly(item.value(), vars, key_where);
  }
}

inline ConnectionTriple get_connection(const Json& v,
                                       const std::vector<std::string>& vars,
                                       int m, const std::string& where) {
  expect_object(v, where);
  expect_keys(v, {"gamma_m", "gamma_e", "beta"}, where);
  const size_t n = vars.size();
  const size_t mm = static_cast<size_t>(m);
  ConnectionTriple trivial = ConnectionTriple::trivial(vars, m);
  ConnectionTriple::Poly3 gm = trivial.gamma_m();
  ConnectionTriple::Poly3 ge = trivial.gamma_e();
  ConnectionTriple::Poly4 beta = trivial.beta();
  if (v.contains("gamma_m"))
    fill_sparse(v["gamma_m"], vars, {n, n, n}, where + ".gamma_m",
                [&](const std::vector<size_t>& i) -> Poly& {
                  return gm[i[0]][i[1]][i[2]];
                });
  if (v.contains("gamma_e"))
    fill_sparse(v["gamma_e"], vars, {n, mm, mm}, where + ".gamma_e",
                [&](const std::vector<size_t>& i) -> Poly& {
                  return ge[i[0]][i[1]][i[2]];
                });
  if (v.contains("beta"))
    fill_sparse(v["beta"], vars, {n, n, mm, mm}, where + ".beta",
                [&](const std::vector<size_t>& i) -> Poly& {
                  return beta[i[0]][i[1]][i[2]][i[3]];
                });
  return ConnectionTriple(vars, m, std::move(gm), std::move(ge), std::move(beta));
}

inline ZeroLocusChart get_chart(const Json& v, size_t n, const std::string& where) {
  expect_object(v, where);
  expect_keys(v, {"base_point", "param_vars", "param_map", "param_point",
                  "claimed_dim"},
              where);
  ZeroLocusChart chart;
  chart.base_point = get_point(require(v, "base_point", where), where + ".base_point");
  chart.param_vars =
      get_var_list(require(v, "param_vars", where), where + ".param_vars",
                   /*allow_empty=*/true);
  chart.param_map = get_poly_list(require(v, "param_map", where), chart.param_vars,
                                  where + ".param_map");
  chart.param_point =
      get_point(require(v, "param_point", where), where + ".param_point");
  chart.claimed_dim = get_int(require(v, "claimed_dim", where), where + ".claimed_dim");
  if (chart.base_point.size() != n)
    fail(where + ".base_point", "expected " + std::to_string(n) + " coordinates");
  return chart;
}

inline LoadedProblem parse_amp1_kind(const Json& root, const std::string& origin) {
  expect_keys(root,
              {"kind", "vars", "fiber_rank", "section", "points", "zero_locus",
               "connection", "degree_bound", "jet_order"},
              origin);
  const std::vector<std::string> vars =
      get_var_list(require(root, "vars", origin), origin + ".vars");
  const int m = get_int(require(root, "fiber_rank", origin), origin + ".fiber_rank");
  if (m < 0) fail(origin + ".fiber_rank", "must be >= 0");
  const std::vector<Poly> section =
      get_poly_list(require(root, "section", origin), vars, origin + ".section");
  if (section.size() != static_cast<size_t>(m))
    fail(origin + ".section",
         "expected " + std::to_string(m) + " components (fiber_rank)");

  std::vector<std::vector<Rational>> points;
  if (root.contains("points")) {
    const Json& pv = root["points"];
    if (!pv.is_array()) fail(origin + ".points", "expected an array of points");
    for (size_t i = 0; i < pv.size(); ++i)
      points.push_back(
          get_point(pv[i], origin + ".points[" + std::to_string(i) + "]"));
  }

  std::optional<ConnectionTriple> connection;
  if (root.contains("connection"))
    connection = get_connection(root["connection"], vars, m, origin + ".connection");

  std::optional<int> degree_bound, jet_order;
  if (root.contains("degree_bound")) {
    degree_bound = get_int(root["degree_bound"], origin + ".degree_bound");
    if (*degree_bound < 0) fail(origin + ".degree_bound", "must be >= 0");
  }
  if (root.contains("jet_order")) {
    jet_order = get_int(root["jet_order"], origin + ".jet_order");
    if (*jet_order < 0) fail(origin + ".jet_order", "must be >= 0");
  }

  LoadedProblem out;
  out.kind = "amp1";
  out.problem = make_problem(vars, section, points, connection, degree_bound,
                             jet_order);

  if (root.contains("zero_locus")) {
    const Json& zl = root["zero_locus"];
    const std::string where = origin + ".zero_locus";
    expect_object(zl, where);
    expect_keys(zl, {"charts", "declared_singular"}, where);
    ZeroLocusWitness w;
    w.points = points;
    if (zl.contains("declared_singular"))
      w.declared_singular =
          get_bool(zl["declared_singular"], where + ".declared_singular");
    const Json& charts = require(zl, "charts", where);
    if (!charts.is_array()) fail(where + ".charts", "expected an array");
    for (size_t c = 0; c < charts.size(); ++c)
      w.charts.push_back(get_chart(
          charts[c], vars.size(), where + ".charts[" + std::to_string(c) + "]"));
    out.witness = std::move(w);
  }
  return out;
}

inline SubmanifoldParam get_submanifold(const Json& v, int ambient_dim,
                                        const std::string& where) {
  expect_object(v, where);
  expect_keys(v, {"param_vars", "map"}, where);
  SubmanifoldParam sub;
  sub.ambient_dim = ambient_dim;
  sub.param_vars =
      get_var_list(require(v, "param_vars", where), where + ".param_vars");
  sub.map = get_poly_list(require(v, "map", where), sub.param_vars, where + ".map");
  return sub;
}

inline LoadedProblem parse_derived_kind(const Json& root, const std::string& origin) {
  expect_keys(root,
              {"kind", "ambient_dim", "X", "Y", "intersections", "degree_bound",
               "jet_order"},
              origin);
  const int d = get_int(require(root, "ambient_dim", origin), origin + ".ambient_dim");
  DerivedProblem dp;
  dp.x = get_submanifold(require(root, "X", origin), d, origin + ".X");
  dp.y = get_submanifold(require(root, "Y", origin), d, origin + ".Y");
  if (root.contains("intersections")) {
    const Json& iv = root["intersections"];
    if (!iv.is_array()) fail(origin + ".intersections", "expected an array");
    for (size_t t = 0; t < iv.size(); ++t) {
      const std::string where = origin + ".intersections[" + std::to_string(t) + "]";
      const Json& item = iv[t];
      expect_object(item, where);
      expect_keys(item, {"x_params", "y_params", "claimed_dim"}, where);
      IntersectionPoint pt;
      pt.x_params = get_point(require(item, "x_params", where), where + ".x_params");
      pt.y_params = get_point(require(item, "y_params", where), where + ".y_params");
      pt.claimed_dim =
          get_int(require(item, "claimed_dim", where), where + ".claimed_dim");
      dp.intersections.push_back(std::move(pt));
    }
  }

  std::optional<int> degree_bound, jet_order;
  if (root.contains("degree_bound")) {
    degree_bound = get_int(root["degree_bound"], origin + ".degree_bound");
    if (*degree_bound < 0) fail(origin + ".degree_bound", "must be >= 0");
  }
  if (root.contains("jet_order")) {
    jet_order = get_int(root["jet_order"], origin + ".jet_order");
    if (*jet_order < 0) fail(origin + ".jet_order", "must be >= 0");
  }

  LoadedProblem out;
  out.kind = "derived";
  out.problem = build_amp1(dp, degree_bound, jet_order);
  out.derived = std::move(dp);
  return out;
}

}  // namespace detail

/// Parses a problem file from text. `origin` names the source (typically
/// the path) and prefixes every diagnostic.
inline LoadedProblem parse_problem_text(const std::string& text,
                                        const std::string& origin) {
  detail::Json root;
  try {
    root = detail::Json::parse(text);
  } catch (const detail::Json::parse_error& e) {
    throw error(origin + ": " + e.what());
  }
  detail::expect_object(root, origin);
  const std::string kind =
      detail::get_string(detail::require(root, "kind", origin), origin + ".kind");
  if (kind == "amp1") return detail::parse_amp1_kind(root, origin);
  if (kind == "derived") return detail::parse_derived_kind(root, origin);
  detail::fail(origin + ".kind", "must be \"amp1\" or \"derived\"");
}

inline LoadedProblem load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(path + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_problem_text(buffer.str(), path);
}

}  // namespace amp1
