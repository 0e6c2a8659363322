#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "amp1/atiyah.hpp"
#include "amp1/clean.hpp"

namespace amp1 {

inline constexpr const char* kEngineVersion = "1.0.0";

/// Reports are built as ordered JSON documents (insertion order is the
/// print order) and rendered either as JSON or as an indented text tree.
/// Every numeric value is a string so output is exact and byte-stable.
using OJson = nlohmann::ordered_json;

namespace detail {

inline void render_text_impl(const OJson& v, const std::string& indent,
                             std::ostream& os);

inline bool is_scalar_array(const OJson& v) {
  for (const auto& item : v)
    if (item.is_object() || item.is_array()) return false;
  return true;
}

inline void render_scalar(const OJson& v, std::ostream& os) {
  if (v.is_string())
    os << v.get<std::string>();
  else
    os << v.dump();
}

inline void render_text_impl(const OJson& v, const std::string& indent,
                             std::ostream& os) {
  if (v.is_object()) {
    for (const auto& item : v.items()) {
      os << indent << item.key() << ":";
      const OJson& val = item.value();
      if (val.is_object() || (val.is_array() && !is_scalar_array(val))) {
        os << "\n";
        render_text_impl(val, indent + "  ", os);
      } else if (val.is_array()) {
        os << " ";
        render_text_impl(val, "", os);
        os << "\n";
      } else {
        os << " ";
        render_scalar(val, os);
        os << "\n";
      }
    }
  } else if (v.is_array()) {
    if (is_scalar_array(v)) {
      os << "[";
      for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        render_scalar(v[i], os);
      }
      os << "]";
    } else {
      for (const auto& item : v) {
        if (item.is_object() || item.is_array()) {
          os << indent << "-\n";
          render_text_impl(item, indent + "  ", os);
        } else {
          os << indent << "- ";
          render_scalar(item, os);
          os << "\n";
        }
      }
    }
  } else {
    os << indent;
    render_scalar(v, os);
    os << "\n";
  }
}

inline OJson point_json(const std::vector<Rational>& point) {
  OJson arr = OJson::array();
  for (const auto& c : point) arr.push_back(c.str());
  return arr;
}

inline OJson poly_list_json(const std::vector<Poly>& polys) {
  OJson arr = OJson::array();
  for (const auto& p : polys) arr.push_back(p.str());
  return arr;
}

}  // namespace detail

/// Renders any report document as an indented text tree. JSON mode is just
/// `report.dump(2)`; both renderings are pure functions of the document.
inline std::string render_text(const OJson& report) {
  std::ostringstream os;
  detail::render_text_impl(report, "", os);
  return os.str();
}

inline std::string render_report(const OJson& report, const std::string& format) {
  if (format == "json") return report.dump(2) + "\n";
  return render_text(report);
}

inline OJson report_header(const std::string& command) {
  OJson root;
  root["engine_version"] = kEngineVersion;
  root["command"] = command;
  return root;
}

inline OJson problem_summary_json(const Amp1Problem& p, const std::string& kind) {
  OJson obj;
  obj["kind"] = kind;
  obj["vars"] = p.vars;
  obj["fiber_rank"] = std::to_string(p.m);
  OJson section = OJson::array();
  for (const auto& comp : p.section.components()) section.push_back(comp.str());
  obj["section"] = section;
  return obj;
}

inline std::string row_label_str(const RowLabel& l) {
  return "(k=" + std::to_string(l.k) + ",i=" + std::to_string(l.i) + ",j=" +
         std::to_string(l.j) + ")";
}

inline OJson certificate_json(const Certificate& cert) {
  OJson obj;
  obj["degree"] = std::to_string(cert.degree);
  obj["d1"] = detail::poly_list_json(cert.d1);
  obj["d2"] = detail::poly_list_json(cert.d2);
  obj["d3"] = detail::poly_list_json(cert.d3);
  return obj;
}

inline OJson verdict_json(const Verdict& v) {
  OJson obj;
  obj["verdict"] = v.kind_str();
  obj["exit_code"] = std::to_string(v.exit_code());
  obj["degree_bound"] = std::to_string(v.degree_bound);
  obj["jet_order"] = std::to_string(v.jet_order);
  if (v.certificate) obj["certificate"] = certificate_json(*v.certificate);
  if (v.witness_jet_order >= 0) {
    OJson w;
    w["point"] = detail::point_json(v.witness_point);
    w["point_index"] = std::to_string(v.witness_point_index);
    w["jet_order"] = std::to_string(v.witness_jet_order);
    obj["witness"] = w;
  }
  return obj;
}

inline OJson decide_report(const Amp1Problem& p, const std::string& kind,
                           const Verdict& v, Route route, bool check_both) {
  OJson root = report_header("decide");
  root["problem"] = problem_summary_json(p, kind);
  root["route"] = check_both
                      ? "both"
                      : (route == Route::Closed ? "closed" : "definitional");
  root["result"] = verdict_json(v);
  return root;
}

inline OJson cocycle_report(const Amp1Problem& p, const std::string& kind,
                            const Cocycle& cocycle, Route route,
                            bool check_both) {
  OJson root = report_header("cocycle");
  root["problem"] = problem_summary_json(p, kind);
  root["route"] = check_both
                      ? "both"
                      : (route == Route::Closed ? "closed" : "definitional");
  OJson entries;
  const RowBasis basis(static_cast<int>(p.n()), p.m);
  for (size_t r = 0; r < cocycle.entries().size(); ++r)
    entries[row_label_str(basis.labels()[r])] = cocycle.entries()[r].str();
  root["entries"] = entries;
  return root;
}

inline OJson matrix_json(const OperatorMatrix& mat) {
  OJson obj;
  obj["name"] = mat.name;
  obj["rows"] = std::to_string(mat.nrows());
  obj["cols"] = std::to_string(mat.ncols());
  OJson row_labels = OJson::array();
  for (const auto& l : mat.row_labels) row_labels.push_back(row_label_str(l));
  obj["row_labels"] = row_labels;
  obj["col_labels"] = mat.col_labels;
  OJson entries = OJson::array();
  for (const auto& row : mat.entries) {
    OJson jrow = OJson::array();
    for (const auto& e : row) jrow.push_back(e.str());
    entries.push_back(jrow);
  }
  obj["entries"] = entries;
  return obj;
}

inline OJson operators_report(const Amp1Problem& p, const std::string& kind,
                              const Operators& ops, const std::string& which) {
  OJson root = report_header("operators");
  root["problem"] = problem_summary_json(p, kind);
  OJson mats = OJson::array();
  if (which == "d1" || which == "all") mats.push_back(matrix_json(ops.d1));
  if (which == "d2" || which == "all") mats.push_back(matrix_json(ops.d2));
  if (which == "d3" || which == "all") mats.push_back(matrix_json(ops.d3));
  root["matrices"] = mats;
  return root;
}

inline OJson clean_verdict_json(const CleanVerdict& v) {
  OJson obj;
  obj["verdict"] = v.kind_str();
  obj["exit_code"] = std::to_string(v.exit_code());
  if (!v.reason.empty()) obj["reason"] = v.reason;
  if (!v.witness_point.empty()) {
    obj["witness_point"] = detail::point_json(v.witness_point);
    obj["claimed_dim"] = std::to_string(v.claimed_dim);
    obj["rank_ds"] = std::to_string(v.rank_ds);
    obj["n"] = std::to_string(v.n);
  }
  if (v.chart_index) obj["chart_index"] = std::to_string(*v.chart_index);
  return obj;
}

inline OJson clean_report(const Amp1Problem& p, const std::string& kind,
                          const CleanVerdict& v) {
  OJson root = report_header("clean");
  root["problem"] = problem_summary_json(p, kind);
  root["result"] = clean_verdict_json(v);
  return root;
}

}  // namespace amp1
