#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "amp1/problem_io.hpp"
#include "amp1/report.hpp"

namespace amp1 {

/// One invariant check on a loaded problem. `status` is "pass", "fail" or
/// "skip"; `detail` says what was established (or why it could not be).
struct CheckResult {
  std::string name;
  std::string status;
  std::string detail;
};

inline bool all_passed(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks)
    if (c.status == "fail") return false;
  return true;
}

inline OJson checks_json(const std::vector<CheckResult>& checks) {
  OJson arr = OJson::array();
  for (const auto& c : checks) {
    OJson obj;
    obj["name"] = c.name;
    obj["status"] = c.status;
    obj["detail"] = c.detail;
    arr.push_back(obj);
  }
  return arr;
}

namespace detail {

inline CheckResult check_pass(std::string name, std::string detail) {
  return {std::move(name), "pass", std::move(detail)};
}
inline CheckResult check_fail(std::string name, std::string detail) {
  return {std::move(name), "fail", std::move(detail)};
}
inline CheckResult check_skip(std::string name, std::string detail) {
  return {std::move(name), "skip", std::move(detail)};
}

inline int connection_degree(const ConnectionTriple& t) {
  int deg = 0;
  const auto bump = [&deg](const Poly& p) {
    if (auto d = p.degree()) deg = std::max(deg, *d);
  };
  for (const auto& a : t.gamma_m())
    for (const auto& b : a)
      for (const auto& c : b) bump(c);
  for (const auto& a : t.gamma_e())
    for (const auto& b : a)
      for (const auto& c : b) bump(c);
  for (const auto& a : t.beta())
    for (const auto& b : a)
      for (const auto& c : b)
        for (const auto& d : c) bump(d);
  return deg;
}

/// A deterministic connection distinct from the trivial one, used to test
/// that verdicts do not depend on the choice of connection. Constant
/// Christoffel data keeps the difference-exactness certificate at low
/// degree, so the search below stays cheap. beta is taken as -R/2, which
/// satisfies the antisymmetry constraint for any gamma_e.
inline ConnectionTriple companion_connection(const std::vector<std::string>& vars,
                                             int m) {
  const size_t n = vars.size();
  const size_t mm = static_cast<size_t>(m);
  ConnectionTriple base = ConnectionTriple::trivial(vars, m);
  ConnectionTriple::Poly3 gm = base.gamma_m();
  ConnectionTriple::Poly3 ge = base.gamma_e();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t c = 0; c < n; ++c)
        gm[i][j][c] = Poly::constant(
            vars, Rational(static_cast<long>((i + j + c) % 3) - 1));
  for (size_t i = 0; i < n; ++i)
    for (size_t a = 0; a < mm; ++a)
      for (size_t k = 0; k < mm; ++k)
        ge[i][a][k] = Poly::constant(
            vars,
            Rational(static_cast<long>(((i + 2) * (a + 1) + 3 * k) % 5) - 2));
  ConnectionTriple::Poly4 beta(
      n, std::vector<std::vector<std::vector<Poly>>>(
             n, std::vector<std::vector<Poly>>(
                    mm, std::vector<Poly>(mm, Poly::zero(vars)))));
  {
    ConnectionTriple flat_beta(vars, m, gm, ge, beta);
    const ConnectionTriple::Poly4 r = curvature(flat_beta);
    const Rational half(1, 2);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        for (size_t a = 0; a < mm; ++a)
          for (size_t k = 0; k < mm; ++k) beta[i][j][a][k] = r[i][j][a][k] * -half;
  }
  return ConnectionTriple(vars, m, std::move(gm), std::move(ge), std::move(beta));
}

inline Cocycle cocycle_difference(const Cocycle& a, const Cocycle& b) {
  Cocycle out(a.vars(), a.basis().m());
  const auto& labels = a.basis().labels();
  for (size_t r = 0; r < labels.size(); ++r)
    out.set_entry(labels[r].i, labels[r].j, labels[r].k,
                  a.entries()[r] - b.entries()[r]);
  return out;
}

inline CheckResult check_q_squared(const Amp1Problem& p) {
  const std::string name = "q-squared";
  if (p.m > 12)
    return check_skip(name, "fiber rank too large to enumerate xi monomials");
  const GradedVectorField q = interior_product(p.section);
  int tested = 0;
  for (unsigned mask = 0; mask < (1u << p.m); ++mask) {
    SuperFunction f = SuperFunction::constant(p.vars, p.m, Rational(1));
    for (int k = 1; k <= p.m; ++k)
      if (mask & (1u << (k - 1))) f = f * SuperFunction::xi(p.vars, p.m, k);
    if (!p.vars.empty() && mask == (1u << p.m) - 1)
      f = SuperFunction::from_poly(Poly::variable(p.vars, 0), p.m) * f;
    if (!apply(q, apply(q, f)).is_zero())
      return check_fail(name, "Q(Q(f)) != 0 on a xi monomial");
    ++tested;
  }
  return check_pass(name, "Q composed with itself annihilates all " +
                              std::to_string(tested) + " xi monomials");
}

inline CheckResult check_route_equality(const Amp1Problem& p) {
  const std::string name = "route-equality";
  const Cocycle closed = cocycle(p, Route::Closed);
  const Cocycle definitional = cocycle(p, Route::Definitional);
  const auto& labels = closed.basis().labels();
  for (size_t r = 0; r < labels.size(); ++r)
    if (closed.entries()[r] != definitional.entries()[r])
      return check_fail(name, "routes disagree at row " +
                                  row_label_str(labels[r]));
  return check_pass(name,
                    "closed-form and bracket cocycles agree on all " +
                        std::to_string(labels.size()) + " rows");
}

inline CheckResult check_connection_independence(const Amp1Problem& p,
                                                 const Operators& ops,
                                                 const Verdict& base_verdict) {
  const std::string name = "connection-independence";
  if (base_verdict.kind == Verdict::Kind::Unknown)
    return check_skip(name, "base verdict is Unknown; verdict comparison "
                            "would only reflect the degree bound");
  Amp1Problem q = p;
  q.connection = companion_connection(p.vars, p.m);
  q.explicit_connection = true;
  const int bound = std::max(
      {p.degree_bound, default_degree_bound(p.section),
       std::max(connection_degree(p.connection),
                connection_degree(q.connection)) +
           2});
  q.degree_bound = bound;
  const Verdict other = decide(q, Route::Closed);
  if (other.kind != base_verdict.kind)
    return check_fail(name, "verdict changed under a different connection: " +
                                base_verdict.kind_str() + " vs " +
                                other.kind_str());
  const Cocycle diff = to_coefficient_vector(
      cocycle_difference(cocycle(p, Route::Closed), cocycle(q, Route::Closed)));
  const auto cert = certificate_search(ops, diff, bound);
  if (!cert)
    return check_fail(name,
                      "cocycle difference for two connections is not exact "
                      "up to degree " +
                          std::to_string(bound));
  return check_pass(name,
                    "verdicts agree and the cocycle difference is exact "
                    "(certificate degree " +
                        std::to_string(cert->degree) + ")");
}

/// `coc` is the coefficient-form cocycle (the form the matrices act on).
inline CheckResult check_decide_replay(const Amp1Problem& p, const Operators& ops,
                                       const Cocycle& coc, const Verdict& v) {
  const std::string name = "decide-replay";
  if (v.kind == Verdict::Kind::Vanishes) {
    const Cocycle replay =
        replay_certificate(ops, *v.certificate, p.vars, p.m);
    if (replay != coc) return check_fail(name, "certificate does not replay");
    return check_pass(name, "certificate of degree " +
                                std::to_string(v.certificate->degree) +
                                " replays to the cocycle exactly");
  }
  if (v.kind == Verdict::Kind::NonVanishing) {
    if (jet_obstruction_feasible(ops, coc, v.witness_point, v.witness_jet_order))
      return check_fail(name, "witness jet system is feasible on replay");
    return check_pass(name, "witness jet obstruction at order " +
                                std::to_string(v.witness_jet_order) +
                                " replays as infeasible");
  }
  return check_skip(name, "verdict is Unknown; nothing to replay");
}

/// `coc` is the coefficient-form cocycle (the form the matrices act on).
inline CheckResult check_jet_monotonicity(const Amp1Problem& p,
                                          const Operators& ops,
                                          const Cocycle& coc, const Verdict& v) {
  const std::string name = "jet-monotonicity";
  if (v.kind != Verdict::Kind::NonVanishing)
    return check_skip(name, "no jet witness to probe");
  for (int o = 0; o < v.witness_jet_order; ++o)
    if (!jet_obstruction_feasible(ops, coc, v.witness_point, o))
      return check_fail(name, "jet system already infeasible below the "
                              "reported witness order");
  for (int o = v.witness_jet_order; o <= v.witness_jet_order + 1; ++o)
    if (jet_obstruction_feasible(ops, coc, v.witness_point, o))
      return check_fail(name, "jet system feasible at order " +
                                  std::to_string(o) +
                                  " despite the witness");
  return check_pass(name, "feasible strictly below order " +
                              std::to_string(v.witness_jet_order) +
                              ", infeasible from there on");
}

inline CheckResult check_theorem_equivalence(const LoadedProblem& lp,
                                             const Verdict& v) {
  const std::string name = "theorem-equivalence";
  if (!lp.witness)
    return check_skip(name, "no zero-locus witness in the problem file");
  CleanVerdict cv;
  try {
    cv = clean_check(lp.problem.section, *lp.witness);
  } catch (const error& e) {
    return check_fail(name, std::string("witness rejected: ") + e.what());
  }
  if (v.kind == Verdict::Kind::Unknown)
    return check_skip(name, "decision procedure returned Unknown");
  if (cv.kind == CleanVerdict::Kind::Unknown)
    return check_skip(name, "zero-locus oracle returned Unknown: " + cv.reason);
  const bool vanishes = v.kind == Verdict::Kind::Vanishes;
  const bool clean = cv.kind == CleanVerdict::Kind::Clean;
  if (vanishes != clean)
    return check_fail(name, "cocycle verdict " + v.kind_str() +
                                " but zero-locus oracle says " + cv.kind_str());
  return check_pass(name, "cocycle verdict " + v.kind_str() +
                              " matches zero-locus oracle " + cv.kind_str());
}

inline CheckResult check_iso_consistency(const LoadedProblem& lp) {
  const std::string name = "iso-consistency";
  const IsoReport report = zero_locus_iso_check(*lp.derived, lp.problem);
  if (!report.consistent()) {
    std::string detail = "mismatch:";
    for (const auto& msg : report.mismatches) detail += " " + msg;
    return check_fail(name, detail);
  }
  return check_pass(name,
                    "declared intersections and zero-locus points correspond "
                    "bijectively");
}

inline CheckResult check_tangent_equivalence(const LoadedProblem& lp,
                                             const Verdict& v) {
  const std::string name = "tangent-equivalence";
  const CleanVerdict cv = tangent_clean_check(*lp.derived);
  if (v.kind == Verdict::Kind::Unknown)
    return check_skip(name, "decision procedure returned Unknown");
  if (cv.kind == CleanVerdict::Kind::Unknown)
    return check_skip(name, "tangent oracle returned Unknown: " + cv.reason);
  const bool vanishes = v.kind == Verdict::Kind::Vanishes;
  const bool clean = cv.kind == CleanVerdict::Kind::Clean;
  if (vanishes != clean)
    return check_fail(name, "cocycle verdict " + v.kind_str() +
                                " but tangent-space oracle says " +
                                cv.kind_str());
  return check_pass(name, "cocycle verdict " + v.kind_str() +
                              " matches tangent-space oracle " + cv.kind_str());
}

}  // namespace detail

/// Runs every applicable invariant check on a loaded problem. A failing
/// check is a soundness bug or a malformed witness, never a property of
/// the instance itself.
inline std::vector<CheckResult> run_checks(const LoadedProblem& lp) {
  using namespace detail;
  const Amp1Problem& p = lp.problem;
  std::vector<CheckResult> out;

  const auto violations = validate(p.connection);
  if (violations.empty()) {
    out.push_back(check_pass("connection-validity",
                             "torsion-free and beta-curvature identities hold"));
  } else {
    const auto& v = violations.front();
    out.push_back(check_fail("connection-validity",
                             v.kind + " violation: " + v.detail));
  }
  out.push_back(check_q_squared(p));

  if (!violations.empty()) {
    for (const char* name :
         {"route-equality", "connection-independence", "decide-replay",
          "jet-monotonicity"})
      out.push_back(check_skip(name, "connection is invalid"));
    if (lp.kind == "derived") {
      out.push_back(check_iso_consistency(lp));
      out.push_back(check_skip("tangent-equivalence", "connection is invalid"));
    } else {
      out.push_back(check_skip("theorem-equivalence", "connection is invalid"));
    }
    return out;
  }

  const Operators ops = build_operators(p);
  const Cocycle coc = to_coefficient_vector(cocycle(p, Route::Closed));
  const Verdict v = decide(p, Route::Closed);

  out.push_back(check_route_equality(p));
  out.push_back(check_connection_independence(p, ops, v));
  out.push_back(check_decide_replay(p, ops, coc, v));
  out.push_back(check_jet_monotonicity(p, ops, coc, v));
  if (lp.kind == "derived") {
    out.push_back(check_iso_consistency(lp));
    out.push_back(check_tangent_equivalence(lp, v));
  } else {
    out.push_back(check_theorem_equivalence(lp, v));
  }
  return out;
}

}  // namespace amp1
