#pragma once

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "amp1/problem_io.hpp"
#include "amp1/report.hpp"
#include "amp1/verify.hpp"

namespace amp1 {

namespace detail {

struct CliOptions {
  std::string file;
  std::string corpus_dir;
  std::string format = "text";
  std::string route = "closed";
  std::string which = "all";
  bool check_both = false;
  int degree_bound = -1;
  int jet_order = -1;
};

inline Route route_from(const std::string& name) {
  return name == "definitional" ? Route::Definitional : Route::Closed;
}

inline LoadedProblem load_with_overrides(const CliOptions& opt) {
  LoadedProblem lp = load_problem_file(opt.file);
  if (opt.degree_bound >= 0) lp.problem.degree_bound = opt.degree_bound;
  if (opt.jet_order >= 0) lp.problem.jet_order = opt.jet_order;
  return lp;
}

inline int cmd_decide(const CliOptions& opt, std::ostream& out) {
  const LoadedProblem lp = load_with_overrides(opt);
  const Route route = route_from(opt.route);
  const Verdict v = decide(lp.problem, route, opt.check_both);
  out << render_report(decide_report(lp.problem, lp.kind, v, route, opt.check_both),
                       opt.format);
  return v.exit_code();
}

inline int cmd_cocycle(const CliOptions& opt, std::ostream& out) {
  const LoadedProblem lp = load_with_overrides(opt);
  const Route route = route_from(opt.route);
  Cocycle coc = cocycle(lp.problem, route);
  if (opt.check_both) {
    const Route other =
        route == Route::Closed ? Route::Definitional : Route::Closed;
    if (coc != cocycle(lp.problem, other))
      throw internal_error("cocycle routes disagree");
  }
  out << render_report(
      cocycle_report(lp.problem, lp.kind, coc, route, opt.check_both),
      opt.format);
  return 0;
}

inline int cmd_operators(const CliOptions& opt, std::ostream& out) {
  const LoadedProblem lp = load_with_overrides(opt);
  const Operators ops = build_operators(lp.problem);
  out << render_report(operators_report(lp.problem, lp.kind, ops, opt.which),
                       opt.format);
  return 0;
}

inline int cmd_clean(const CliOptions& opt, std::ostream& out) {
  const LoadedProblem lp = load_with_overrides(opt);
  CleanVerdict v;
  if (lp.kind == "derived") {
    v = tangent_clean_check(*lp.derived);
  } else if (lp.witness) {
    v = clean_check(lp.problem.section, *lp.witness);
  } else {
    v.kind = CleanVerdict::Kind::Unknown;
    v.reason = "no zero-locus witness in the problem file";
  }
  out << render_report(clean_report(lp.problem, lp.kind, v), opt.format);
  return v.exit_code();
}

inline OJson file_checks_json(const std::string& file,
                              const std::vector<CheckResult>& checks) {
  OJson obj;
  obj["file"] = file;
  obj["checks"] = checks_json(checks);
  obj["all_passed"] = all_passed(checks) ? "true" : "false";
  return obj;
}

inline int cmd_verify(const CliOptions& opt, std::ostream& out) {
  OJson root = report_header("verify");
  bool ok = true;
  if (!opt.corpus_dir.empty()) {
    std::vector<std::string> paths;
    for (const auto& entry :
         std::filesystem::directory_iterator(opt.corpus_dir))
      if (entry.is_regular_file() && entry.path().extension() == ".json")
        paths.push_back(entry.path().string());
    std::sort(paths.begin(), paths.end());
    if (paths.empty())
      throw error(opt.corpus_dir + ": no .json problem files found");
    OJson files = OJson::array();
    for (const auto& path : paths) {
      const std::vector<CheckResult> checks = run_checks(load_problem_file(path));
      ok = ok && all_passed(checks);
      files.push_back(file_checks_json(path, checks));
    }
    root["files"] = files;
  } else {
    const std::vector<CheckResult> checks = run_checks(load_problem_file(opt.file));
    ok = all_passed(checks);
    root["file"] = opt.file;
    root["checks"] = checks_json(checks);
  }
  root["all_passed"] = ok ? "true" : "false";
  out << render_report(root, opt.format);
  return ok ? 0 : 1;
}

}  // namespace detail

/// Runs the command-line interface on an argument list (without the program
/// name). Returns the process exit code; all output goes to `out` / `err`.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"Exact Atiyah-cocycle engine for amplitude +1 dg manifolds"};
  app.require_subcommand(1);
  detail::CliOptions opt;

  const auto add_format = [&opt](CLI::App* cmd) {
    cmd->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
  };
  const auto add_route = [&opt](CLI::App* cmd) {
    cmd->add_option("--route", opt.route, "Cocycle computation route")
        ->check(CLI::IsMember({"closed", "definitional"}));
    cmd->add_flag("--check-both", opt.check_both,
                  "Compute both routes and require agreement");
  };
  const auto add_bounds = [&opt](CLI::App* cmd) {
    cmd->add_option("--degree-bound", opt.degree_bound,
                    "Override the certificate degree bound")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--jet-order", opt.jet_order,
                    "Override the jet truncation order")
        ->check(CLI::NonNegativeNumber);
  };

  CLI::App* decide_cmd = app.add_subcommand(
      "decide", "Semidecide whether the Atiyah class vanishes");
  decide_cmd->add_option("file", opt.file, "Problem file")->required();
  add_bounds(decide_cmd);
  add_route(decide_cmd);
  add_format(decide_cmd);

  CLI::App* cocycle_cmd =
      app.add_subcommand("cocycle", "Print the Atiyah cocycle entries");
  cocycle_cmd->add_option("file", opt.file, "Problem file")->required();
  add_route(cocycle_cmd);
  add_format(cocycle_cmd);

  CLI::App* operators_cmd =
      app.add_subcommand("operators", "Print the coboundary matrices");
  operators_cmd->add_option("file", opt.file, "Problem file")->required();
  operators_cmd->add_option("--which", opt.which, "Which matrix to print")
      ->check(CLI::IsMember({"d1", "d2", "d3", "all"}));
  add_format(operators_cmd);

  CLI::App* clean_cmd = app.add_subcommand(
      "clean", "Run the independent clean-intersection oracle");
  clean_cmd->add_option("file", opt.file, "Problem file")->required();
  add_format(clean_cmd);

  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "Run internal consistency checks on problem files");
  verify_cmd->add_option("file", opt.file, "Problem file");
  verify_cmd->add_option("--corpus", opt.corpus_dir,
                         "Verify every .json file in a directory");
  add_format(verify_cmd);

  std::vector<const char*> argv;
  argv.push_back("amp1");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 64;
  }

  try {
    if (decide_cmd->parsed()) return detail::cmd_decide(opt, out);
    if (cocycle_cmd->parsed()) return detail::cmd_cocycle(opt, out);
    if (operators_cmd->parsed()) return detail::cmd_operators(opt, out);
    if (clean_cmd->parsed()) return detail::cmd_clean(opt, out);
    if (verify_cmd->parsed()) {
      if (opt.file.empty() && opt.corpus_dir.empty()) {
        err << "verify: expected a problem file or --corpus DIR" << std::endl;
        return 64;
      }
      return detail::cmd_verify(opt, out);
    }
    err << "no command given" << std::endl;
    return 64;
  } catch (const internal_error& e) {
    err << "internal error: " << e.what() << std::endl;
    return 70;
  } catch (const error& e) {
    err << "error: " << e.what() << std::endl;
    return 65;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << std::endl;
    return 65;
  }
}

}  // namespace amp1
