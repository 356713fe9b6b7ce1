// Command-line front end: analyze bipartite state files, convert between
// states and channels in both directions, emit the built-in families, and run
// the verification suite. All file formats are JSON; see the project README.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qbec/qbec.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;  // validation / domain failures
constexpr int kExitParse = 2;   // I/O and parse failures

void print_matrix(const qbec::ComplexMatrix& m, const char* indent) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::string line = indent;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%12.6g%+.6gi", m(i, j).real(), m(i, j).imag());
      line += buf;
      if (j + 1 < m.cols()) line += "  ";
    }
    std::puts(line.c_str());
  }
}

void emit_json(const nlohmann::json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << '\n';
  else
    qbec::write_json_file(out_path, j);
}

int cmd_analyze(const std::string& path, double tolerance, bool as_json) {
  const qbec::BipartiteState s = qbec::read_state(path);
  qbec::validate_state(s, tolerance);
  const qbec::AnalysisReport report = qbec::analyze(s, tolerance);
  if (as_json) {
    std::cout << qbec::report_to_json(report).dump(2) << '\n';
    return kExitOk;
  }
  std::printf("state %zu x %zu (%s)\n", s.dim_a, s.dim_b, path.c_str());
  std::printf("  trace                 %.12g\n", report.trace);
  std::printf("  min eigenvalue        %.6e\n", report.min_eigenvalue);
  std::printf("  pt min eigenvalue     %.6e\n", report.pt_min_eigenvalue);
  std::printf("  negativity            %.6e\n", report.negativity);
  if (std::isfinite(report.realignment_value))
    std::printf("  realignment value     %.12g\n", report.realignment_value);
  else
    std::printf("  realignment value     n/a (dim_a != dim_b)\n");
  std::printf("  verdict               %s\n", qbec::to_string(report.verdict).c_str());
  std::printf("  reduction A:\n");
  print_matrix(report.reduction_a, "    ");
  std::printf("  reduction B:\n");
  print_matrix(report.reduction_b, "    ");
  return kExitOk;
}

int cmd_state_to_channel(const std::string& path, const std::string& side, double tolerance,
                         double cutoff, const std::string& out_path) {
  const qbec::BipartiteState s = qbec::read_state(path);
  qbec::validate_state(s, tolerance);
  const bool side_a = (side == "A" || side == "a");
  const qbec::KrausChannel ch =
      side_a ? qbec::be_channel_a(s, cutoff) : qbec::be_channel_b(s, cutoff);
  const std::size_t full_dim = side_a ? s.dim_a : s.dim_b;
  if (ch.dim_in < full_dim)
    std::fprintf(stderr,
                 "warning: reduction %s has rank %zu < %zu; the channel acts on that support only\n",
                 side_a ? "A" : "B", ch.dim_in, full_dim);
  const qbec::ChannelVerification ver = qbec::verify(ch, tolerance);
  std::fprintf(stderr, "channel %zu -> %zu with %zu Kraus operators\n", ch.dim_in, ch.dim_out,
               ch.kraus.size());
  std::fprintf(stderr, "  cp: %s (choi min eigenvalue %.3e)\n", ver.cp ? "yes" : "no",
               ver.choi_min_eig);
  std::fprintf(stderr, "  tp: %s (defect %.3e)\n", ver.tp ? "yes" : "no", ver.tp_defect);
  if (!ver.cp || !ver.tp) {
    std::fprintf(stderr, "error: channel verification failed beyond tolerance %.3e\n", tolerance);
    return kExitDomain;
  }
  emit_json(qbec::channel_to_json(ch), out_path);
  return kExitOk;
}

int cmd_channel_to_state(const std::string& path, double tolerance, const std::string& out_path) {
  const qbec::KrausChannel ch = qbec::read_channel(path);
  const qbec::ChoiState c = qbec::choi(ch);
  const double trace = c.rho.trace().real();
  if (std::abs(trace - 1.0) > tolerance)
    std::fprintf(stderr,
                 "warning: channel is not trace-preserving; Choi state has trace %.12g != 1\n",
                 trace);
  emit_json(qbec::state_to_json(qbec::as_bipartite(c)), out_path);
  return kExitOk;
}

int cmd_example(const std::string& name, double param, const std::string& out_path) {
  nlohmann::json j;
  if (name == "sigma-alpha")
    j = qbec::state_to_json(qbec::sigma_alpha(param));
  else if (name == "channel-alpha")
    j = qbec::channel_to_json(qbec::channel_alpha(param));
  else if (name == "rho-a")
    j = qbec::state_to_json(qbec::rho_a(param));
  else if (name == "channel-a")
    j = qbec::channel_to_json(qbec::channel_a_closed_form(param));
  emit_json(j, out_path);
  return kExitOk;
}

int cmd_verify(const qbec::CheckOptions& options, bool as_json) {
  const std::vector<qbec::CheckResult> results = qbec::run_selfcheck(options);
  const bool ok = qbec::all_passed(results);
  if (as_json) {
    nlohmann::json rows = nlohmann::json::array();
    for (const qbec::CheckResult& r : results)
      rows.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    std::cout << nlohmann::json{{"checks", rows}, {"all_passed", ok}}.dump(2) << '\n';
  } else {
    int passed = 0;
    for (const qbec::CheckResult& r : results) {
      std::printf("[%s] %-36s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
      if (r.pass) ++passed;
    }
    std::printf("%d of %zu checks passed\n", passed, results.size());
  }
  return ok ? kExitOk : kExitDomain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bipartite states, quantum channels, and the construction of "
               "entanglement-binding channels from PPT entangled states"};
  app.require_subcommand(1);

  double tolerance = 1e-10;
  double cutoff = 1e-10;
  std::uint64_t seed = 42;
  bool as_json = false;
  std::string in_path, out_path, side = "A", example_name;
  double param = 0.0;

  auto add_tolerance = [&](CLI::App* cmd) {
    return cmd->add_option("--tolerance", tolerance, "Numerical tolerance for checks and verdicts")
        ->envname("QBEC_TOLERANCE")
        ->capture_default_str();
  };
  auto add_cutoff = [&](CLI::App* cmd) {
    cmd->add_option("--cutoff", cutoff, "Relative eigenvalue cutoff defining supports")
        ->capture_default_str();
  };
  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out,-o", out_path, "Output file (stdout when omitted)");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "Analyze a state file: spectrum, reductions, "
                                                    "entanglement witnesses, verdict");
  analyze->add_option("file", in_path, "State file (JSON)")->required();
  add_tolerance(analyze);
  analyze->add_flag("--json", as_json, "Emit the report as a JSON object");

  CLI::App* s2c = app.add_subcommand("state-to-channel",
                                     "Build the trace-preserving channel whose Choi state is the "
                                     "filtered input state");
  s2c->add_option("file", in_path, "State file (JSON)")->required();
  s2c->add_option("--side", side, "Which reduction to filter")
      ->check(CLI::IsMember({"A", "B"}))
      ->capture_default_str();
  add_tolerance(s2c);
  add_cutoff(s2c);
  add_out(s2c);

  CLI::App* c2s = app.add_subcommand("channel-to-state",
                                     "Compute the Choi state of a channel file");
  c2s->add_option("file", in_path, "Channel file (JSON)")->required();
  add_tolerance(c2s);
  add_out(c2s);

  CLI::App* example = app.add_subcommand("example", "Write one of the built-in families");
  example->add_option("name", example_name, "Family name")
      ->check(CLI::IsMember({"sigma-alpha", "channel-alpha", "rho-a", "channel-a"}))
      ->required();
  example->add_option("param", param, "Family parameter")->required();
  add_out(example);

  CLI::App* verify = app.add_subcommand("verify", "Run the full verification suite");
  CLI::Option* verify_tol = add_tolerance(verify);
  add_cutoff(verify);
  verify->add_option("--seed", seed, "Seed for the randomized sweeps")->capture_default_str();
  verify->add_flag("--json", as_json, "Emit the results as a JSON object");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(in_path, tolerance, as_json);
    if (s2c->parsed()) return cmd_state_to_channel(in_path, side, tolerance, cutoff, out_path);
    if (c2s->parsed()) return cmd_channel_to_state(in_path, tolerance, out_path);
    if (example->parsed()) return cmd_example(example_name, param, out_path);
    if (verify->parsed()) {
      qbec::CheckOptions options;
      options.cutoff = cutoff;
      options.seed = seed;
      if (verify_tol->count() > 0) options.tolerance_override = tolerance;
      return cmd_verify(options, as_json);
    }
  } catch (const qbec::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitParse;
  } catch (const qbec::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDomain;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDomain;
  }
  return kExitOk;
}
