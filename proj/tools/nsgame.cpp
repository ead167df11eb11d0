#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nsg/errors.hpp"
#include "nsg/game.hpp"
#include "nsg/games.hpp"
#include "nsg/mpc.hpp"
#include "nsg/pipeline.hpp"
#include "nsg/report.hpp"
#include "nsg/simplex.hpp"
#include "nsg/value.hpp"
#include "nsg/verifier.hpp"

namespace {

using namespace nsg;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitGuard = 3;
constexpr int kExitError = 1;

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

struct Common {
  bool machine = false;
  int threads = 1;
  RunReport report;
  Timer timer;

  MPCSolveOptions mpc_options() const {
    MPCSolveOptions opt;
    opt.threads = threads;
    return opt;
  }

  void finish(const std::string& human) {
    if (machine) {
      report.set("wall_ms", std::to_string(timer.elapsed_ms()));
      std::cout << report.serialize();
    } else {
      std::cout << human;
    }
  }
};

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_flag("--report", common.machine,
                "emit a machine-readable key=value report");
  cmd->add_option("--threads", common.threads, "solver thread count")
      ->check(CLI::PositiveNumber);
}

Game load_game(const std::string& path, Common& common) {
  common.report.set("input", path);
  common.report.set("digest", file_digest(path));
  return read_game_file(path);
}

Rational parse_rat_arg(const std::string& text, const std::string& flag) {
  auto r = parse_rational(text);
  if (!r) throw CLI::ValidationError(flag, "not a rational: " + text);
  return *r;
}

int run(int argc, char** argv) {
  CLI::App app{"no-signaling value of two-player one-round games"};
  app.require_subcommand(1);

  // value
  auto* value_cmd =
      app.add_subcommand("value", "approximate w_ns within an additive error");
  std::string value_game, value_eps = "0.05";
  Common value_common;
  value_cmd->add_option("game", value_game, "game file")->required();
  value_cmd->add_option("--eps", value_eps, "additive error (rational)");
  add_common(value_cmd, value_common);
  value_cmd->callback([&] {
    auto& c = value_common;
    c.report.set("command", "value");
    Game g = load_game(value_game, c);
    Rational eps = parse_rat_arg(value_eps, "--eps");
    ValueEstimate est = approximate_value(g, eps, c.mpc_options());
    c.report.set("eps", to_fraction_string(eps));
    c.report.set("lower", to_fraction_string(est.lower));
    c.report.set("upper", to_fraction_string(est.upper));
    c.report.set("rounds", std::to_string(est.total_rounds));
    c.finish("w_ns in [" + to_fraction_string(est.lower) + ", " +
             to_fraction_string(est.upper) + "]  (rounds " +
             std::to_string(est.total_rounds) + ")\n");
  });

  // decide
  auto* decide_cmd =
      app.add_subcommand("decide", "promise decision: w_ns <= s or >= c");
  std::string decide_game, decide_s, decide_c;
  Common decide_common;
  decide_cmd->add_option("game", decide_game, "game file")->required();
  decide_cmd->add_option("--s", decide_s, "soundness threshold")->required();
  decide_cmd->add_option("--c", decide_c, "completeness threshold")->required();
  add_common(decide_cmd, decide_common);
  decide_cmd->callback([&] {
    auto& c = decide_common;
    c.report.set("command", "decide");
    Game g = load_game(decide_game, c);
    Verdict v = decide(g, parse_rat_arg(decide_s, "--s"),
                       parse_rat_arg(decide_c, "--c"), c.mpc_options());
    const char* name =
        v.decision == Decision::AtMostS ? "AT_MOST_S" : "AT_LEAST_C";
    c.report.set("s", to_fraction_string(v.s));
    c.report.set("c", to_fraction_string(v.c));
    c.report.set("eps", to_fraction_string(v.epsilon_used));
    c.report.set("verdict", name);
    c.report.set("rounds", std::to_string(v.rounds));
    if (v.certificate)
      c.report.set("certificate_objective",
                   to_fraction_string(v.certificate_objective));
    std::string human = std::string(name) + "\n";
    if (v.certificate)
      human += "certificate objective " +
               to_fraction_string(v.certificate_objective) + "\n";
    c.finish(human);
  });

  // exact
  auto* exact_cmd =
      app.add_subcommand("exact", "exact rational w_ns via the LP oracle");
  std::string exact_game, exact_strategy_out;
  Common exact_common;
  exact_cmd->add_option("game", exact_game, "game file")->required();
  exact_cmd->add_option("-o,--strategy-out", exact_strategy_out,
                        "write an optimal strategy to this file");
  add_common(exact_cmd, exact_common);
  exact_cmd->callback([&] {
    auto& c = exact_common;
    c.report.set("command", "exact");
    Game g = load_game(exact_game, c);
    auto [value, strategy] = exact_value(g);
    if (!exact_strategy_out.empty()) {
      std::ofstream out(exact_strategy_out);
      if (!out) throw Error("cannot write file: " + exact_strategy_out);
      write_strategy(out, strategy);
    }
    c.report.set("value", to_fraction_string(value));
    c.finish(to_fraction_string(value) + "\n");
  });

  // classical
  auto* classical_cmd = app.add_subcommand(
      "classical", "best deterministic local strategy value");
  std::string classical_game;
  Common classical_common;
  classical_cmd->add_option("game", classical_game, "game file")->required();
  add_common(classical_cmd, classical_common);
  classical_cmd->callback([&] {
    auto& c = classical_common;
    c.report.set("command", "classical");
    Game g = load_game(classical_game, c);
    Rational value = classical_value(g);
    c.report.set("value", to_fraction_string(value));
    c.finish(to_fraction_string(value) + "\n");
  });

  // compile
  auto* compile_cmd = app.add_subcommand(
      "compile", "compile a verifier description into a game file");
  std::string compile_in, compile_out, compile_builtin;
  Common compile_common;
  compile_cmd->add_option("spec", compile_in, "verifier spec file");
  compile_cmd
      ->add_option("--builtin", compile_builtin,
                   "use a built-in verifier (chsh, guess, equality)")
      ->check(CLI::IsMember({"chsh", "guess", "equality"}));
  compile_cmd->add_option("-o,--output", compile_out, "output game file")
      ->required();
  add_common(compile_cmd, compile_common);
  compile_cmd->callback([&] {
    auto& c = compile_common;
    c.report.set("command", "compile");
    VerifierSpec spec;
    if (!compile_builtin.empty()) {
      c.report.set("input", "builtin:" + compile_builtin);
      spec = compile_builtin == "chsh"    ? games::chsh_verifier()
             : compile_builtin == "guess" ? games::guess_verifier()
                                          : games::equality_verifier();
    } else if (!compile_in.empty()) {
      c.report.set("input", compile_in);
      c.report.set("digest", file_digest(compile_in));
      spec = read_verifier_file(compile_in);
    } else {
      throw CLI::RequiredError("spec file or --builtin");
    }
    Game g = compile_game(spec);
    std::ofstream out(compile_out);
    if (!out) throw Error("cannot write file: " + compile_out);
    write_game(out, g);
    c.report.set("output", compile_out);
    c.report.set("game_size", std::to_string(game_size(g)));
    c.finish("wrote " + compile_out + " (size " +
             std::to_string(game_size(g)) + ")\n");
  });

  // check-strategy
  auto* check_cmd = app.add_subcommand(
      "check-strategy", "no-signaling check and acceptance probability");
  std::string check_game, check_strategy, check_tol = "0";
  Common check_common;
  check_cmd->add_option("game", check_game, "game file")->required();
  check_cmd->add_option("strategy", check_strategy, "strategy file")
      ->required();
  check_cmd->add_option("--tol", check_tol, "no-signaling tolerance");
  add_common(check_cmd, check_common);
  check_cmd->callback([&] {
    auto& c = check_common;
    c.report.set("command", "check-strategy");
    Game g = load_game(check_game, c);
    Strategy s = read_strategy_file(check_strategy);
    Rational tol = parse_rat_arg(check_tol, "--tol");
    if (!is_valid_strategy(s))
      throw ParseError("strategy rows must be probability distributions");
    SignalingReport sig = check_no_signaling(s, tol);
    Rational acc = acceptance_probability(g, s);
    c.report.set("acceptance", to_fraction_string(acc));
    c.report.set("no_signaling", sig.is_no_signaling ? "true" : "false");
    c.report.set("worst_violation", to_fraction_string(sig.worst_violation));
    std::string human = "acceptance " + to_fraction_string(acc) + "\n";
    human += std::string("no-signaling ") +
             (sig.is_no_signaling ? "yes" : "no") + " (worst violation " +
             to_fraction_string(sig.worst_violation) + ")\n";
    c.finish(human);
  });

  // dump-lp
  auto* dump_cmd =
      app.add_subcommand("dump-lp", "emit a pipeline stage as text");
  std::string dump_game, dump_stage, dump_s = "1/2";
  Common dump_common;
  dump_cmd->add_option("game", dump_game, "game file")->required();
  dump_cmd->add_option("--stage", dump_stage, "pipeline stage")
      ->required()
      ->check(
          CLI::IsMember({"primal", "relaxed", "scaled", "dual", "final", "mpc"}));
  dump_cmd->add_option("--s", dump_s, "objective budget for --stage mpc");
  add_common(dump_cmd, dump_common);
  dump_cmd->callback([&] {
    auto& c = dump_common;
    Game g = load_game(dump_game, c);
    if (dump_stage == "mpc") {
      write_mpc(std::cout, build_mpc_instance(g, parse_rat_arg(dump_s, "--s")));
      return;
    }
    LinearProgram lp = build_primal(g);
    if (dump_stage != "primal") lp = relax_primal(lp, g);
    if (dump_stage == "scaled" || dump_stage == "dual" ||
        dump_stage == "final")
      lp = scale_by_pi(lp, g);
    if (dump_stage == "dual" || dump_stage == "final") lp = dualize(lp, g);
    if (dump_stage == "final") lp = clip_and_complement(lp, g);
    write_lp(std::cout, lp);
  });

  // solve-mpc
  auto* mpc_cmd = app.add_subcommand(
      "solve-mpc", "approximate a mixed packing/covering instance");
  std::string mpc_file, mpc_eps = "0.1";
  Common mpc_common;
  mpc_cmd->add_option("instance", mpc_file, "MPC instance file")->required();
  mpc_cmd->add_option("--eps", mpc_eps, "approximation parameter");
  add_common(mpc_cmd, mpc_common);
  mpc_cmd->callback([&] {
    auto& c = mpc_common;
    c.report.set("command", "solve-mpc");
    c.report.set("input", mpc_file);
    c.report.set("digest", file_digest(mpc_file));
    MPCInstance inst = read_mpc_file(mpc_file);
    Rational eps = parse_rat_arg(mpc_eps, "--eps");
    MPCOutcome outcome = solve_mpc(inst, eps.get_d(), c.mpc_options());
    c.report.set("eps", to_fraction_string(eps));
    c.report.set("rounds", std::to_string(outcome.rounds));
    if (outcome.kind == MPCKind::Approx) {
      c.report.set("outcome", "APPROX");
      for (int j = 0; j < inst.num_vars; ++j)
        if (outcome.x[j] != 0)
          c.report.set("x[" + std::to_string(j) + "]",
                       to_fraction_string(outcome.x[j]));
      std::string human =
          "APPROX (rounds " + std::to_string(outcome.rounds) + ")\n";
      for (int j = 0; j < inst.num_vars; ++j)
        if (outcome.x[j] != 0)
          human += "x[" + std::to_string(j) + "] = " +
                   to_fraction_string(outcome.x[j]) + "\n";
      c.finish(human);
    } else {
      c.report.set("outcome", "INFEASIBLE");
      c.finish("INFEASIBLE (rounds " + std::to_string(outcome.rounds) +
               ")\n");
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  } catch (const TooLargeForExact& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGuard;
  } catch (const EnumerationTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGuard;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
