#pragma once

// Command-line front end. run_scenario() parses argv-style arguments,
// dispatches to the library, and writes the report to --out or `out`.
// Exit status: 0 ok, 1 I/O / parse / usage, 2 domain error.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <exception>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "infomono/infomono.hpp"
#include "infomono/io.hpp"

namespace infomono::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitDomain = 2;

struct ScenarioConfig {
  std::string command;
  // global
  std::optional<double> tol;
  std::uint64_t seed = 42;
  std::string out_path;
  std::string format;
  // evolve / check
  std::string chain_path;
  std::string init = "uniform";
  std::string init2;
  std::string family_path;
  std::string functional;
  std::string q_spec;
  std::size_t steps = 50;
  double dt = 0.01;
  double horizon = 1.0;
  double bhattacharyya_s = 0.5;
  // measure
  std::string what;
  std::string p1, p2;
  std::size_t n = 0;
  std::string joint_path;
  std::size_t trials = 2000;
  bool perspective = false;
  double box_lo = 1e-3, box_hi = 10.0;
  // bounds
  int K = 3, L = 2;
  GridSpec grid;
  bool linear_grid = false;
  // chain
  std::string kind;
  double lambda = 1.0, mu = 2.0;
  int N = 5;
};

namespace detail {

/// `uniform`, `delta<i>`, or a distribution file.
inline Distribution resolve_init(const std::string& token, std::size_t n) {
  if (token == "uniform") {
    if (n == 0) throw IoError("init 'uniform' needs a known state count");
    return Distribution::uniform(n);
  }
  if (token.rfind("delta", 0) == 0 && token.size() > 5 &&
      std::all_of(token.begin() + 5, token.end(), [](unsigned char c) { return std::isdigit(c); })) {
    if (n == 0) throw IoError("init '" + token + "' needs a known state count");
    std::size_t i = 0;
    const auto* first = token.data() + 5;
    const auto* last = token.data() + token.size();
    if (std::from_chars(first, last, i).ec != std::errc{}) throw IoError("bad state index in '" + token + "'");
    if (i >= n) throw Error(Errc::BadParams, "point mass outside the state space", "state", static_cast<double>(i));
    return Distribution::delta(n, i);
  }
  return io::distribution_from_json(io::parse_json(io::read_text_file(token), token), token);
}

inline void emit(const ScenarioConfig& cfg, const std::string& body, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << body;
  } else {
    io::write_text_file(cfg.out_path, body);
  }
}

inline std::string format_or(const ScenarioConfig& cfg, const char* fallback) {
  const std::string f = cfg.format.empty() ? fallback : cfg.format;
  if (f != "csv" && f != "json") throw IoError("--format must be csv or json");
  return f;
}

/// A malformed --q is a usage error, reported like any other parse failure.
inline ConvexFunction parse_q(const std::string& spec) {
  try {
    return parse_q_spec(spec);
  } catch (const Error& e) {
    throw IoError(std::string("bad --q: ") + e.what());
  }
}

inline std::optional<ConvexFunction> q_or_none(const std::string& spec) {
  if (spec.empty()) return std::nullopt;
  return parse_q(spec);
}

inline int run_evolve(const ScenarioConfig& cfg, std::ostream& out) {
  const auto kind = parse_functional_kind(cfg.functional);
  if (!kind) throw IoError("unknown functional '" + cfg.functional + "'");
  const auto file = io::load_chain(cfg.chain_path);
  const std::size_t n = chain_size(file.chain);
  const auto q = q_or_none(cfg.q_spec);

  TraceInits inits;
  if (*kind == FunctionalKind::v_functional) {
    if (cfg.family_path.empty()) throw IoError("v_functional needs --family");
    inits.family = io::family_from_json(io::parse_json(io::read_text_file(cfg.family_path), cfg.family_path),
                                        cfg.family_path);
  } else {
    inits.p0 = resolve_init(cfg.init, n);
  }
  if (*kind == FunctionalKind::kl_pair) {
    if (cfg.init2.empty()) throw IoError("kl_pair needs --init2");
    inits.p0_prime = resolve_init(cfg.init2, n);
  }
  TraceOptions opts;
  opts.bhattacharyya_s = cfg.bhattacharyya_s;
  if (cfg.tol) opts.stationary_tol = *cfg.tol;

  const TimeSeries series =
      std::holds_alternative<StochasticMatrix>(file.chain)
          ? trace_functional(*kind, std::get<StochasticMatrix>(file.chain), q, inits, cfg.steps, opts)
          : trace_functional(*kind, std::get<RateMatrix>(file.chain), q, inits, cfg.dt, cfg.horizon, opts);

  if (format_or(cfg, "csv") == "csv") {
    emit(cfg, io::trace_csv(series), out);
  } else {
    io::ordered_json j;
    j["functional"] = std::string(to_string(*kind));
    j["q"] = q ? q->name() : std::string();
    if (!series.empty()) j["verdict"] = io::verdict_to_json(verdict(series, expected_direction(*kind), cfg.tol.value_or(kVerdictTol)));
    io::ordered_json t = io::ordered_json::array(), v = io::ordered_json::array();
    for (const auto& p : series) {
      t.push_back(p.t);
      v.push_back(p.value);
    }
    j["t"] = std::move(t);
    j["value"] = std::move(v);
    emit(cfg, io::dump(j, io::kReportDigits), out);
  }
  return kExitOk;
}

inline int run_check(const ScenarioConfig& cfg, std::ostream& out) {
  const auto file = io::load_chain(cfg.chain_path);
  const Distribution pi = stationary_distribution(file.chain);
  const BalanceReport r = check_balance(file.chain, pi, cfg.tol.value_or(1e-9));
  if (format_or(cfg, "json") == "csv") {
    std::string body = "quantity,value\n";
    auto row = [&](const std::string& k, const std::string& v) { body += k + "," + v + "\n"; };
    row("is_doubly_stochastic", r.is_doubly_stochastic ? "true" : "false");
    row("satisfies_global_balance", r.satisfies_global_balance ? "true" : "false");
    row("satisfies_detailed_balance", r.satisfies_detailed_balance ? "true" : "false");
    row("max_residual", io::format_double(r.max_residual, io::kReportDigits));
    row("global_residual", io::format_double(r.global_residual, io::kReportDigits));
    row("detailed_residual", io::format_double(r.detailed_residual, io::kReportDigits));
    for (std::size_t x = 0; x < pi.size(); ++x) row("pi[" + std::to_string(x) + "]", io::format_double(pi[x], io::kReportDigits));
    emit(cfg, body, out);
    return kExitOk;
  }
  io::ordered_json j = io::balance_to_json(r);
  j["stationary"] = pi.probs();
  if (const auto* p = std::get_if<StochasticMatrix>(&file.chain)) {
    j["backward_matrix"] = io::detail::matrix_json(backward_matrix(*p, pi).matrix());
  }
  emit(cfg, io::dump(j, io::kReportDigits), out);
  return kExitOk;
}

inline int run_measure(const ScenarioConfig& cfg, std::ostream& out) {
  if (format_or(cfg, "json") != "json") throw IoError("measure writes JSON only");
  io::ordered_json j;
  j["measure"] = cfg.what;

  if (cfg.what == "convexity") {
    if (cfg.q_spec.empty()) throw IoError("convexity needs --q");
    const ConvexFunction q = parse_q(cfg.q_spec);
    const std::size_t dim = cfg.perspective ? q.arity() + 1 : q.arity();
    const std::vector<Interval> box(dim, Interval{cfg.box_lo, cfg.box_hi});
    const ConvexityCheck c = cfg.perspective ? verify_convexity(perspective(q), box, cfg.trials, cfg.seed)
                                             : verify_convexity(q, box, cfg.trials, cfg.seed);
    j["q"] = cfg.perspective ? perspective(q).as_convex().name() : q.name();
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    j["pass"] = c.pass;
    if (c.witness) {
      io::ordered_json w;
      w["a"] = c.witness->a;
      w["b"] = c.witness->b;
      w["lambda"] = c.witness->lambda;
      w["lhs"] = c.witness->lhs;
      w["rhs"] = c.witness->rhs;
      j["witness"] = std::move(w);
    }
    emit(cfg, io::dump(j, io::kReportDigits), out);
    return kExitOk;
  }

  if (cfg.q_spec.empty()) throw IoError("measure needs --q");
  const ConvexFunction q = parse_q(cfg.q_spec);
  j["q"] = q.name();
  double value = 0.0;
  if (cfg.what == "f_divergence") {
    if (cfg.p1.empty() || cfg.p2.empty()) throw IoError("f_divergence needs --p1 and --p2");
    // a file on either side fixes n for a uniform/delta token on the other
    const auto symbolic = [](const std::string& t) { return t == "uniform" || t.rfind("delta", 0) == 0; };
    if (cfg.n == 0 && symbolic(cfg.p1) && !symbolic(cfg.p2)) {
      const Distribution b = resolve_init(cfg.p2, 0);
      value = f_divergence(q, resolve_init(cfg.p1, b.size()), b);
    } else {
      const Distribution a = resolve_init(cfg.p1, cfg.n);
      value = f_divergence(q, a, resolve_init(cfg.p2, cfg.n ? cfg.n : a.size()));
    }
  } else if (cfg.what == "mi" || cfg.what == "lautum" || cfg.what == "zz1975") {
    if (cfg.joint_path.empty()) throw IoError(cfg.what + " needs --joint");
    const auto jf = io::joint_from_json(io::parse_json(io::read_text_file(cfg.joint_path), cfg.joint_path), cfg.joint_path);
    if (cfg.what == "mi") value = generalized_mi_1973(q, jf.joint);
    else if (cfg.what == "lautum") value = lautum_variant(q, jf.joint);
    else value = zz_functional_1975(q, jf.joint, jf.measures);
  } else if (cfg.what == "v") {
    if (cfg.family_path.empty()) throw IoError("v needs --family");
    value = v_functional(q, io::family_from_json(io::parse_json(io::read_text_file(cfg.family_path), cfg.family_path),
                                                 cfg.family_path));
  } else {
    throw IoError("unknown measure '" + cfg.what + "'");
  }
  j["value"] = value;
  emit(cfg, io::dump(j, io::kReportDigits), out);
  return kExitOk;
}

inline int run_bounds(const ScenarioConfig& cfg, std::ostream& out) {
  const ExampleConfig ex(cfg.K, cfg.L);
  GridSpec g = cfg.grid;
  g.log_spaced = !cfg.linear_grid;
  const BoundReport r = optimize_s(ex, g);
  emit(cfg, format_or(cfg, "json") == "csv" ? io::bound_report_csv(r) : io::dump(io::bound_report_to_json(r), io::kReportDigits),
       out);
  return kExitOk;
}

inline int run_chain(const ScenarioConfig& cfg, std::ostream& out) {
  if (format_or(cfg, "json") != "json") throw IoError("chain writes JSON only");
  ChainParams p;
  p.K = cfg.K;
  p.lambda = cfg.lambda;
  p.mu = cfg.mu;
  p.N = cfg.N;
  ChainKind kind;
  if (cfg.kind == "mod_k_walk") kind = ChainKind::mod_k_walk;
  else if (cfg.kind == "cyclic") kind = ChainKind::cyclic;
  else if (cfg.kind == "mm1_truncated") kind = ChainKind::mm1_truncated;
  else throw IoError("unknown chain kind '" + cfg.kind + "'");
  emit(cfg, io::chain_to_string(build_example_chain(kind, p)), out);
  return kExitOk;
}

inline void report_domain_error(const Error& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  if (!e.quantity().empty()) err << "  quantity: " << e.quantity() << "\n";
  if (e.residual()) err << "  residual: " << io::format_double(*e.residual(), io::kReportDigits) << "\n";
}

}  // namespace detail

inline int run_scenario(const ScenarioConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == "evolve") return detail::run_evolve(cfg, out);
    if (cfg.command == "check") return detail::run_check(cfg, out);
    if (cfg.command == "measure") return detail::run_measure(cfg, out);
    if (cfg.command == "bounds") return detail::run_bounds(cfg, out);
    if (cfg.command == "chain") return detail::run_chain(cfg, out);
    err << "error: unknown command '" << cfg.command << "'\n";
    return kExitIo;
  } catch (const Error& e) {
    detail::report_domain_error(e, err);
    return kExitDomain;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
}

/// Parses `args` (without the program name) and runs the scenario.
inline int run_scenario(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  ScenarioConfig cfg;
  CLI::App app{"information functionals over finite Markov chains", "infomono"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--tol", cfg.tol, "tolerance override");
  app.add_option("--seed", cfg.seed, "seed for randomized checks")->capture_default_str();
  app.add_option("--out", cfg.out_path, "output file (default: stdout)");
  app.add_option("--format", cfg.format, "csv or json");

  auto* evolve = app.add_subcommand("evolve", "trace a functional along a chain");
  evolve->add_option("--chain", cfg.chain_path)->required();
  evolve->add_option("--functional", cfg.functional)->required();
  evolve->add_option("--init", cfg.init, "uniform, delta<i>, or a distribution file")->capture_default_str();
  evolve->add_option("--init2", cfg.init2, "second initial law for kl_pair");
  evolve->add_option("--family", cfg.family_path, "measure family file for v_functional");
  evolve->add_option("--q", cfg.q_spec, "convex function spec");
  evolve->add_option("--steps", cfg.steps)->capture_default_str();
  evolve->add_option("--dt", cfg.dt)->capture_default_str();
  evolve->add_option("--horizon", cfg.horizon)->capture_default_str();
  evolve->add_option("--bhattacharyya-s", cfg.bhattacharyya_s)->capture_default_str();

  auto* check = app.add_subcommand("check", "stationary law and balance diagnostics");
  check->add_option("--chain", cfg.chain_path)->required();

  auto* measure = app.add_subcommand("measure", "evaluate a functional on supplied inputs");
  measure->add_option("--what", cfg.what, "f_divergence, mi, lautum, zz1975, v, convexity")->required();
  measure->add_option("--q", cfg.q_spec);
  measure->add_option("--p1", cfg.p1);
  measure->add_option("--p2", cfg.p2);
  measure->add_option("--n", cfg.n, "state count for init tokens");
  measure->add_option("--joint", cfg.joint_path);
  measure->add_option("--family", cfg.family_path);
  measure->add_option("--trials", cfg.trials)->capture_default_str();
  measure->add_flag("--perspective", cfg.perspective, "check the perspective of Q");
  measure->add_option("--box-lo", cfg.box_lo)->capture_default_str();
  measure->add_option("--box-hi", cfg.box_hi)->capture_default_str();

  auto* bounds = app.add_subcommand("bounds", "distortion lower bounds for the (K, L) example");
  bounds->add_option("--K", cfg.K)->capture_default_str();
  bounds->add_option("--L", cfg.L)->capture_default_str();
  bounds->add_option("--grid-start", cfg.grid.start)->capture_default_str();
  bounds->add_option("--grid-stop", cfg.grid.stop)->capture_default_str();
  bounds->add_option("--grid-points", cfg.grid.points)->capture_default_str();
  bounds->add_flag("--linear", cfg.linear_grid, "linear instead of log spacing");

  auto* chain = app.add_subcommand("chain", "write an example chain file");
  chain->add_option("--kind", cfg.kind, "mod_k_walk, cyclic, mm1_truncated")->required();
  chain->add_option("--K", cfg.K)->capture_default_str();
  chain->add_option("--lambda", cfg.lambda)->capture_default_str();
  chain->add_option("--mu", cfg.mu)->capture_default_str();
  chain->add_option("--N", cfg.N)->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitIo;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return run_scenario(cfg, out, err);
}

}  // namespace infomono::cli
