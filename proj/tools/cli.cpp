#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lupi/errors.hpp"
#include "lupi/oracle.hpp"
#include "lupi/polynomial.hpp"
#include "lupi/serialize.hpp"
#include "lupi/solvers.hpp"
#include "lupi/strategy_io.hpp"
#include "lupi/winprob.hpp"
#include "ne_cache.hpp"

namespace lupi::cli {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Rows of a CSV table; header first.
class Csv {
 public:
  explicit Csv(std::initializer_list<std::string> header) { row(header); }

  template <class... T>
  void add(const T&... cells) {
    std::vector<std::string> r{cell(cells)...};
    row(r);
  }
  std::string str() const { return os_.str(); }

 private:
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  static std::string cell(double v) { return num(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(std::int64_t v) { return std::to_string(v); }

  template <class Range>
  void row(const Range& cells) {
    bool first = true;
    for (const auto& c : cells) {
      if (!first) os_ << ',';
      os_ << c;
      first = false;
    }
    os_ << '\n';
  }
  std::ostringstream os_;
};

struct Context {
  const RunConfig& cfg;
  EvalOptions eval;
  NewtonOptions newton;
  NeCache cache;

  explicit Context(const RunConfig& c)
      : cfg(c), eval{c.subset_cap, 0}, newton{.tol = c.tol, .eval = eval}, cache(c.cache_path) {}

  NESolution ne(int n) const {
    if (!cfg.use_cache) {
      NewtonOptions o = newton;
      o.tol = kDefaultTol;
      return solve_ne(n, o);
    }
    return cache.solve(n, kDefaultTol, newton);
  }

  Strategy strategy(const std::string& source, std::optional<int> n) const {
    if (source == "uniform" || source == "zeng" || source == "flitney" || source == "ne") {
      if (!n) throw ValidationError("--n is required for named strategy '" + source + "'");
      if (source == "uniform") return make_uniform(*n);
      if (source == "zeng") return make_zeng(*n);
      if (source == "flitney") return make_flitney(*n);
      const NESolution s = ne(*n);
      if (!s.converged) throw ConvergenceError("equilibrium solve did not converge for n=" + std::to_string(*n));
      return s.strategy;
    }
    Strategy s = read_strategy_file(source);
    if (n && s.n() != *n) {
      throw ValidationError("strategy file has n=" + std::to_string(s.n()) + " but --n " + std::to_string(*n));
    }
    return s;
  }

  static constexpr double kDefaultTol = 1e-12;
};

int require_n(const RunConfig& cfg) {
  if (!cfg.n) throw ValidationError("--n is required");
  require_game_size(*cfg.n);
  return *cfg.n;
}

// ---- commands -------------------------------------------------------------

int cmd_ne(const Context& ctx, std::string& out) {
  const int n = require_n(ctx.cfg);
  NESolution s = solve_ne(n, ctx.newton);
  if (ctx.cfg.format == OutputFormat::kJson) {
    out = to_json(s) + "\n";
  } else {
    Csv csv{"i", "p_i", "c_ne"};
    for (int i = 1; i <= n; ++i) csv.add(i, s.strategy.prob(i), s.c_ne);
    out = csv.str();
  }
  return s.converged ? kOk : kNoConvergence;
}

int cmd_winprob(const Context& ctx, std::string& out) {
  if (ctx.cfg.symbolic) {
    const int n = require_n(ctx.cfg);
    SymbolicLimits limits{ctx.cfg.n_max_symbolic};
    std::ostringstream os;
    for (int i = 1; i <= n; ++i) {
      os << "# c_" << i << '\n' << symbolic_ci(n, i, limits).to_canonical_string();
    }
    out = os.str();
    return kOk;
  }
  const Strategy p = ctx.strategy(ctx.cfg.strategy_source, ctx.cfg.n);
  const WinProbVector c = win_prob_vector(p, ctx.eval);
  if (ctx.cfg.format == OutputFormat::kJson) {
    out = nlohmann::json{{"n", p.n()}, {"c", c.values}}.dump(2) + "\n";
  } else {
    Csv csv{"i", "c_i"};
    for (int i = 1; i <= p.n(); ++i) csv.add(i, c(i));
    out = csv.str();
  }
  return kOk;
}

int cmd_sequential(const Context& ctx, std::string& out) {
  const int n = require_n(ctx.cfg);
  if (!ctx.cfg.c0) throw ValidationError("--c0 is required");
  const int depth = ctx.cfg.depth.value_or(n);
  const SequentialResult r = sequential_solve(n, *ctx.cfg.c0, depth, ctx.eval);
  if (ctx.cfg.format == OutputFormat::kJson) {
    out = to_json(r) + "\n";
  } else {
    Csv csv{"i", "p_i", "status", "residual"};
    for (const auto& e : r.entries) csv.add(e.i, e.p ? num(*e.p) : std::string(), to_string(e.status), e.residual);
    out = csv.str();
  }
  return kOk;
}

int cmd_bound(const Context& ctx, std::string& out) {
  const int n = require_n(ctx.cfg);
  if (!ctx.cfg.depth) throw ValidationError("--depth is required");
  const C0Interval b = bound_c0(n, *ctx.cfg.depth, 1e-10, ctx.eval);
  if (ctx.cfg.format == OutputFormat::kJson) {
    out = to_json(b) + "\n";
  } else {
    Csv csv{"lower", "upper", "depth"};
    csv.add(b.lower, b.upper, b.depth);
    out = csv.str();
  }
  return kOk;
}

int cmd_simulate(const Context& ctx, std::string& out) {
  if (!ctx.cfg.rounds) throw ValidationError("--rounds is required");
  if (*ctx.cfg.rounds < 1) throw ValidationError("--rounds must be >= 1");
  const Strategy pi = ctx.strategy(ctx.cfg.pi_source, ctx.cfg.n);
  const Strategy p = ctx.strategy(ctx.cfg.strategy_source, ctx.cfg.n);
  const SimulationStats st = simulate(pi, p, *ctx.cfg.rounds, ctx.cfg.seed, ctx.cfg.shards);
  if (ctx.cfg.format == OutputFormat::kCsv) {
    Csv csv{"i", "choice_count", "win_count", "est_ci", "std_err"};
    for (std::size_t k = 0; k < st.win_counts.size(); ++k) {
      csv.add(static_cast<int>(k + 1), st.choice_counts[k], st.win_counts[k],
              st.est_ci[k] ? num(*st.est_ci[k]) : std::string(), st.std_err[k] ? num(*st.std_err[k]) : std::string());
    }
    out = csv.str();
  } else {
    out = to_json(st) + "\n";
  }
  return kOk;
}

int cmd_payoff(const Context& ctx, std::string& out) {
  const Strategy pi = ctx.strategy(ctx.cfg.pi_source, ctx.cfg.n);
  const Strategy p = ctx.strategy(ctx.cfg.strategy_source, ctx.cfg.n);
  const PayoffReport r = expected_payoff(pi, p, ctx.eval);
  if (ctx.cfg.format == OutputFormat::kJson) {
    out = to_json(r) + "\n";
  } else {
    Csv csv{"i", "c_i", "pi_i", "w"};
    for (int i = 1; i <= p.n(); ++i) csv.add(i, r.per_number(i), pi.prob(i), r.w);
    out = csv.str();
  }
  return kOk;
}

int cmd_bestsym(const Context& ctx, std::string& out) {
  const int n = require_n(ctx.cfg);
  BestSymmetricOptions opts;
  opts.eval = ctx.eval;
  opts.seed = ctx.cfg.seed;
  const BestSymmetricResult r = best_symmetric(n, opts);
  if (ctx.cfg.format == OutputFormat::kJson) {
    out = to_json(r) + "\n";
  } else {
    Csv csv{"i", "p_i", "w"};
    for (int i = 1; i <= n; ++i) csv.add(i, r.strategy.prob(i), r.w);
    out = csv.str();
  }
  return kOk;
}

int cmd_figure(const Context& ctx, std::string& out) {
  const std::string& which = ctx.cfg.figure;
  if (which == "fig3") {
    // c_i as a function of p_i with the earlier sequential roots inserted.
    const int n = require_n(ctx.cfg);
    if (!ctx.cfg.c0) throw ValidationError("fig3 needs --c0");
    const int depth = ctx.cfg.depth.value_or(std::min(n, 4));
    const SequentialResult r = sequential_solve(n, *ctx.cfg.c0, depth, ctx.eval);
    Csv csv{"i", "p_i", "c_i"};
    std::vector<double> prefix;
    for (int i = 1; i <= depth; ++i) {
      double used = 0.0;
      for (double v : prefix) used += v;
      prefix.push_back(0.0);
      constexpr int kPoints = 200;
      for (int k = 0; k <= kPoints; ++k) {
        prefix.back() = (1.0 - used) * k / kPoints;
        csv.add(i, prefix.back(), win_prob_prefix(i, prefix, n, ctx.eval));
      }
      if (static_cast<int>(r.entries.size()) < i || !r.entries[static_cast<std::size_t>(i - 1)].p) break;
      prefix.back() = *r.entries[static_cast<std::size_t>(i - 1)].p;
    }
    out = csv.str();
    return kOk;
  }

  if (ctx.cfg.n_list.empty()) throw ValidationError("--n-list is required for " + which);
  for (int n : ctx.cfg.n_list) {
    require_game_size(n);
    if ((which == "fig1" || which == "fig1b" || which == "fig2b") && n > ctx.newton.n_max) {
      throw ResourceError("n=" + std::to_string(n) + " above the equilibrium solver cap " +
                          std::to_string(ctx.newton.n_max));
    }
  }

  if (which == "fig1" || which == "fig1b") {
    Csv csv = which == "fig1" ? Csv{"n", "i", "p_i"} : Csv{"n", "i_over_n", "n_p_i"};
    for (int n : ctx.cfg.n_list) {
      const NESolution s = ctx.ne(n);
      if (!s.converged) return kNoConvergence;
      for (int i = 1; i <= n; ++i) {
        if (which == "fig1") {
          csv.add(n, i, s.strategy.prob(i));
        } else {
          csv.add(n, static_cast<double>(i) / n, n * s.strategy.prob(i));
        }
      }
    }
    out = csv.str();
    return kOk;
  }
  if (which == "fig2a") {
    Csv csv{"n", "i", "c_i"};
    for (int n : ctx.cfg.n_list) {
      const WinProbVector c = win_prob_vector(make_uniform(n), ctx.eval);
      for (int i = 1; i <= n; ++i) csv.add(n, i, c(i));
    }
    out = csv.str();
    return kOk;
  }
  if (which == "fig2b") {
    Csv csv{"n", "series", "n_w"};
    for (int n : ctx.cfg.n_list) {
      const NESolution s = ctx.ne(n);
      if (!s.converged) return kNoConvergence;
      csv.add(n, "uniform", n * symmetric_payoff(make_uniform(n), ctx.eval));
      csv.add(n, "ne", n * symmetric_payoff(s.strategy, ctx.eval));
      csv.add(n, "zeng", n * symmetric_payoff(make_zeng(n), ctx.eval));
      csv.add(n, "flitney", n * symmetric_payoff(make_flitney(n), ctx.eval));
    }
    out = csv.str();
    return kOk;
  }
  throw ValidationError("unknown figure '" + which + "'");
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--format", cfg.format, "Output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, OutputFormat>{{"csv", OutputFormat::kCsv}, {"json", OutputFormat::kJson}}));
  sub->add_option("--output", cfg.output_path, "Write output to this file instead of stdout");
}

}  // namespace

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      const auto dash = item.find('-', 1);
      if (dash == std::string::npos) {
        out.push_back(std::stoi(item));
      } else {
        const int a = std::stoi(item.substr(0, dash));
        const int b = std::stoi(item.substr(dash + 1));
        if (b < a) throw ValidationError("descending range " + item);
        for (int n = a; n <= b; ++n) out.push_back(n);
      }
    } catch (const std::logic_error&) {
      throw ValidationError("bad --n-list entry '" + item + "'");
    }
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Lowest-unique-positive-integer game: win probabilities, equilibria, validation"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--subset-cap", cfg.subset_cap, "Largest i-1 for the subset-sum evaluator")
      ->envname("LUPI_SUBSET_CAP")
      ->check(CLI::Range(1, 40));
  app.add_option("--n-max-symbolic", cfg.n_max_symbolic, "Largest n for exact symbolic expansion")
      ->envname("LUPI_N_MAX_SYMBOLIC")
      ->check(CLI::Range(3, 12));
  app.add_option("--cache-path", cfg.cache_path, "Equilibrium cache file")->envname("LUPI_CACHE_PATH");
  app.add_flag("!--no-cache", cfg.use_cache, "Do not read or write the equilibrium cache");

  std::string n_list_text;

  auto* ne = app.add_subcommand("ne", "Solve the symmetric Nash equilibrium with Newton's method");
  ne->add_option("--n", cfg.n, "Number of players")->required();
  ne->add_option("--tol", cfg.tol, "Residual tolerance max|c_i - c_n|");
  add_common(ne, cfg);

  auto* wp = app.add_subcommand("winprob", "Win probability c_i for every number");
  wp->add_option("--n", cfg.n, "Number of players");
  wp->add_option("--strategy", cfg.strategy_source, "uniform|zeng|flitney|ne or a strategy file");
  wp->add_flag("--symbolic", cfg.symbolic, "Print the exact c_i polynomials instead");
  add_common(wp, cfg);

  auto* seq = app.add_subcommand("sequential", "Solve p_1, p_2, ... one at a time for a payoff guess c0");
  seq->add_option("--n", cfg.n, "Number of players")->required();
  seq->add_option("--c0", cfg.c0, "Common win probability guess")->required();
  seq->add_option("--depth", cfg.depth, "Last index to solve (default n)");
  add_common(seq, cfg);

  auto* bound = app.add_subcommand("bound", "Interval for c_NE from a depth-j sequential solve");
  bound->add_option("--n", cfg.n, "Number of players")->required();
  bound->add_option("--depth", cfg.depth, "Depth j")->required();
  add_common(bound, cfg);

  auto* sim = app.add_subcommand("simulate", "Monte Carlo play");
  sim->add_option("--n", cfg.n, "Number of players");
  sim->add_option("--pi", cfg.pi_source, "Observed player's strategy");
  sim->add_option("--p", cfg.strategy_source, "Opponents' strategy");
  sim->add_option("--rounds", cfg.rounds, "Rounds to play")->required();
  sim->add_option("--seed", cfg.seed, "64-bit seed");
  sim->add_option("--shards", cfg.shards, "Independent substreams run in parallel")->check(CLI::Range(1, 1024));
  cfg.format = OutputFormat::kCsv;
  add_common(sim, cfg);

  auto* payoff = app.add_subcommand("payoff", "Expected payoff W(pi; p)");
  payoff->add_option("--n", cfg.n, "Number of players");
  payoff->add_option("--pi", cfg.pi_source, "Observed player's strategy");
  payoff->add_option("--p", cfg.strategy_source, "Opponents' strategy");
  add_common(payoff, cfg);

  auto* best = app.add_subcommand("bestsym", "Strategy maximizing W(p; p)");
  best->add_option("--n", cfg.n, "Number of players")->required();
  best->add_option("--seed", cfg.seed, "Seed for the random starts");
  add_common(best, cfg);

  auto* fig = app.add_subcommand("figure", "CSV data behind the figures");
  fig->add_option("--which", cfg.figure, "fig1|fig1b|fig2a|fig2b|fig3")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig1b", "fig2a", "fig2b", "fig3"}));
  fig->add_option("--n-list", n_list_text, "Player counts, e.g. 3,5,9 or 3-12");
  fig->add_option("--n", cfg.n, "Number of players (fig3)");
  fig->add_option("--c0", cfg.c0, "Payoff guess (fig3)");
  fig->add_option("--depth", cfg.depth, "Last index traced (fig3, default min(n, 4))");
  add_common(fig, cfg);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  bool simulate_json_default = sim->parsed() && sim->count("--format") == 0;
  if (simulate_json_default) cfg.format = OutputFormat::kJson;

  std::string body;
  int code = kOk;
  try {
    cfg.n_list = parse_n_list(n_list_text);
    const Context ctx(cfg);
    for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
    if (cfg.command == "ne") code = cmd_ne(ctx, body);
    else if (cfg.command == "winprob") code = cmd_winprob(ctx, body);
    else if (cfg.command == "sequential") code = cmd_sequential(ctx, body);
    else if (cfg.command == "bound") code = cmd_bound(ctx, body);
    else if (cfg.command == "simulate") code = cmd_simulate(ctx, body);
    else if (cfg.command == "payoff") code = cmd_payoff(ctx, body);
    else if (cfg.command == "bestsym") code = cmd_bestsym(ctx, body);
    else if (cfg.command == "figure") code = cmd_figure(ctx, body);
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kNoConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  if (cfg.output_path) {
    std::ofstream file(*cfg.output_path);
    if (!file) {
      err << "error: cannot write " << *cfg.output_path << '\n';
      return kUsage;
    }
    file << body;
  } else {
    out << body;
  }
  return code;
}

}  // namespace lupi::cli
