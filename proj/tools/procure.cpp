// procure: command-line front end for the procurement bidding lab.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "procurement/equilibria.hpp"
#include "procurement/expectation.hpp"
#include "procurement/experiments.hpp"
#include "procurement/game_core.hpp"
#include "procurement/oracle.hpp"
#include "procurement/report.hpp"
#include "procurement/three_player.hpp"
#include "procurement/weighted.hpp"

using namespace procurement;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double A = 0.0, B = 1.5, E = 1.0;
  double p = 0.5;
  int n = 101;
  long samples = 1000;
  std::uint64_t seed = 42;
  double tol = 1e-6;
  std::string out;
  std::string format;  // empty: the subcommand's natural format
  bool timing = false;

  MarketConfig market() const { return MarketConfig{A, B, E}; }

  Json to_json(const std::string& command) const {
    return Json{{"command", command}, {"A", round12(A)},      {"B", round12(B)},   {"E", round12(E)},
                {"p", round12(p)},    {"n", n},               {"samples", samples}, {"seed", seed},
                {"tol", round12(tol)}, {"format", format},     {"timing", timing}};
  }
};

// Registered global options, kept to tell explicit flags from defaults.
struct GlobalOptions {
  CLI::Option *A, *B, *E, *p, *n, *samples, *seed, *tol, *out, *format, *timing;
  std::string config_path;
};

template <class T>
void merge_key(const Json& cfg, const char* key, CLI::Option* flag, T& target) {
  if (!cfg.contains(key) || flag->count() > 0) return;
  try {
    target = cfg.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw UsageError(std::string("config key '") + key + "': " + e.what());
  }
}

void apply_config_file(const GlobalOptions& g, RunConfig& rc) {
  if (g.config_path.empty()) return;
  std::ifstream in(g.config_path);
  if (!in) throw UsageError("cannot open config file " + g.config_path);
  Json cfg;
  try {
    cfg = Json::parse(in);
  } catch (const Json::exception& e) {
    throw UsageError(std::string("config file: ") + e.what());
  }
  if (!cfg.is_object()) throw UsageError("config file must hold a JSON object");
  static const std::vector<std::string> known{"A", "B", "E", "p", "n", "samples", "seed",
                                              "tol", "out", "format", "timing"};
  for (const auto& [key, _] : cfg.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw UsageError("config file: unknown key '" + key + "'");
    }
  }
  merge_key(cfg, "A", g.A, rc.A);
  merge_key(cfg, "B", g.B, rc.B);
  merge_key(cfg, "E", g.E, rc.E);
  merge_key(cfg, "p", g.p, rc.p);
  merge_key(cfg, "n", g.n, rc.n);
  merge_key(cfg, "samples", g.samples, rc.samples);
  merge_key(cfg, "seed", g.seed, rc.seed);
  merge_key(cfg, "tol", g.tol, rc.tol);
  merge_key(cfg, "out", g.out, rc.out);
  merge_key(cfg, "format", g.format, rc.format);
  merge_key(cfg, "timing", g.timing, rc.timing);
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot open output file " + path);
    }
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_number_float()) return fmt12(v.get<double>());
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  }
  return v.dump();
}

// A table is emitted as CSV (config echo comment, header, rows) or as JSON
// lines (config echo object, one object per row).
struct Table {
  std::vector<std::string> header;
  std::vector<Json> rows;  // ordered objects keyed by header
  std::vector<std::string> trailer_comments;

  void write(std::ostream& os, const std::string& format, const Json& echo) const {
    if (format == "json") {
      os << Json{{"run_config", echo}}.dump() << "\n";
      for (const auto& r : rows) os << r.dump() << "\n";
      for (const auto& c : trailer_comments) os << Json{{"comment", c}}.dump() << "\n";
      return;
    }
    os << "# run_config " << echo.dump() << "\n";
    for (std::size_t k = 0; k < header.size(); ++k) os << (k ? "," : "") << header[k];
    os << "\n";
    for (const auto& r : rows) {
      for (std::size_t k = 0; k < header.size(); ++k) {
        os << (k ? "," : "") << (r.contains(header[k]) ? csv_cell(r.at(header[k])) : "");
      }
      os << "\n";
    }
    for (const auto& c : trailer_comments) os << "# " << c << "\n";
  }
};

void write_reports(std::ostream& os, const std::string& format, const Json& echo,
                   const std::vector<VerificationReport>& reports) {
  if (format == "csv") {
    Table t{{"id", "check", "max_violation", "tolerance", "pass"}, {}, {}};
    for (const auto& r : reports) {
      t.rows.push_back({{"id", r.id}, {"check", r.check}, {"max_violation", round12(r.max_violation)},
                        {"tolerance", round12(r.tolerance)}, {"pass", r.pass ? "true" : "false"}});
    }
    t.write(os, "csv", echo);
    return;
  }
  os << Json{{"run_config", echo}}.dump() << "\n";
  for (const auto& r : reports) os << r.to_json_line() << "\n";
}

bool all_pass(const std::vector<VerificationReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
}

void require_format(const std::string& f) {
  if (!f.empty() && f != "csv" && f != "json") throw UsageError("--format must be csv or json");
}

double snap_critical(double p) {
  // Inputs typed to six decimals should land on the critical weight.
  return std::abs(p - critical_p()) < 1e-6 ? critical_p() : p;
}

Json value_row(double p) {
  const auto vr = value_weighted(p);
  Json row{{"p", round12(p)}, {"v_eq72", round12(vr.v)}, {"regime", to_string(vr.regime)}};
  row["m"] = vr.m ? Json(*vr.m) : Json(nullptr);
  row["epsilon_p"] = vr.epsilon_p ? Json(round12(*vr.epsilon_p)) : Json(nullptr);
  return row;
}

MixedStrategy named_strategy(const std::string& name, double p, const MarketConfig& cfg) {
  if (name == "uniform") return uniform_equilibrium(cfg);
  if (name == "log") return log_equilibrium(cfg);
  if (name == "weighted") return weighted_equilibrium(p, cfg);
  if (name == "critical") return critical_regime_strategy(cfg);
  if (name.rfind("point:", 0) == 0) {
    double x = 0.0;
    try {
      x = std::stod(name.substr(6));
    } catch (const std::exception&) {
      throw UsageError("bad point strategy '" + name + "'");
    }
    require_bid(x, cfg);
    return MixedStrategy::point(cfg, x);
  }
  if (name.rfind("@", 0) == 0) {
    std::ifstream in(name.substr(1));
    if (!in) throw UsageError("cannot open strategy file " + name.substr(1));
    try {
      return MixedStrategy::from_json(Json::parse(in), cfg);
    } catch (const Json::exception& e) {
      throw UsageError(std::string("strategy file: ") + e.what());
    }
  }
  throw UsageError("unknown strategy '" + name + "' (uniform, log, weighted, critical, point:<x>, @file.json)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Procurement bidding game lab"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig rc;
  GlobalOptions g{};
  g.A = app.add_option("--A", rc.A, "Lower bid bound");
  g.B = app.add_option("--B", rc.B, "Upper bid bound");
  g.E = app.add_option("--E", rc.E, "Administration estimate");
  g.p = app.add_option("--p", rc.p, "Weight of player 1 in the reference price");
  g.n = app.add_option("--n", rc.n, "Grid size");
  g.samples = app.add_option("--samples", rc.samples, "Sample count");
  g.seed = app.add_option("--seed", rc.seed, "Random seed");
  g.tol = app.add_option("--tol", rc.tol, "Tolerance");
  g.out = app.add_option("--out", rc.out, "Output file (default stdout)");
  g.format = app.add_option("--format", rc.format, "csv or json");
  g.timing = app.add_flag("--timing", rc.timing, "Attach wall-clock runtimes to reports");
  app.add_option("--config", g.config_path, "JSON file with defaults for the options above");

  // value-curve
  auto* vc = app.add_subcommand("value-curve", "Value formula sweep, optionally against grid games");
  double p_min = 0.5, p_max = 0.5;
  int steps = 1;
  std::vector<int> ladder;
  bool long_table = false;
  vc->add_option("--p-min", p_min)->required();
  vc->add_option("--p-max", p_max)->required();
  vc->add_option("--steps", steps, "Number of p values");
  vc->add_option("--n-ladder", ladder, "Grid sizes for the oracle columns")->delimiter(',');
  vc->add_flag("--long", long_table, "One row per (p, n) with gaps and benchmarks");

  // verify
  auto* vf = app.add_subcommand("verify", "Pointwise equilibrium checks for a closed-form strategy");
  std::string vf_strategy;
  int vf_grid = 2000;
  vf->add_option("--strategy", vf_strategy)->required()->check(CLI::IsMember({"uniform", "log", "weighted", "critical"}));
  vf->add_option("--grid", vf_grid, "Number of checked bids");

  auto* sg = app.add_subcommand("solve-grid", "Solve the weighted grid game");
  long sg_iter = 400000;
  sg->add_option("--max-iter", sg_iter);

  auto* cp = app.add_subcommand("cutpoints3", "Three-bidder cutpoints and ordering cell");
  double cy = 0.0, cz = 0.0;
  cp->add_option("--y", cy)->required();
  cp->add_option("--z", cz)->required();

  app.add_subcommand("regimes", "Regime, sequences and value at p");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo tournament between two strategies");
  std::string sim_row = "log", sim_col = "log";
  sim->add_option("--row", sim_row, "uniform|log|weighted|critical|point:<x>|@file.json");
  sim->add_option("--col", sim_col, "same choices as --row");

  auto* ps = app.add_subcommand("pure-ne-scan", "Exhaustive pure-equilibrium scan on an enriched grid");
  int ps_N = 2;
  ps->add_option("--N", ps_N)->check(CLI::IsMember({2, 3}));

  app.add_subcommand("ddpm-probe", "One-sided limit probes on discontinuity loci");

  auto* rgd = app.add_subcommand("region-grid", "Dense payoff matrix for plotting");
  std::string rg_kind = "TwoPlayer";
  double rg_param = 0.5;
  int rg_res = 256;
  rgd->add_option("--kind", rg_kind)->check(CLI::IsMember({"TwoPlayer", "WeightedP", "ThreePlayerSlice"}));
  rgd->add_option("--param", rg_param, "p for WeightedP, player 1's bid for ThreePlayerSlice");
  rgd->add_option("--resolution", rg_res);

  auto* br = app.add_subcommand("br-dynamics", "Round-robin best-response dynamics");
  std::vector<double> br_start;
  long br_steps = 10000;
  br->add_option("--start", br_start, "Starting profile")->required()->delimiter(',');
  br->add_option("--steps", br_steps);

  auto* sp = app.add_subcommand("selfplay", "Symmetric regret-matching self-play on a grid");
  int sp_N = 2;
  long sp_iters = 100000;
  sp->add_option("--N", sp_N)->check(CLI::IsMember({2, 3}));
  sp->add_option("--iters", sp_iters);

  auto* bt = app.add_subcommand("battery", "Run the twelve acceptance checks");
  std::vector<int> bt_only;
  bool bt_inject = false;
  bt->add_option("--only", bt_only, "Criterion numbers to run")->delimiter(',');
  bt->add_flag("--inject-mass-defect", bt_inject, "Fault injection for the normalisation check");

  for (auto* s : app.get_subcommands({})) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    apply_config_file(g, rc);
    require_format(rc.format);
    try {
      rc.market().validate();
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    if (rc.samples < 1) throw UsageError("--samples must be positive");
    if (rc.n < 2) throw UsageError("--n must be at least 2");
    if (!(rc.tol > 0)) throw UsageError("--tol must be positive");
    const MarketConfig cfg = rc.market();
    Output out(rc.out);
    auto& os = out.os();
    const std::string cmd = app.get_subcommands().front()->get_name();
    Json echo = rc.to_json(cmd);
    const auto fmt = [&](const char* natural) { return rc.format.empty() ? std::string(natural) : rc.format; };

    if (cmd == "value-curve") {
      if (!(p_min > 0.0 && p_min <= p_max && p_max <= 0.5)) throw UsageError("need 0 < p-min <= p-max <= 0.5");
      if (steps < 1) throw UsageError("--steps must be positive");
      if (steps == 1 && p_min != p_max) throw UsageError("--steps 1 needs p-min = p-max");
      for (std::size_t k = 0; k < ladder.size(); ++k) {
        if (ladder[k] < 2 || (k && ladder[k] <= ladder[k - 1])) throw UsageError("--n-ladder must be ascending, >= 2");
      }
      if (long_table && ladder.empty()) throw UsageError("--long needs --n-ladder");
      std::vector<double> ps;
      for (int k = 0; k < steps; ++k) {
        const double p = steps == 1 ? p_min : (k == steps - 1 ? p_max : p_min + (p_max - p_min) * k / (steps - 1.0));
        ps.push_back(snap_critical(p));
      }
      echo["p_min"] = round12(p_min);
      echo["p_max"] = round12(p_max);
      echo["steps"] = steps;
      echo["n_ladder"] = ladder;
      Table t;
      if (long_table) {
        t.header = {"p", "n", "value_n", "v_eq72", "gap", "regime", "benchmark", "benchmark_gap"};
        for (double p : ps) {
          const auto rows = value_curve_oracle({p}, cfg, ladder, rc.tol);
          for (const auto& r : rows) {
            t.rows.push_back({{"p", round12(r.p)}, {"n", r.n}, {"value_n", round12(r.value_n)},
                              {"v_eq72", round12(r.v_formula)}, {"gap", round12(r.gap)},
                              {"regime", to_string(r.regime)}, {"benchmark", round12(r.benchmark)},
                              {"benchmark_gap", round12(r.benchmark_gap)}});
          }
          t.trailer_comments.push_back("closer p=" + fmt12(p) + " prediction=" + closer_prediction(rows, p));
        }
      } else {
        t.header = {"p", "v_eq72", "regime", "m", "epsilon_p"};
        for (int n : ladder) t.header.push_back("value_n" + std::to_string(n));
        for (double p : ps) {
          Json row = value_row(p);
          if (!ladder.empty()) {
            const auto rows = value_curve_oracle({p}, cfg, ladder, rc.tol);
            for (const auto& r : rows) row["value_n" + std::to_string(r.n)] = round12(r.value_n);
          }
          t.rows.push_back(row);
        }
      }
      t.write(os, fmt("csv"), echo);
      return kExitPass;
    }

    if (cmd == "verify") {
      EquilibriumKind kind = EquilibriumKind::Log;
      if (vf_strategy == "uniform") kind = EquilibriumKind::Uniform;
      if (vf_strategy == "weighted") kind = EquilibriumKind::Weighted;
      if (vf_strategy == "critical") kind = EquilibriumKind::Critical;
      if (kind == EquilibriumKind::Weighted && !(rc.p > 0.0 && rc.p <= 0.5)) {
        throw UsageError("verify --strategy weighted needs 0 < p <= 0.5");
      }
      if ((kind == EquilibriumKind::Uniform || kind == EquilibriumKind::Log) && rc.p != 0.5) {
        throw UsageError("the symmetric strategies belong to p = 0.5");
      }
      if (kind == EquilibriumKind::Critical && g.p->count() > 0 && snap_critical(rc.p) != critical_p()) {
        throw UsageError("the critical strategy belongs to p = (5 - sqrt 13)/6");
      }
      if (vf_grid < 2) throw UsageError("--grid must be at least 2");
      echo["strategy"] = vf_strategy;
      echo["grid"] = vf_grid;
      const auto reps = verify_equilibrium(kind, rc.p, vf_grid, rc.tol, cfg);
      write_reports(os, fmt("json"), echo, reps);
      return all_pass(reps) ? kExitPass : kExitFail;
    }

    if (cmd == "solve-grid") {
      if (!(rc.p >= 0.0 && rc.p <= 1.0)) throw UsageError("--p must lie in [0, 1]");
      const Grid grid = make_grid(rc.n, cfg);
      const auto sol = solve_matrix_game(weighted_payoff_matrix(rc.p, grid, cfg), rc.tol, sg_iter);
      echo["max_iter"] = sg_iter;
      Table t{{"p", "n", "grid_size", "value", "lower", "upper", "exploitability", "iterations", "converged"}, {}, {}};
      t.rows.push_back({{"p", round12(rc.p)}, {"n", rc.n}, {"grid_size", grid.size()},
                        {"value", round12(sol.value)}, {"lower", round12(sol.lower)},
                        {"upper", round12(sol.upper)}, {"exploitability", round12(sol.exploitability)},
                        {"iterations", sol.iterations}, {"converged", sol.converged ? "true" : "false"}});
      t.write(os, fmt("csv"), echo);
      return sol.converged ? kExitPass : kExitFail;
    }

    if (cmd == "cutpoints3") {
      require_bid(cy, cfg, "y");
      require_bid(cz, cfg, "z");
      const auto c = cutpoints3(cy, cz, cfg);
      std::string cell;
      try {
        cell = to_string(ordering_cell(cy, cz, cfg));
      } catch (const BoundaryError&) {
        cell = "boundary";
      }
      echo["y"] = round12(cy);
      echo["z"] = round12(cz);
      Table t{{"y", "z", "t", "p_y", "p_z", "cell"}, {}, {}};
      t.rows.push_back({{"y", round12(cy)}, {"z", round12(cz)}, {"t", round12(c.t)}, {"p_y", round12(c.p_y)},
                        {"p_z", round12(c.p_z)}, {"cell", cell}});
      t.write(os, fmt("csv"), echo);
      return kExitPass;
    }

    if (cmd == "regimes") {
      const double p = snap_critical(rc.p);
      if (!(p >= 0.0 && p <= 0.5)) throw UsageError("--p must lie in [0, 0.5]");
      const auto vr = value_weighted(p, cfg);
      Json row = value_row(p);
      row["m"] = vr.m ? Json(*vr.m) : Json(nullptr);
      row["benchmark"] = round12(vr.benchmark);
      if (p > 0.0 && p < 0.5) {
        const auto s = weighted_sequences(p, 3, cfg);
        row["A_check_1"] = round12(s.A_check(1));
        row["A_check_2"] = round12(s.A_check(2));
        row["D_check_1"] = round12(s.D_check(1));
      }
      Table t{{"p", "regime", "m", "v_eq72", "benchmark", "epsilon_p", "A_check_1", "A_check_2", "D_check_1"}, {}, {}};
      t.rows.push_back(row);
      if (vr.regime == Regime::Intermediate || vr.regime == Regime::LowP) {
        std::string parts;
        for (const auto& iv : regime_partition(p, cfg)) parts += " [" + fmt12(iv.lo) + "," + fmt12(iv.hi) + ")";
        t.trailer_comments.push_back("partition" + parts);
      }
      t.write(os, fmt("csv"), echo);
      return kExitPass;
    }

    if (cmd == "simulate") {
      if (!(rc.p > 0.0 && rc.p <= 0.5)) throw UsageError("--p must lie in (0, 0.5]");
      if (rc.samples < 2) throw UsageError("--samples must be at least 2");
      const auto row_s = named_strategy(sim_row, rc.p, cfg);
      const auto col_s = named_strategy(sim_col, rc.p, cfg);
      const auto kernel = rc.p == 0.5 ? TwoPlayerKernel::symmetric(cfg) : TwoPlayerKernel::weighted(rc.p, cfg);
      const auto res = mc_tournament({row_s, col_s}, kernel, static_cast<std::size_t>(rc.samples), rc.seed);
      const double quad = expect_joint(row_s, col_s, kernel, {}, false).outer;
      echo["row"] = sim_row;
      echo["col"] = sim_col;
      Table t{{"samples", "mean_row", "stderr_row", "mean_col", "stderr_col", "quadrature", "z"}, {}, {}};
      const double z = res.stderr_[0] > 0 ? (res.mean[0] - quad) / res.stderr_[0] : 0.0;
      t.rows.push_back({{"samples", res.samples}, {"mean_row", round12(res.mean[0])},
                        {"stderr_row", round12(res.stderr_[0])}, {"mean_col", round12(res.mean[1])},
                        {"stderr_col", round12(res.stderr_[1])}, {"quadrature", round12(quad)}, {"z", round12(z)}});
      t.write(os, fmt("csv"), echo);
      return kExitPass;
    }

    if (cmd == "pure-ne-scan") {
      const Grid grid = make_grid(rc.n, cfg);
      const auto res = pure_ne_scan(ps_N, grid, cfg);
      echo["N"] = ps_N;
      Table t{{"N", "n", "grid_size", "profiles_checked", "equilibria", "maxmin", "minmax"}, {}, {}};
      Json row{{"N", ps_N}, {"n", rc.n}, {"grid_size", grid.size()}, {"profiles_checked", res.profiles_checked},
               {"equilibria", res.equilibria.size()}};
      if (ps_N == 2) {
        const auto mm = pure_minimax_gap(grid, cfg);
        row["maxmin"] = round12(mm.maxmin);
        row["minmax"] = round12(mm.minmax);
      }
      t.rows.push_back(row);
      for (const auto& e : res.equilibria) t.trailer_comments.push_back("equilibrium " + Json(e).dump());
      t.write(os, fmt("csv"), echo);
      return res.equilibria.empty() ? kExitPass : kExitFail;
    }

    if (cmd == "ddpm-probe") {
      if (rc.samples > 1000000) throw UsageError("--samples above 10^6");
      auto rep = ddpm_probe(static_cast<int>(rc.samples), rc.seed, cfg);
      write_reports(os, fmt("json"), echo, {rep});
      return rep.pass ? kExitPass : kExitFail;
    }

    if (cmd == "region-grid") {
      RegionKind kind = RegionKind::TwoPlayer;
      if (rg_kind == "WeightedP") kind = RegionKind::WeightedP;
      if (rg_kind == "ThreePlayerSlice") kind = RegionKind::ThreePlayerSlice;
      if (kind == RegionKind::WeightedP && !(rg_param >= 0.0 && rg_param <= 1.0)) throw UsageError("--param must be a weight in [0, 1]");
      if (kind == RegionKind::ThreePlayerSlice) require_bid(rg_param, cfg, "--param");
      if (rg_res < 2 || rg_res > 4096) throw UsageError("--resolution must lie in [2, 4096]");
      const auto grid = region_grid(kind, rg_param, rg_res, cfg);
      echo["kind"] = rg_kind;
      echo["param"] = round12(rg_param);
      echo["resolution"] = rg_res;
      if (fmt("csv") == "json") {
        os << Json{{"run_config", echo}}.dump() << "\n";
        std::vector<double> vals(grid.values.size());
        std::transform(grid.values.begin(), grid.values.end(), vals.begin(), round12);
        os << Json{{"kind", rg_kind}, {"param", round12(rg_param)}, {"resolution", rg_res}, {"values", vals}}.dump() << "\n";
        return kExitPass;
      }
      os << "# run_config " << echo.dump() << "\n";
      os << "kind=" << rg_kind << ",param=" << fmt12(rg_param) << ",resolution=" << rg_res << "\n";
      const auto r = static_cast<std::size_t>(rg_res);
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) os << (j ? "," : "") << fmt12(grid.values[i * r + j]);
        os << "\n";
      }
      return kExitPass;
    }

    if (cmd == "br-dynamics") {
      if (br_start.size() < 2) throw UsageError("--start needs at least two bids");
      for (double b : br_start) require_bid(b, cfg, "--start");
      if (br_steps < 1) throw UsageError("--steps must be positive");
      const auto tr = br_dynamics(br_start, br_steps, cfg);
      echo["start"] = br_start;
      echo["steps"] = br_steps;
      Table t;
      t.header = {"step"};
      for (std::size_t k = 0; k < br_start.size(); ++k) t.header.push_back("x" + std::to_string(k + 1));
      for (std::size_t s = 0; s < tr.profiles.size(); ++s) {
        Json row{{"step", s}};
        for (std::size_t k = 0; k < br_start.size(); ++k) row["x" + std::to_string(k + 1)] = round12(tr.profiles[s][k]);
        t.rows.push_back(row);
      }
      t.trailer_comments.push_back(std::string("fixed_point=") + (tr.fixed_point ? "true" : "false") +
                                   " deviator_failures=" + std::to_string(tr.deviator_failures));
      t.write(os, fmt("csv"), echo);
      return tr.fixed_point || tr.deviator_failures ? kExitFail : kExitPass;
    }

    if (cmd == "selfplay") {
      if (sp_iters < 1) throw UsageError("--iters must be positive");
      const auto rep = symmetric_selfplay(sp_N, make_grid(rc.n, cfg), sp_iters, rc.seed, cfg);
      echo["N"] = sp_N;
      echo["iters"] = sp_iters;
      Table t{{"iteration", "exploitability"}, {}, {}};
      for (const auto& pt : rep.series) t.rows.push_back({{"iteration", pt.iteration}, {"exploitability", round12(pt.exploitability)}});
      t.trailer_comments.push_back("final_exploitability=" + fmt12(rep.final_exploitability));
      t.write(os, fmt("csv"), echo);
      return kExitPass;
    }

    if (cmd == "battery") {
      BatteryOptions opt;
      for (int k : bt_only) {
        if (k < 1 || k > 12) throw UsageError("--only takes criterion numbers 1..12");
        opt.only.insert(k);
      }
      opt.inject_mass_defect = bt_inject;
      opt.timing = rc.timing;
      echo["only"] = bt_only;
      echo["inject_mass_defect"] = bt_inject;
      const auto reps = run_battery(cfg, rc.seed, opt);
      write_reports(os, fmt("json"), echo, reps);
      for (const auto& r : reps) std::cerr << r.id << " " << (r.pass ? "PASS" : "FAIL") << "\n";
      return all_pass(reps) ? kExitPass : kExitFail;
    }
    throw UsageError("unknown subcommand");
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
}
