// Command-line front end: instance generation, planning, validation,
// simulation, and benchmark sweeps emitting CSV.
//
// Exit codes:
//   0  success
//   2  bad arguments (including n < m and unknown presets)
//   3  malformed input file
//   4  infeasible instance (unreachable point, disconnected ground, ...)
//   5  scenario/obstacle generation failed
//   6  validation failed
//   7  request exceeds the exhaustive-reference size limits
//   1  any other error

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "airferry/airferry.hpp"

namespace af = airferry;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadArgs = 2;
constexpr int kExitParse = 3;
constexpr int kExitInfeasible = 4;
constexpr int kExitGeneration = 5;
constexpr int kExitValidation = 6;
constexpr int kExitTooLarge = 7;
constexpr int kExitOther = 1;

// Default output directory: $AIRFERRY_OUT_DIR when set, else the cwd.
fs::path out_dir() {
  if (const char* dir = std::getenv("AIRFERRY_OUT_DIR")) {
    if (*dir != '\0') return fs::path(dir);
  }
  return fs::current_path();
}

fs::path resolve_out(const std::string& explicit_path,
                     const std::string& default_name) {
  if (!explicit_path.empty()) return fs::path(explicit_path);
  return out_dir() / default_name;
}

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(
             clock::now().time_since_epoch())
      .count();
}

struct PresetAnchors {
  std::vector<af::Team> teams;
};

// Anchor layouts.  "table3": the canonical multi-team layout (teams fan out
// from distinct border anchors and converge near the center).  "table4": one
// team crossing the area corner to corner.  "custom": anchors supplied via
// --anchors "sx,sy,fx,fy;...".
PresetAnchors preset_anchors(const std::string& preset, std::size_t m,
                             const std::string& anchors_arg) {
  PresetAnchors out;
  if (preset == "table3") {
    out.teams = af::default_anchors(m);
    return out;
  }
  if (preset == "table4") {
    if (m != 1) {
      throw std::invalid_argument("preset table4 uses exactly one team");
    }
    out.teams = {af::Team{af::Point3{0.0, 0.0, 0.0},
                          af::Point3{4000.0, 4000.0, 0.0}}};
    return out;
  }
  if (preset == "custom") {
    if (anchors_arg.empty()) {
      throw std::invalid_argument(
          "preset custom needs --anchors \"sx,sy,fx,fy;...\"");
    }
    std::stringstream teams_ss(anchors_arg);
    std::string team_str;
    while (std::getline(teams_ss, team_str, ';')) {
      if (team_str.empty()) continue;
      std::stringstream f(team_str);
      std::vector<double> v;
      std::string tok;
      while (std::getline(f, tok, ',')) v.push_back(std::stod(tok));
      if (v.size() != 4) {
        throw std::invalid_argument(
            "each custom anchor entry needs four numbers sx,sy,fx,fy");
      }
      out.teams.push_back(af::Team{af::Point3{v[0], v[1], 0.0},
                                   af::Point3{v[2], v[3], 0.0}});
    }
    if (out.teams.size() != m) {
      throw std::invalid_argument(
          "custom anchor count does not match --m");
    }
    return out;
  }
  throw std::invalid_argument("unknown preset: " + preset);
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += "\"\"";
    else q += c;
  }
  q += "\"";
  return q;
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss << std::setprecision(17) << v;
  return ss.str();
}

// ---------------------------------------------------------------- gen ----

struct GenArgs {
  std::uint64_t seed = 0;
  std::size_t n = 25;
  std::size_t m = 1;
  std::string preset = "table3";
  std::string anchors;
  double delta_a = 0.0;
  double delta_g = 0.0;
  double gamma = 1.0;
  double budget = 600.0;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  if (a.n < a.m) {
    std::cerr << "error: need at least as many points as teams (n >= m)\n";
    return kExitBadArgs;
  }
  PresetAnchors anchors = preset_anchors(a.preset, a.m, a.anchors);
  af::Scenario sc = af::generate_instance(a.seed, a.n, a.m,
                                          af::Point3{4000.0, 4000.0, 500.0},
                                          100.0, anchors.teams);
  sc.params.margin_air = a.delta_a;
  sc.params.margin_ground = a.delta_g;
  sc.params.recharge_ratio = a.gamma;
  sc.params.max_flight_time = a.budget;
  af::validate_params(sc.params);

  std::ostringstream name;
  name << "scenario_s" << a.seed << "_n" << a.n << "_m" << a.m << ".json";
  const fs::path path = resolve_out(a.out, name.str());
  af::write_text_file(path.string(), af::dump_document(af::scenario_to_json(sc)));
  std::cout << "wrote " << path.string() << " (" << a.n << " points, " << a.m
            << " teams, seed " << a.seed << ")\n";
  return kExitOk;
}

// ---------------------------------------------------------------- plan ----

struct PlanArgs {
  std::string scenario;
  std::string out;
  int jobs = 1;
};

int cmd_plan(const PlanArgs& a) {
  const std::string scenario_text = af::read_text_file(a.scenario);
  af::PlannerConfig cfg;
  cfg.jobs = a.jobs;
  const double t0 = now_ms();
  auto [plan, plan_text] = af::plan_cycle(scenario_text, cfg);
  const double elapsed = now_ms() - t0;

  const fs::path in_path(a.scenario);
  const fs::path path =
      resolve_out(a.out, in_path.stem().string() + "_plan.json");
  af::write_text_file(path.string(), plan_text);

  const af::Scenario sc =
      af::scenario_from_json(af::parse_document(scenario_text));
  std::cout << "objective " << af::objective(sc.env, sc.params, plan)
            << " s over " << plan.teams.size() << " team(s), planning "
            << elapsed << " ms, plan written to " << path.string() << "\n";
  return kExitOk;
}

// ------------------------------------------------------------ validate ----

struct ValidateArgs {
  std::string scenario;
  std::string plan;
};

int cmd_validate(const ValidateArgs& a) {
  const af::Scenario sc = af::load_scenario(a.scenario);
  const af::PlanDocument doc = af::load_plan(a.plan);
  const af::ValidationReport report = af::validate(sc, doc.mission);
  for (const auto& e : report.entries) {
    if (e.pass) continue;
    std::cout << "FAIL " << af::constraint_name(e.kind) << " team=" << e.team
              << " row=" << e.row << " point=" << e.point
              << " measured=" << e.measured << " bound=" << e.bound << " ("
              << e.detail << ")\n";
  }
  const double stated = doc.stated_objective;
  const double actual = af::objective(sc.env, sc.params, doc.mission);
  const bool objective_ok = std::abs(stated - actual) <= 1e-6 * std::max(1.0, std::abs(actual));
  if (!objective_ok) {
    std::cout << "FAIL stated objective " << stated
              << " differs from recomputed " << actual << "\n";
  }
  if (report.pass && objective_ok) {
    std::cout << "validation: PASS (" << report.entries.size()
              << " checks)\n";
    return kExitOk;
  }
  std::cout << "validation: FAIL (" << report.failure_count()
            << " of " << report.entries.size() << " checks"
            << (objective_ok ? "" : ", stated objective mismatch") << ")\n";
  return kExitValidation;
}

// ------------------------------------------------------------ simulate ----

struct SimulateArgs {
  std::string scenario;
  std::string plan;
  std::uint64_t seed = 1;
  std::size_t seeds = 1;
  std::size_t obstacles = 3;
  double max_size = 300.0;
  double air_factor = 1.0;
  double budget_scale = 1.0;
  std::string out;
};

int cmd_simulate(const SimulateArgs& a) {
  const af::Scenario sc = af::load_scenario(a.scenario);
  const af::PlanDocument doc = af::load_plan(a.plan);

  std::ostringstream csv;
  csv << "sim_seed,team,tour,adjusted,adjustment_failed,certificate_ok,"
         "release_dev_m,collect_dev_m,realized_air_s,realized_ground_s,"
         "violation_air,violation_ground\n";
  for (std::size_t k = 0; k < a.seeds; ++k) {
    const std::uint64_t sim_seed = a.seed + k;
    const af::TrueWorld world =
        af::make_true_world(sc, sim_seed, a.obstacles, a.max_size);
    af::SimulationConfig cfg;
    cfg.air_time_factor = a.air_factor;
    cfg.budget_scale = a.budget_scale;
    const af::ExecutionReport report =
        af::execute(world, sc.params, doc.mission, cfg);
    for (const auto& tx : report.tours) {
      csv << sim_seed << ',' << tx.team << ',' << tx.row << ','
          << (tx.adjusted ? 1 : 0) << ',' << (tx.adjustment_failed ? 1 : 0)
          << ',' << (tx.certificate_ok ? 1 : 0) << ',' << fmt(tx.release_dev)
          << ',' << fmt(tx.collect_dev) << ',' << fmt(tx.realized_air) << ','
          << fmt(tx.realized_ground) << ',' << (tx.violation_air ? 1 : 0)
          << ',' << (tx.violation_ground ? 1 : 0) << '\n';
    }
    std::cout << "sim seed=" << sim_seed << " unknown=" << world.unknown.size()
              << " realized=" << report.realized_objective
              << " s violations=" << report.violation_count
              << " certified=" << (report.all_certified ? "yes" : "no")
              << " success=" << (report.success ? "yes" : "no") << "\n";
  }

  const fs::path path = resolve_out(a.out, "simulation.csv");
  af::write_text_file(path.string(), csv.str());
  std::cout << "wrote " << path.string() << "\n";
  return kExitOk;
}

// --------------------------------------------------------------- bench ----

struct BenchArgs {
  std::string preset = "table3";
  std::string anchors;
  std::vector<std::size_t> n_list{25, 50, 100};
  std::vector<std::size_t> m_list{1};
  std::size_t repeats = 25;
  std::uint64_t seed = 1;
  double delta_a = 0.0;
  double delta_g = 0.0;
  double gamma = 1.0;
  int jobs = 1;
  std::string out;
  bool emit_plot_data = false;
};

struct BenchRow {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  double plan_ms = 0.0;
  double objective = 0.0;
  std::vector<double> team_times;
  std::size_t violation_count = 0;
  double oracle_objective = -1.0;  // <0: not computed
};

BenchRow bench_one(const BenchArgs& a, std::uint64_t seed, std::size_t n,
                   std::size_t m) {
  const PresetAnchors anchors = preset_anchors(a.preset, m, a.anchors);
  af::Scenario sc = af::generate_instance(seed, n, m,
                                          af::Point3{4000.0, 4000.0, 500.0},
                                          100.0, anchors.teams);
  sc.params.margin_air = a.delta_a;
  sc.params.margin_ground = a.delta_g;
  sc.params.recharge_ratio = a.gamma;
  const std::string scenario_text =
      af::dump_document(af::scenario_to_json(sc));

  BenchRow row;
  row.seed = seed;
  row.n = n;
  row.m = m;
  const double t0 = now_ms();
  auto [plan, plan_text] = af::plan_cycle(scenario_text, {});
  row.plan_ms = now_ms() - t0;
  row.objective = af::objective(sc.env, sc.params, plan);
  for (const auto& tp : plan.teams) {
    row.team_times.push_back(af::team_mission_time(sc.env, sc.params, tp));
  }
  row.violation_count = af::validate(sc, plan).failure_count();
  if (a.preset == "table4" && n <= 5) {
    row.oracle_objective =
        af::exact_plan(sc.env, sc.params, sc.teams[0], sc.points).objective;
  }
  return row;
}

int cmd_bench(const BenchArgs& a) {
  struct Task {
    std::uint64_t seed;
    std::size_t n, m;
  };
  std::vector<Task> tasks;
  for (std::size_t n : a.n_list) {
    for (std::size_t m : a.m_list) {
      if (n < m) continue;
      for (std::size_t r = 0; r < a.repeats; ++r) {
        tasks.push_back({a.seed + r, n, m});
      }
    }
  }
  if (tasks.empty()) {
    std::cerr << "error: no (n, m) cells with n >= m\n";
    return kExitBadArgs;
  }

  std::vector<BenchRow> rows(tasks.size());
  const int jobs = std::max(1, a.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      rows[i] = bench_one(a, tasks[i].seed, tasks[i].n, tasks[i].m);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> workers;
    workers.reserve(static_cast<std::size_t>(jobs));
    for (int w = 0; w < jobs; ++w) {
      workers.push_back(std::async(std::launch::async, [&] {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= tasks.size()) return;
          rows[i] = bench_one(a, tasks[i].seed, tasks[i].n, tasks[i].m);
        }
      }));
    }
    for (auto& w : workers) w.get();
  }

  std::sort(rows.begin(), rows.end(), [](const BenchRow& x, const BenchRow& y) {
    if (x.n != y.n) return x.n < y.n;
    if (x.m != y.m) return x.m < y.m;
    return x.seed < y.seed;
  });

  std::ostringstream csv;
  csv << "seed,n,m,gamma,delta_a,delta_g,plan_ms,objective,team_times,"
         "violation_count,oracle_objective,ratio\n";
  for (const auto& r : rows) {
    std::ostringstream times;
    for (std::size_t i = 0; i < r.team_times.size(); ++i) {
      if (i) times << ';';
      times << fmt(r.team_times[i]);
    }
    csv << r.seed << ',' << r.n << ',' << r.m << ',' << fmt(a.gamma) << ','
        << fmt(a.delta_a) << ',' << fmt(a.delta_g) << ',' << fmt(r.plan_ms)
        << ',' << fmt(r.objective) << ',' << csv_quote(times.str()) << ','
        << r.violation_count << ',';
    if (r.oracle_objective >= 0.0) {
      csv << fmt(r.oracle_objective) << ','
          << fmt(r.objective / r.oracle_objective);
    } else {
      csv << ',';
    }
    csv << '\n';
  }
  const fs::path path = resolve_out(a.out, "bench.csv");
  af::write_text_file(path.string(), csv.str());
  std::cout << "wrote " << path.string() << " (" << rows.size() << " rows)\n";

  if (a.emit_plot_data) {
    // Aggregate series for external plotting: one row per (n, m) cell.
    std::ostringstream plot;
    plot << "n,m,runs,median_plan_ms,mean_objective,min_objective,"
            "max_objective\n";
    for (std::size_t n : a.n_list) {
      for (std::size_t m : a.m_list) {
        std::vector<double> ms, obj;
        for (const auto& r : rows) {
          if (r.n == n && r.m == m) {
            ms.push_back(r.plan_ms);
            obj.push_back(r.objective);
          }
        }
        if (ms.empty()) continue;
        std::sort(ms.begin(), ms.end());
        const double median = ms[ms.size() / 2];
        double mean = 0.0, mn = obj[0], mx = obj[0];
        for (double o : obj) {
          mean += o;
          mn = std::min(mn, o);
          mx = std::max(mx, o);
        }
        mean /= static_cast<double>(obj.size());
        plot << n << ',' << m << ',' << obj.size() << ',' << fmt(median)
             << ',' << fmt(mean) << ',' << fmt(mn) << ',' << fmt(mx) << '\n';
      }
    }
    fs::path plot_path = path;
    plot_path.replace_filename(path.stem().string() + "_plot.csv");
    af::write_text_file(plot_path.string(), plot.str());
    std::cout << "wrote " << plot_path.string() << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Mission planning for cooperating ground carriers and aerial "
      "monitors: generate instances, plan, validate, simulate, benchmark."};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* gen_cmd =
      app.add_subcommand("gen", "Generate a random scenario file");
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--n", gen.n, "Number of monitoring points")
      ->required();
  gen_cmd->add_option("--m", gen.m, "Number of teams");
  gen_cmd->add_option("--preset", gen.preset,
                      "Anchor preset: table3|table4|custom");
  gen_cmd->add_option("--anchors", gen.anchors,
                      "Custom anchors \"sx,sy,fx,fy;...\" (preset custom)");
  gen_cmd->add_option("--delta-a", gen.delta_a, "Air margin (s)");
  gen_cmd->add_option("--delta-g", gen.delta_g, "Ground margin (s)");
  gen_cmd->add_option("--gamma", gen.gamma, "Recharge ratio");
  gen_cmd->add_option("--budget", gen.budget, "Max flight time (s)");
  gen_cmd->add_option("--out", gen.out, "Output path");

  PlanArgs plan;
  CLI::App* plan_cmd =
      app.add_subcommand("plan", "Plan a mission for a scenario file");
  plan_cmd->add_option("--scenario,--in", plan.scenario, "Scenario file")
      ->required();
  plan_cmd->add_option("--out", plan.out, "Output plan path");
  plan_cmd->add_option("--jobs", plan.jobs, "Concurrent team planners");

  ValidateArgs val;
  CLI::App* val_cmd =
      app.add_subcommand("validate", "Check a plan against its scenario");
  val_cmd->add_option("--scenario", val.scenario, "Scenario file")->required();
  val_cmd->add_option("--plan", val.plan, "Plan file")->required();

  SimulateArgs sim;
  CLI::App* sim_cmd = app.add_subcommand(
      "simulate", "Execute a plan in worlds with unknown obstacles");
  sim_cmd->add_option("--scenario", sim.scenario, "Scenario file")->required();
  sim_cmd->add_option("--plan", sim.plan, "Plan file")->required();
  sim_cmd->add_option("--seed", sim.seed, "First simulation seed");
  sim_cmd->add_option("--seeds", sim.seeds, "Number of simulations");
  sim_cmd->add_option("--obstacles", sim.obstacles,
                      "Unknown obstacles per simulation");
  sim_cmd->add_option("--max-size", sim.max_size,
                      "Max unknown obstacle footprint edge (m)");
  sim_cmd->add_option("--air-factor", sim.air_factor,
                      "Multiplier on realized flight times");
  sim_cmd->add_option("--budget-scale", sim.budget_scale,
                      "Scale on the adjustment budgets");
  sim_cmd->add_option("--out", sim.out, "Output CSV path");

  BenchArgs bench;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "Sweep (n, m) cells and emit metrics CSV");
  bench_cmd->add_option("--preset", bench.preset,
                        "Anchor preset: table3|table4|custom");
  bench_cmd->add_option("--anchors", bench.anchors,
                        "Custom anchors (preset custom)");
  bench_cmd->add_option("--n", bench.n_list, "Point counts")
      ->delimiter(',');
  bench_cmd->add_option("--m", bench.m_list, "Team counts")->delimiter(',');
  bench_cmd->add_option("--repeats", bench.repeats, "Seeds per cell");
  bench_cmd->add_option("--seed", bench.seed, "First seed");
  bench_cmd->add_option("--delta-a", bench.delta_a, "Air margin (s)");
  bench_cmd->add_option("--delta-g", bench.delta_g, "Ground margin (s)");
  bench_cmd->add_option("--gamma", bench.gamma, "Recharge ratio");
  bench_cmd->add_option("--jobs", bench.jobs, "Worker pool size");
  bench_cmd->add_option("--out", bench.out, "Output CSV path");
  bench_cmd->add_flag("--emit-plot-data", bench.emit_plot_data,
                      "Also write aggregated per-cell plot series");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadArgs;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen);
    if (plan_cmd->parsed()) return cmd_plan(plan);
    if (val_cmd->parsed()) return cmd_validate(val);
    if (sim_cmd->parsed()) return cmd_simulate(sim);
    if (bench_cmd->parsed()) return cmd_bench(bench);
    std::cerr << "error: no subcommand\n";
    return kExitBadArgs;
  } catch (const af::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const af::TooLargeError& e) {
    std::cerr << "too large: " << e.what() << "\n";
    return kExitTooLarge;
  } catch (const af::GenerationFailedError& e) {
    std::cerr << "generation failed: " << e.what() << "\n";
    return kExitGeneration;
  } catch (const af::InfeasibleInstanceError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const af::DisconnectedGroundError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArgs;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
}
