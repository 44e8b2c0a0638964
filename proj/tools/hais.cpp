// Command-line front end: graph generation and validation, single decodes,
// the immune-system optimizer, the exhaustive oracle, and benchmark sweeps.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hais/ais.hpp"
#include "hais/decoder.hpp"
#include "hais/gantt.hpp"
#include "hais/generators.hpp"
#include "hais/graph.hpp"
#include "hais/io.hpp"
#include "hais/oracle.hpp"
#include "hais/platform.hpp"
#include "hais/report.hpp"
#include "hais/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitInfeasible = 2;

bool parse_on_off(const std::string& v, const char* flag) {
  if (v == "on") return true;
  if (v == "off") return false;
  throw hais::ParseError(0, std::string(flag) + " must be 'on' or 'off'");
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw hais::ParseError(0, "cannot write file: " + path);
  out << content;
}

struct GenOptions {
  std::string kind;
  int n = 5;
  int layers = 3;
  int width = 3;
  double density = 0.5;
  int procs = 2;
  hais::Interval pt{1, 20};
  hais::Interval w{1, 20};
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen(const GenOptions& o) {
  hais::TaskGraph g;
  if (o.kind == "gaussian")
    g = hais::gen_gaussian_elimination(o.n, o.procs, o.pt, o.w, o.seed);
  else if (o.kind == "random-layered")
    g = hais::gen_random_layered(o.layers, o.width, o.density, o.procs, o.pt,
                                 o.w, o.seed);
  else
    throw hais::ParseError(0, "unknown generator kind '" + o.kind + "'");
  const std::string text = hais::serialize_taskgraph(g);
  if (o.out.empty())
    std::cout << text;
  else
    write_file(o.out, text);
  return kExitOk;
}

int run_validate(const std::string& dag_path) {
  hais::TaskGraph g = hais::load_taskgraph(dag_path);
  auto diags = hais::validate(g);
  for (const std::string& d : diags) std::cout << d << "\n";
  if (diags.empty()) {
    std::cout << "valid: " << g.real_task_count() << " tasks, "
              << g.edges.size() << " edges, " << g.proc_count
              << " processors\n";
    return kExitOk;
  }
  return kExitInputError;
}

void emit_gantt(const std::string& format, const std::string& out_path,
                const hais::Schedule& s, const hais::TaskGraph& g) {
  if (format.empty()) return;
  std::string content;
  if (format == "text")
    content = hais::gantt_text(s, g);
  else if (format == "svg")
    content = hais::gantt_svg(s, g);
  else
    throw hais::ParseError(0, "gantt format must be 'text' or 'svg'");
  if (out_path.empty())
    std::cout << content;
  else
    write_file(out_path, content);
}

int run_schedule(const std::string& dag_path, const std::string& plat_path,
                 const std::string& antibody_text, const std::string& sns,
                 const std::string& gantt, const std::string& gantt_out) {
  hais::TaskGraph g = hais::load_taskgraph(dag_path);
  hais::Platform pf = hais::load_platform(plat_path);
  hais::Antibody a = hais::parse_antibody(antibody_text);
  if (static_cast<int>(a.size()) != g.real_task_count())
    throw hais::ParseError(0, "antibody has " + std::to_string(a.size()) +
                                  " cells, graph has " +
                                  std::to_string(g.real_task_count()) +
                                  " real tasks");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < 0 || a[i] >= pf.proc_count)
      throw hais::ParseError(0, "antibody cell " + std::to_string(i) +
                                    " value " + std::to_string(a[i]) +
                                    " outside [0, " +
                                    std::to_string(pf.proc_count - 1) + "]");

  hais::Schedule s = hais::decode(g, pf, a, parse_on_off(sns, "--sns"));
  auto problems = hais::check_schedule(g, pf, s, &a);
  if (!problems.empty()) {
    for (const std::string& p : problems) std::cerr << "error: " << p << "\n";
    return kExitInfeasible;
  }
  std::cout << hais::serialize_schedule(s, g);
  emit_gantt(gantt, gantt_out, s, g);
  return kExitOk;
}

hais::RunReport make_report(const std::string& dag_path,
                            const std::string& plat_path,
                            const hais::TaskGraph& g,
                            const hais::OptimizerConfig& cfg,
                            const hais::OptimizeResult& res,
                            double wall_time_s) {
  hais::RunReport r;
  r.instance = dag_path;
  r.platform = plat_path;
  r.config = cfg;
  r.best_makespan = res.best_makespan;
  r.best_antibody = hais::format_antibody(res.best_antibody);
  r.wall_time_s = wall_time_s;
  r.history = res.history;
  for (const hais::ScheduleEntry& e : res.best_schedule.entries)
    r.schedule.push_back(
        {g.original_ids[e.task], e.proc, e.start, e.finish});
  return r;
}

int run_optimize(const std::string& dag_path, const std::string& plat_path,
                 const hais::OptimizerConfig& cfg,
                 const std::string& json_out, const std::string& gantt,
                 const std::string& gantt_out) {
  hais::TaskGraph g = hais::load_taskgraph(dag_path);
  hais::Platform pf = hais::load_platform(plat_path);
  hais::validate(cfg);

  const auto t0 = std::chrono::steady_clock::now();
  hais::OptimizeResult res = hais::optimize(g, pf, cfg);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  auto problems = hais::check_schedule(g, pf, res.best_schedule,
                                       &res.best_antibody);
  if (!problems.empty()) {
    for (const std::string& p : problems) std::cerr << "error: " << p << "\n";
    return kExitInfeasible;
  }

  hais::RunReport report =
      make_report(dag_path, plat_path, g, cfg, res, wall);
  std::cout << hais::report_text(report);
  if (!json_out.empty()) write_file(json_out, to_json(report).dump(2) + "\n");
  emit_gantt(gantt, gantt_out, res.best_schedule, g);
  return kExitOk;
}

int run_oracle(const std::string& dag_path, const std::string& plat_path,
               const std::string& sns, std::uint64_t limit) {
  hais::TaskGraph g = hais::load_taskgraph(dag_path);
  hais::Platform pf = hais::load_platform(plat_path);
  hais::OracleResult res =
      hais::exhaustive_best(g, pf, parse_on_off(sns, "--sns"), limit);
  std::cout << "optimum " << hais::format_time(res.best_makespan) << "\n";
  std::cout << "antibody " << hais::format_antibody(res.best) << "\n";
  std::cout << "enumerated " << res.enumerated << "\n";
  return kExitOk;
}

// Suite descriptor (JSON): {"instances": [{"dag", "platform", "config"?,
// "seeds"? | "repetitions"?}]}. Paths are resolved relative to the
// descriptor file.
int run_bench(const std::string& suite_path, const std::string& json_out,
              int threads) {
  std::ifstream in(suite_path);
  if (!in) throw hais::ParseError(0, "cannot open suite file: " + suite_path);
  nlohmann::json suite;
  try {
    in >> suite;
  } catch (const nlohmann::json::exception& e) {
    throw hais::ParseError(0, suite_path + ": " + e.what());
  }
  const auto base = std::filesystem::path(suite_path).parent_path();
  auto resolve = [&base](const std::string& p) {
    std::filesystem::path fp(p);
    return fp.is_absolute() ? fp.string() : (base / fp).string();
  };

  nlohmann::json rows = nlohmann::json::array();
  std::cout << "instance ais_min ais_mean ais_max greedy oracle\n";
  for (const auto& inst : suite.value("instances", nlohmann::json::array())) {
    const std::string dag = inst.at("dag").get<std::string>();
    const std::string plat = inst.at("platform").get<std::string>();
    hais::TaskGraph g;
    hais::Platform pf;
    hais::OptimizerConfig cfg;
    try {
      g = hais::load_taskgraph(resolve(dag));
      pf = hais::load_platform(resolve(plat));
      if (inst.contains("config"))
        cfg = hais::load_config(resolve(inst.at("config").get<std::string>()));
    } catch (const hais::ParseError& e) {
      throw hais::ParseError(0, dag + ": " + e.what());
    }
    cfg.threads = threads;

    std::vector<std::uint64_t> seeds;
    if (inst.contains("seeds"))
      for (const auto& s : inst.at("seeds"))
        seeds.push_back(s.get<std::uint64_t>());
    else
      for (std::uint64_t s = 0;
           s < inst.value("repetitions", std::uint64_t{1}); ++s)
        seeds.push_back(s);

    double best = 0.0, worst = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      cfg.seed = seeds[i];
      const hais::Time ms = hais::optimize(g, pf, cfg).best_makespan;
      if (i == 0) best = worst = ms;
      best = std::min(best, ms);
      worst = std::max(worst, ms);
      sum += ms;
    }
    const double mean = seeds.empty() ? 0.0 : sum / seeds.size();
    const hais::Time greedy = hais::greedy_blevel_baseline(g, pf).makespan;

    nlohmann::json row = {{"dag", dag},
                          {"platform", plat},
                          {"ais_min", best},
                          {"ais_mean", mean},
                          {"ais_max", worst},
                          {"greedy", greedy}};
    std::cout << "row " << dag << ' ' << hais::format_time(best) << ' '
              << mean << ' ' << hais::format_time(worst) << ' '
              << hais::format_time(greedy) << ' ';
    try {
      const hais::OracleResult orc = hais::exhaustive_best(g, pf, cfg.sns);
      row["oracle"] = orc.best_makespan;
      std::cout << hais::format_time(orc.best_makespan) << "\n";
    } catch (const hais::OracleLimitExceeded&) {
      row["oracle"] = nullptr;
      std::cout << "-\n";
    }
    rows.push_back(row);
  }
  if (!json_out.empty())
    write_file(json_out,
               nlohmann::json{{"rows", rows}}.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Immune-system scheduler for task graphs on heterogeneous "
               "processors"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 0;
  std::string sns = "on";
  int threads = 1;
  app.add_option("--seed", seed, "master random seed");
  app.add_option("--sns", sns, "gap filling: on|off")
      ->check(CLI::IsMember({"on", "off"}));
  app.add_option("--threads", threads, "worker threads")
      ->check(CLI::PositiveNumber);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a task graph file");
  GenOptions go;
  gen->add_option("kind", go.kind, "gaussian | random-layered")->required();
  gen->add_option("--n", go.n, "matrix dimension (gaussian)");
  gen->add_option("--layers", go.layers, "layer count (random-layered)");
  gen->add_option("--width", go.width, "tasks per layer (random-layered)");
  gen->add_option("--density", go.density, "edge probability (random-layered)");
  gen->add_option("--procs", go.procs, "processor count for PT rows");
  gen->add_option("--pt-min", go.pt.lo);
  gen->add_option("--pt-max", go.pt.hi);
  gen->add_option("--w-min", go.w.lo);
  gen->add_option("--w-max", go.w.hi);
  gen->add_option("-o,--output", go.out, "output path (default stdout)");

  // validate
  auto* val = app.add_subcommand("validate", "validate a task graph file");
  std::string val_dag;
  val->add_option("dag", val_dag)->required();

  // schedule
  auto* sch = app.add_subcommand("schedule", "decode one antibody");
  std::string sch_dag, sch_plat, sch_antibody, sch_gantt, sch_gantt_out;
  sch->add_option("dag", sch_dag)->required();
  sch->add_option("platform", sch_plat)->required();
  sch->add_option("--antibody", sch_antibody,
                  "comma-separated processor indices")
      ->required();
  sch->add_option("--gantt", sch_gantt, "emit gantt chart: text|svg");
  sch->add_option("--gantt-out", sch_gantt_out,
                  "gantt output path (default stdout)");

  // optimize
  auto* opt = app.add_subcommand("optimize", "run the immune optimizer");
  std::string opt_dag, opt_plat, opt_config, opt_json, opt_gantt,
      opt_gantt_out;
  hais::OptimizerConfig flag_cfg;
  bool has_iters = false, has_pop = false, has_clones = false,
       has_rate = false, has_aff = false;
  opt->add_option("dag", opt_dag)->required();
  opt->add_option("platform", opt_plat)->required();
  opt->add_option("--config", opt_config, "config file path");
  opt->add_option("--iterations", flag_cfg.iterations, "K")
      ->each([&](const std::string&) { has_iters = true; });
  opt->add_option("--popsize", flag_cfg.popsize)
      ->each([&](const std::string&) { has_pop = true; });
  opt->add_option("--clones", flag_cfg.clones)
      ->each([&](const std::string&) { has_clones = true; });
  opt->add_option("--selection-rate", flag_cfg.selection_rate)
      ->each([&](const std::string&) { has_rate = true; });
  opt->add_option("--aff", flag_cfg.affinity_threshold)
      ->each([&](const std::string&) { has_aff = true; });
  opt->add_option("--json", opt_json, "write machine-readable report");
  opt->add_option("--gantt", opt_gantt, "emit gantt chart: text|svg");
  opt->add_option("--gantt-out", opt_gantt_out);

  // oracle
  auto* orc = app.add_subcommand("oracle", "exhaustive assignment search");
  std::string orc_dag, orc_plat;
  std::uint64_t orc_limit = hais::kDefaultOracleLimit;
  orc->add_option("dag", orc_dag)->required();
  orc->add_option("platform", orc_plat)->required();
  orc->add_option("--limit", orc_limit, "max assignments to enumerate");

  // bench
  auto* ben = app.add_subcommand("bench", "run a benchmark suite");
  std::string ben_suite, ben_json;
  ben->add_option("suite", ben_suite, "suite descriptor (JSON)")->required();
  ben->add_option("--json", ben_json, "write machine-readable results");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      go.seed = seed;
      return run_gen(go);
    }
    if (*val) return run_validate(val_dag);
    if (*sch)
      return run_schedule(sch_dag, sch_plat, sch_antibody, sns, sch_gantt,
                          sch_gantt_out);
    if (*opt) {
      hais::OptimizerConfig cfg;
      if (!opt_config.empty()) cfg = hais::load_config(opt_config);
      if (has_iters) cfg.iterations = flag_cfg.iterations;
      if (has_pop) cfg.popsize = flag_cfg.popsize;
      if (has_clones) cfg.clones = flag_cfg.clones;
      if (has_rate) cfg.selection_rate = flag_cfg.selection_rate;
      if (has_aff) cfg.affinity_threshold = flag_cfg.affinity_threshold;
      if (app.count("--seed")) cfg.seed = seed;
      if (app.count("--sns")) cfg.sns = parse_on_off(sns, "--sns");
      cfg.threads = threads;
      return run_optimize(opt_dag, opt_plat, cfg, opt_json, opt_gantt,
                          opt_gantt_out);
    }
    if (*orc) return run_oracle(orc_dag, orc_plat, sns, orc_limit);
    if (*ben) return run_bench(ben_suite, ben_json, threads);
  } catch (const hais::OracleLimitExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const hais::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}
