#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hais/ais.hpp"
#include "hais/decoder.hpp"
#include "hais/graph.hpp"
#include "hais/io.hpp"

namespace hais {

// Config file: one `key value` pair per line, `#` comments. Keys: K,
// popsize, clones, selection_rate, aff, sns (on|off), seed. Unset keys keep
// their defaults.
inline OptimizerConfig parse_config(std::istream& in) {
  OptimizerConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::tokenize_line(line);
    if (toks.empty()) continue;
    if (toks.size() != 2)
      throw ParseError(lineno, "expected 'key value'");
    const std::string& key = toks[0];
    const std::string& val = toks[1];
    if (key == "K")
      cfg.iterations = static_cast<int>(detail::parse_int(val, lineno));
    else if (key == "popsize")
      cfg.popsize = static_cast<int>(detail::parse_int(val, lineno));
    else if (key == "clones")
      cfg.clones = static_cast<int>(detail::parse_int(val, lineno));
    else if (key == "selection_rate")
      cfg.selection_rate = detail::parse_number(val, lineno);
    else if (key == "aff")
      cfg.affinity_threshold = detail::parse_number(val, lineno);
    else if (key == "sns") {
      if (val == "on")
        cfg.sns = true;
      else if (val == "off")
        cfg.sns = false;
      else
        throw ParseError(lineno, "sns must be 'on' or 'off'");
    } else if (key == "seed")
      cfg.seed = static_cast<std::uint64_t>(detail::parse_int(val, lineno));
    else
      throw ParseError(lineno, "unknown config key '" + key + "'");
  }
  return cfg;
}

inline OptimizerConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open config file: " + path);
  return parse_config(in);
}

struct RunReport {
  std::string instance;
  std::string platform;
  OptimizerConfig config;
  Time best_makespan = 0.0;
  std::string best_antibody;  // comma-separated cells
  double wall_time_s = 0.0;
  RunHistory history;
  std::vector<ScheduleEntry> schedule;  // with original task ids
};

inline nlohmann::json to_json(const RunReport& r) {
  nlohmann::json j;
  j["instance"] = r.instance;
  j["platform"] = r.platform;
  j["config"] = {{"K", r.config.iterations},
                 {"popsize", r.config.popsize},
                 {"clones", r.config.clones},
                 {"selection_rate", r.config.selection_rate},
                 {"aff", r.config.affinity_threshold},
                 {"sns", r.config.sns},
                 {"seed", r.config.seed},
                 {"threads", r.config.threads}};
  j["best_makespan"] = r.best_makespan;
  j["best_antibody"] = r.best_antibody;
  j["wall_time_s"] = r.wall_time_s;
  nlohmann::json hist = nlohmann::json::array();
  for (const IterationStats& it : r.history.iterations)
    hist.push_back(
        {{"best", it.best}, {"mean", it.mean}, {"diversity", it.diversity}});
  j["history"] = hist;
  nlohmann::json sched = nlohmann::json::array();
  for (const ScheduleEntry& e : r.schedule)
    sched.push_back({{"task", e.task},
                     {"proc", e.proc},
                     {"ast", e.start},
                     {"aft", e.finish}});
  j["schedule"] = sched;
  return j;
}

inline RunReport report_from_json(const nlohmann::json& j) {
  RunReport r;
  r.instance = j.at("instance").get<std::string>();
  r.platform = j.at("platform").get<std::string>();
  const auto& c = j.at("config");
  r.config.iterations = c.at("K").get<int>();
  r.config.popsize = c.at("popsize").get<int>();
  r.config.clones = c.at("clones").get<int>();
  r.config.selection_rate = c.at("selection_rate").get<double>();
  r.config.affinity_threshold = c.at("aff").get<double>();
  r.config.sns = c.at("sns").get<bool>();
  r.config.seed = c.at("seed").get<std::uint64_t>();
  r.config.threads = c.at("threads").get<int>();
  r.best_makespan = j.at("best_makespan").get<double>();
  r.best_antibody = j.at("best_antibody").get<std::string>();
  r.wall_time_s = j.at("wall_time_s").get<double>();
  for (const auto& it : j.at("history")) {
    IterationStats s;
    s.best = it.at("best").get<double>();
    s.mean = it.at("mean").get<double>();
    s.diversity = it.at("diversity").get<double>();
    r.history.iterations.push_back(s);
  }
  for (const auto& e : j.at("schedule"))
    r.schedule.push_back({e.at("task").get<int>(), e.at("proc").get<int>(),
                          e.at("ast").get<double>(),
                          e.at("aft").get<double>()});
  return r;
}

// Key-value header plus history and schedule tables; the human-readable
// twin of the JSON form.
inline std::string report_text(const RunReport& r) {
  std::ostringstream os;
  os << "instance " << r.instance << "\n";
  os << "platform " << r.platform << "\n";
  os << "K " << r.config.iterations << "\n";
  os << "popsize " << r.config.popsize << "\n";
  os << "clones " << r.config.clones << "\n";
  os << "selection_rate " << r.config.selection_rate << "\n";
  os << "aff " << r.config.affinity_threshold << "\n";
  os << "sns " << (r.config.sns ? "on" : "off") << "\n";
  os << "seed " << r.config.seed << "\n";
  os << "threads " << r.config.threads << "\n";
  os << "best_antibody " << r.best_antibody << "\n";
  os << "best_makespan " << format_time(r.best_makespan) << "\n";
  os << "wall_time_s " << r.wall_time_s << "\n";
  os << "history iter best mean diversity\n";
  for (std::size_t i = 0; i < r.history.iterations.size(); ++i) {
    const IterationStats& it = r.history.iterations[i];
    os << "hist " << (i + 1) << ' ' << format_time(it.best) << ' '
       << it.mean << ' ' << it.diversity << "\n";
  }
  for (const ScheduleEntry& e : r.schedule)
    os << "sched " << e.task << ' ' << e.proc << ' ' << format_time(e.start)
       << ' ' << format_time(e.finish) << "\n";
  os << "makespan " << format_time(r.best_makespan) << "\n";
  return os.str();
}

}  // namespace hais
