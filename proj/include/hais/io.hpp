#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hais/decoder.hpp"
#include "hais/graph.hpp"
#include "hais/platform.hpp"

namespace hais {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& msg)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg
                                    : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Prints integral times without a decimal point so fixture files and
// serialized schedules stay byte-stable.
inline std::string format_time(Time v) {
  if (std::fabs(v - std::llround(v)) < 1e-9)
    return std::to_string(std::llround(v));
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

namespace detail {

inline std::vector<std::string> tokenize_line(const std::string& line) {
  std::string body = line;
  if (auto pos = body.find('#'); pos != std::string::npos)
    body.resize(pos);
  std::istringstream is(body);
  std::vector<std::string> toks;
  std::string t;
  while (is >> t) toks.push_back(t);
  return toks;
}

inline double parse_number(const std::string& tok, int line) {
  try {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "expected a number, got '" + tok + "'");
  }
}

inline long long parse_int(const std::string& tok, int line) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "expected an integer, got '" + tok + "'");
  }
}

}  // namespace detail

// Line-oriented DAG format:
//   procs <P_c>                    (must precede task lines)
//   task <id> <pt_0> ... <pt_{P_c-1}>
//   edge <src> <dst> <weight>
// Ids are arbitrary non-negative integers, remapped to internal indices in
// declaration order; the original ids are kept for reporting. The virtual
// entry is inserted unless the graph is already in canonical form.
inline TaskGraph parse_taskgraph(std::istream& in) {
  TaskGraph raw;
  raw.proc_count = -1;
  std::map<long long, int> index_of;
  struct RawEdge {
    long long src, dst;
    double weight;
    int line;
  };
  std::vector<RawEdge> raw_edges;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::tokenize_line(line);
    if (toks.empty()) continue;
    if (toks[0] == "procs") {
      if (toks.size() != 2) throw ParseError(lineno, "usage: procs <count>");
      if (raw.proc_count >= 0)
        throw ParseError(lineno, "duplicate procs declaration");
      long long p = detail::parse_int(toks[1], lineno);
      if (p < 1) throw ParseError(lineno, "processor count must be positive");
      raw.proc_count = static_cast<int>(p);
    } else if (toks[0] == "task") {
      if (raw.proc_count < 0)
        throw ParseError(lineno, "procs must precede task lines");
      if (toks.size() < 2)
        throw ParseError(lineno, "usage: task <id> <pt...>");
      long long id = detail::parse_int(toks[1], lineno);
      if (id < 0) throw ParseError(lineno, "task id must be non-negative");
      if (index_of.count(id))
        throw ParseError(lineno, "duplicate task id " + std::to_string(id));
      if (static_cast<int>(toks.size()) - 2 != raw.proc_count)
        throw ParseError(lineno, "processing-time row has " +
                                     std::to_string(toks.size() - 2) +
                                     " entries, expected " +
                                     std::to_string(raw.proc_count));
      TaskNode node;
      node.id = static_cast<int>(raw.tasks.size());
      for (std::size_t i = 2; i < toks.size(); ++i) {
        double pt = detail::parse_number(toks[i], lineno);
        if (pt < 0) throw ParseError(lineno, "negative processing time");
        node.proc_times.push_back(pt);
      }
      index_of[id] = node.id;
      raw.tasks.push_back(node);
      raw.original_ids.push_back(static_cast<int>(id));
    } else if (toks[0] == "edge") {
      if (toks.size() != 4)
        throw ParseError(lineno, "usage: edge <src> <dst> <weight>");
      raw_edges.push_back({detail::parse_int(toks[1], lineno),
                           detail::parse_int(toks[2], lineno),
                           detail::parse_number(toks[3], lineno), lineno});
    } else {
      throw ParseError(lineno, "unknown directive '" + toks[0] + "'");
    }
  }
  if (raw.proc_count < 0) throw ParseError(0, "missing procs declaration");

  for (const auto& e : raw_edges) {
    auto si = index_of.find(e.src);
    auto di = index_of.find(e.dst);
    if (si == index_of.end())
      throw ParseError(e.line, "edge references unknown task " +
                                   std::to_string(e.src));
    if (di == index_of.end())
      throw ParseError(e.line, "edge references unknown task " +
                                   std::to_string(e.dst));
    if (si->second == di->second)
      throw ParseError(e.line,
                       "self-edge on task " + std::to_string(e.src));
    if (e.weight < 0) throw ParseError(e.line, "negative edge weight");
    raw.edges.push_back({si->second, di->second, e.weight});
  }
  raw.finalize();
  if (!raw.is_acyclic()) throw ParseError(0, "cycle detected");

  TaskGraph g = add_virtual_entry(raw);
  auto diags = validate(g);
  if (!diags.empty()) throw ParseError(0, diags.front());
  return g;
}

inline TaskGraph parse_taskgraph(const std::string& text) {
  std::istringstream is(text);
  return parse_taskgraph(is);
}

inline TaskGraph load_taskgraph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open DAG file: " + path);
  return parse_taskgraph(in);
}

// Serializes the graph without the virtual entry, using original ids.
// Byte-identical for identical graphs.
inline std::string serialize_taskgraph(const TaskGraph& g) {
  std::ostringstream os;
  os << "procs " << g.proc_count << "\n";
  for (int t = 1; t < g.task_count(); ++t) {
    os << "task " << g.original_ids[t];
    for (Time pt : g.tasks[t].proc_times) os << ' ' << format_time(pt);
    os << "\n";
  }
  for (const Edge& e : g.edges) {
    if (e.src == 0) continue;
    os << "edge " << g.original_ids[e.src] << ' ' << g.original_ids[e.dst]
       << ' ' << format_time(e.weight) << "\n";
  }
  return os.str();
}

// Platform format:
//   procs <P_c>
//   comm uniform <rate>       or repeated
//   comm <i> <j> <rate>       (symmetric pair implied; re-declaring a pair
//                              with a different value is an asymmetry error)
inline Platform parse_platform(std::istream& in) {
  int procs = -1;
  double uniform = 0.0;
  bool have_uniform = false;
  struct PairRate {
    int i, j;
    double rate;
    int line;
  };
  std::vector<PairRate> pairs;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::tokenize_line(line);
    if (toks.empty()) continue;
    if (toks[0] == "procs") {
      if (toks.size() != 2) throw ParseError(lineno, "usage: procs <count>");
      long long p = detail::parse_int(toks[1], lineno);
      if (p < 1) throw ParseError(lineno, "processor count must be positive");
      procs = static_cast<int>(p);
    } else if (toks[0] == "comm") {
      if (toks.size() == 3 && toks[1] == "uniform") {
        uniform = detail::parse_number(toks[2], lineno);
        if (uniform < 0) throw ParseError(lineno, "negative rate");
        have_uniform = true;
      } else if (toks.size() == 4) {
        int i = static_cast<int>(detail::parse_int(toks[1], lineno));
        int j = static_cast<int>(detail::parse_int(toks[2], lineno));
        double r = detail::parse_number(toks[3], lineno);
        if (r < 0) throw ParseError(lineno, "negative rate");
        pairs.push_back({i, j, r, lineno});
      } else {
        throw ParseError(lineno, "usage: comm uniform <rate> | comm <i> <j> <rate>");
      }
    } else {
      throw ParseError(lineno, "unknown directive '" + toks[0] + "'");
    }
  }
  if (procs < 0) throw ParseError(0, "missing procs declaration");

  Platform pf = make_uniform_platform(procs, have_uniform ? uniform : 0.0);
  std::vector<std::vector<bool>> set(procs, std::vector<bool>(procs, false));
  for (const auto& p : pairs) {
    if (p.i < 0 || p.j < 0 || p.i >= procs || p.j >= procs)
      throw ParseError(p.line, "processor index out of range");
    if (p.i == p.j) {
      if (p.rate != 0.0)
        throw ParseError(p.line, "nonzero diagonal comm rate");
      continue;
    }
    if (set[p.i][p.j] && pf.comm[p.i][p.j] != p.rate)
      throw ParseError(p.line, "asymmetric comm rates for pair " +
                                   std::to_string(p.i) + "," +
                                   std::to_string(p.j));
    pf.comm[p.i][p.j] = pf.comm[p.j][p.i] = p.rate;
    set[p.i][p.j] = set[p.j][p.i] = true;
  }
  return pf;
}

inline Platform parse_platform(const std::string& text) {
  std::istringstream is(text);
  return parse_platform(is);
}

inline Platform load_platform(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open platform file: " + path);
  return parse_platform(in);
}

// One `sched` line per real task plus the final makespan line. Tasks are
// reported with their original ids.
inline std::string serialize_schedule(const Schedule& s, const TaskGraph& g) {
  std::ostringstream os;
  for (const ScheduleEntry& e : s.entries)
    os << "sched " << g.original_ids[e.task] << ' ' << e.proc << ' '
       << format_time(e.start) << ' ' << format_time(e.finish) << "\n";
  os << "makespan " << format_time(s.makespan) << "\n";
  return os.str();
}

inline std::string format_antibody(const Antibody& a) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(a[i]);
  }
  return out;
}

inline Antibody parse_antibody(const std::string& text) {
  Antibody a;
  std::string tok;
  std::istringstream is(text);
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) throw ParseError(0, "empty antibody cell");
    a.push_back(static_cast<int>(detail::parse_int(tok, 0)));
  }
  return a;
}

}  // namespace hais
