#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hais/decoder.hpp"
#include "hais/graph.hpp"
#include "hais/platform.hpp"

namespace hais {

struct OracleResult {
  Antibody best;
  Time best_makespan = 0.0;
  std::uint64_t enumerated = 0;
};

class OracleLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultOracleLimit = 10'000'000;

// Decodes every assignment string with the list decoder and returns the
// minimum makespan. Lexicographically smallest argmin wins ties, which the
// odometer enumeration order yields for free.
inline OracleResult exhaustive_best(const TaskGraph& g, const Platform& pf,
                                    bool sns,
                                    std::uint64_t limit = kDefaultOracleLimit) {
  const int cells = g.real_task_count();
  std::uint64_t total = 1;
  for (int i = 0; i < cells; ++i) {
    if (total > limit / static_cast<std::uint64_t>(pf.proc_count) + 1)
      throw OracleLimitExceeded("search space exceeds enumeration limit");
    total *= static_cast<std::uint64_t>(pf.proc_count);
    if (total > limit)
      throw OracleLimitExceeded("search space exceeds enumeration limit");
  }

  OracleResult res;
  Antibody a(cells, 0);
  while (true) {
    const Time ms = decode(g, pf, a, sns).makespan;
    ++res.enumerated;
    if (res.enumerated == 1 || ms < res.best_makespan) {
      res.best = a;
      res.best_makespan = ms;
    }
    int i = cells - 1;
    while (i >= 0 && a[i] == pf.proc_count - 1) a[i--] = 0;
    if (i < 0) break;
    ++a[i];
  }
  return res;
}

// List-scheduling comparator: tasks ordered by a static b-level built from
// mean processing times and the mean off-diagonal comm rate; each task goes
// to the processor finishing it earliest given the partial schedule.
inline Schedule greedy_blevel_baseline(const TaskGraph& g,
                                       const Platform& pf) {
  const int n = g.task_count();
  Schedule s;
  s.proc_order.assign(pf.proc_count, {});
  if (n <= 1) return s;
  s.entries.resize(n - 1);

  std::vector<Time> mean_pt(n, 0.0);
  for (int t = 0; t < n; ++t) {
    for (Time pt : g.tasks[t].proc_times) mean_pt[t] += pt;
    mean_pt[t] /= static_cast<double>(pf.proc_count);
  }
  double mean_rate = 0.0;
  if (pf.proc_count > 1) {
    for (int i = 0; i < pf.proc_count; ++i)
      for (int j = 0; j < pf.proc_count; ++j)
        if (i != j) mean_rate += pf.comm[i][j];
    mean_rate /= static_cast<double>(pf.proc_count) *
                 static_cast<double>(pf.proc_count - 1);
  }

  std::vector<Time> bl(n, 0.0);
  for (auto it = g.topo_order.rbegin(); it != g.topo_order.rend(); ++it) {
    const int t = *it;
    Time tail = 0.0;
    for (std::size_t k = 0; k < g.successors[t].size(); ++k)
      tail = std::max(tail, g.succ_weights[t][k] * mean_rate +
                                bl[g.successors[t][k]]);
    bl[t] = mean_pt[t] + tail;
  }

  // descending static b-level is a topological order for positive mean PTs
  std::vector<int> order;
  for (int t = 1; t < n; ++t) order.push_back(t);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    if (bl[x] != bl[y]) return bl[x] > bl[y];
    return x < y;
  });

  std::vector<int> proc_of(n, 0);
  std::vector<Time> finish(n, 0.0);
  std::vector<Time> proc_free(pf.proc_count, 0.0);
  for (int t : order) {
    int best_p = 0;
    Time best_finish = 0.0;
    Time best_start = 0.0;
    for (int p = 0; p < pf.proc_count; ++p) {
      Time est = 0.0;
      for (std::size_t k = 0; k < g.predecessors[t].size(); ++k) {
        const int pred = g.predecessors[t][k];
        est = std::max(est, finish[pred] + g.pred_weights[t][k] *
                                               pf.rate(proc_of[pred], p));
      }
      const Time start = std::max(est, proc_free[p]);
      const Time fin = start + g.tasks[t].proc_times[p];
      if (p == 0 || fin < best_finish - kTimeEps) {
        best_p = p;
        best_finish = fin;
        best_start = start;
      }
    }
    proc_of[t] = best_p;
    finish[t] = best_finish;
    proc_free[best_p] = best_finish;
    s.entries[t - 1] = {t, best_p, best_start, best_finish};
    s.proc_order[best_p].push_back(t);
  }

  Time cmax = 0.0;
  for (const ScheduleEntry& e : s.entries) cmax = std::max(cmax, e.finish);
  s.makespan = cmax;
  return s;
}

}  // namespace hais
