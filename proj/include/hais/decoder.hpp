#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <queue>
#include <vector>

#include "hais/graph.hpp"
#include "hais/platform.hpp"

namespace hais {

// Candidate solution: one processor index per real task. Cell k assigns
// task k+1; the virtual entry is pinned to processor 0 and not encoded.
using Antibody = std::vector<int>;

struct ScheduleEntry {
  int task = 0;  // internal task index (>= 1)
  int proc = 0;
  Time start = 0.0;   // AST
  Time finish = 0.0;  // AFT = AST + PT(task, proc)
};

struct Schedule {
  std::vector<ScheduleEntry> entries;        // one per real task, by index
  std::vector<std::vector<int>> proc_order;  // executed sequence per proc
  Time makespan = 0.0;
};

struct LevelTable {
  std::vector<Time> b_level;  // longest path to an exit, per task
  std::vector<Time> rank;     // sum of successor b-levels, per task
};

inline bool antibody_valid(const Antibody& a, const TaskGraph& g,
                           const Platform& pf) {
  if (static_cast<int>(a.size()) != g.real_task_count()) return false;
  return std::all_of(a.begin(), a.end(),
                     [&pf](int p) { return p >= 0 && p < pf.proc_count; });
}

// b-level with respect to the solution: path lengths use the processing
// time on each task's assigned processor and the actual pairwise comm cost.
inline std::vector<Time> compute_b_levels(const TaskGraph& g,
                                          const Platform& pf,
                                          const Antibody& a) {
  const int n = g.task_count();
  auto proc_of = [&a](int t) { return t == 0 ? 0 : a[t - 1]; };
  std::vector<Time> b(n, 0.0);
  for (auto it = g.topo_order.rbegin(); it != g.topo_order.rend(); ++it) {
    const int t = *it;
    Time tail = 0.0;
    for (std::size_t k = 0; k < g.successors[t].size(); ++k) {
      const int s = g.successors[t][k];
      const Time comm =
          g.succ_weights[t][k] * pf.rate(proc_of(t), proc_of(s));
      tail = std::max(tail, comm + b[s]);
    }
    b[t] = g.tasks[t].proc_times[proc_of(t)] + tail;
  }
  return b;
}

inline std::vector<Time> compute_ranks(const TaskGraph& g,
                                       const std::vector<Time>& b_level) {
  const int n = g.task_count();
  std::vector<Time> rank(n, 0.0);
  for (int t = 0; t < n; ++t)
    for (int s : g.successors[t]) rank[t] += b_level[s];
  return rank;
}

inline LevelTable compute_levels(const TaskGraph& g, const Platform& pf,
                                 const Antibody& a) {
  LevelTable lt;
  lt.b_level = compute_b_levels(g, pf, a);
  lt.rank = compute_ranks(g, lt.b_level);
  return lt;
}

// A task waiting in a processor's ready queue during decoding.
struct ReadyTask {
  int task = 0;
  Time rank = 0.0;
  Time est = 0.0;  // earliest start on the assigned processor
};

// Gap-filling rule: among waiting ready tasks that can start now and whose
// processing time fits inside [t_free, next_start), pick the highest rank
// (ties: lower task id). The chosen filler never delays the next-by-rank
// task. `pt_of(task)` gives the processing time on this processor.
template <typename PtFn>
std::optional<int> pick_gap_filler(const std::vector<ReadyTask>& waiting,
                                   Time t_free, Time next_start,
                                   PtFn&& pt_of) {
  const Time gap = next_start - t_free;
  int best = -1;
  Time best_rank = 0.0;
  for (const ReadyTask& w : waiting) {
    if (w.est > t_free + kTimeEps) continue;
    if (pt_of(w.task) > gap + kTimeEps) continue;
    if (best < 0 || w.rank > best_rank + kTimeEps ||
        (std::abs(w.rank - best_rank) <= kTimeEps && w.task < best)) {
      best = w.task;
      best_rank = w.rank;
    }
  }
  if (best < 0) return std::nullopt;
  return best;
}

// Event-driven list decoder. Each processor keeps a queue of ready tasks
// ordered by descending rank (ties: lower id); a task is ready once all
// predecessors finished, at which point its EST is fixed. A free processor
// commits to the highest-rank ready task at AST = max(EST, now); with SNS
// enabled an idle gap before that start is filled by a waiting task that
// fits. Dispatched tasks are never reordered.
inline Schedule decode(const TaskGraph& g, const Platform& pf,
                       const Antibody& a, bool sns) {
  const int n = g.task_count();
  Schedule s;
  s.proc_order.assign(pf.proc_count, {});
  if (n <= 1) return s;
  s.entries.resize(n - 1);

  auto proc_of = [&a](int t) { return t == 0 ? 0 : a[t - 1]; };
  const std::vector<Time> b = compute_b_levels(g, pf, a);
  const std::vector<Time> rank = compute_ranks(g, b);

  std::vector<int> remaining(n);
  for (int t = 0; t < n; ++t)
    remaining[t] = static_cast<int>(g.predecessors[t].size());
  std::vector<Time> finish(n, 0.0);
  std::vector<std::vector<ReadyTask>> ready(pf.proc_count);
  std::vector<bool> busy(pf.proc_count, false);

  struct Completion {
    Time at;
    int task;
    int proc;
    bool operator>(const Completion& o) const {
      if (at != o.at) return at > o.at;
      return task > o.task;
    }
  };
  std::priority_queue<Completion, std::vector<Completion>,
                      std::greater<Completion>>
      events;
  // the virtual entry runs on processor 0 at time 0 with zero cost
  events.push({0.0, 0, 0});
  busy[0] = true;

  auto pop_best = [&](std::vector<ReadyTask>& q) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < q.size(); ++i) {
      if (q[i].rank > q[best].rank + kTimeEps ||
          (std::abs(q[i].rank - q[best].rank) <= kTimeEps &&
           q[i].task < q[best].task))
        best = i;
    }
    return best;
  };

  auto commit = [&](int t, int p, Time start, Time now) {
    const Time pt = g.tasks[t].proc_times[p];
    s.entries[t - 1] = {t, p, start, start + pt};
    s.proc_order[p].push_back(t);
    busy[p] = true;
    events.push({start + pt, t, p});
    (void)now;
  };

  while (!events.empty()) {
    const Time now = events.top().at;
    while (!events.empty() && events.top().at <= now + kTimeEps) {
      const Completion c = events.top();
      events.pop();
      busy[c.proc] = false;
      finish[c.task] = c.at;
      for (std::size_t k = 0; k < g.successors[c.task].size(); ++k) {
        const int succ = g.successors[c.task][k];
        if (--remaining[succ] > 0) continue;
        Time est = 0.0;
        for (std::size_t j = 0; j < g.predecessors[succ].size(); ++j) {
          const int pred = g.predecessors[succ][j];
          est = std::max(est, finish[pred] +
                                  g.pred_weights[succ][j] *
                                      pf.rate(proc_of(pred), proc_of(succ)));
        }
        ready[proc_of(succ)].push_back({succ, rank[succ], est});
      }
    }

    // one dispatch decision per idle processor, in ascending index order;
    // completions at the same instant re-enter through the event loop
    for (int p = 0; p < pf.proc_count; ++p) {
      if (busy[p] || ready[p].empty()) continue;
      std::vector<ReadyTask>& q = ready[p];
      const std::size_t bi = pop_best(q);
      const ReadyTask next = q[bi];
      const Time ast = std::max(next.est, now);
      if (sns && ast > now + kTimeEps && q.size() > 1) {
        std::vector<ReadyTask> waiting;
        for (std::size_t i = 0; i < q.size(); ++i)
          if (i != bi) waiting.push_back(q[i]);
        auto filler =
            pick_gap_filler(waiting, now, ast,
                            [&](int t) { return g.tasks[t].proc_times[p]; });
        if (filler) {
          q.erase(std::find_if(q.begin(), q.end(), [&](const ReadyTask& w) {
            return w.task == *filler;
          }));
          commit(*filler, p, now, now);
          continue;
        }
      }
      q.erase(q.begin() + bi);
      commit(next.task, p, ast, now);
    }
  }

  Time cmax = 0.0;
  for (const ScheduleEntry& e : s.entries) cmax = std::max(cmax, e.finish);
  s.makespan = cmax;
  return s;
}

inline Time makespan(const Schedule& s) { return s.makespan; }

}  // namespace hais
