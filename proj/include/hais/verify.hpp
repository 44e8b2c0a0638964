#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "hais/decoder.hpp"
#include "hais/graph.hpp"
#include "hais/platform.hpp"

namespace hais {

// Independent schedule checker: re-derives every feasibility condition and
// the makespan from the schedule entries alone, without consulting the
// decoder. Returns one message per violation.
inline std::vector<std::string> check_schedule(const TaskGraph& g,
                                               const Platform& pf,
                                               const Schedule& s,
                                               const Antibody* expected = nullptr) {
  std::vector<std::string> diags;
  auto fail = [&diags](const std::string& m) { diags.push_back(m); };
  const int n = g.task_count();

  if (static_cast<int>(s.entries.size()) != n - 1 && n > 0) {
    fail("entry count " + std::to_string(s.entries.size()) + " != " +
         std::to_string(n - 1));
    return diags;
  }

  std::vector<int> proc_of(n, 0);
  std::vector<Time> start(n, 0.0), finish(n, 0.0);
  for (int t = 1; t < n; ++t) {
    const ScheduleEntry& e = s.entries[t - 1];
    if (e.task != t) fail("entry " + std::to_string(t - 1) + " task mismatch");
    if (e.proc < 0 || e.proc >= pf.proc_count)
      fail("task " + std::to_string(t) + " processor out of range");
    if (expected && (*expected)[t - 1] != e.proc)
      fail("task " + std::to_string(t) + " not on its assigned processor");
    const Time pt = g.tasks[t].proc_times[e.proc];
    if (std::fabs(e.finish - (e.start + pt)) > kTimeEps)
      fail("task " + std::to_string(t) + " finish != start + PT");
    if (e.start < -kTimeEps)
      fail("task " + std::to_string(t) + " negative start");
    proc_of[t] = e.proc;
    start[t] = e.start;
    finish[t] = e.finish;
  }

  // non-overlap per processor
  for (int p = 0; p < pf.proc_count; ++p) {
    std::vector<int> on_p;
    for (int t = 1; t < n; ++t)
      if (proc_of[t] == p) on_p.push_back(t);
    std::sort(on_p.begin(), on_p.end(),
              [&](int a, int b) { return start[a] < start[b]; });
    for (std::size_t i = 1; i < on_p.size(); ++i)
      if (start[on_p[i]] < finish[on_p[i - 1]] - kTimeEps)
        fail("tasks " + std::to_string(on_p[i - 1]) + " and " +
             std::to_string(on_p[i]) + " overlap on processor " +
             std::to_string(p));
  }

  // precedence with communication bound; the virtual entry contributes 0
  for (const Edge& e : g.edges) {
    const Time src_finish = e.src == 0 ? 0.0 : finish[e.src];
    const int src_proc = e.src == 0 ? 0 : proc_of[e.src];
    const Time bound =
        src_finish + e.weight * pf.rate(src_proc, proc_of[e.dst]);
    if (start[e.dst] < bound - kTimeEps)
      fail("edge " + std::to_string(e.src) + "->" + std::to_string(e.dst) +
           " violated: start " + std::to_string(start[e.dst]) + " < " +
           std::to_string(bound));
  }

  Time cmax = 0.0;
  for (int t = 1; t < n; ++t) cmax = std::max(cmax, finish[t]);
  if (std::fabs(cmax - s.makespan) > kTimeEps)
    fail("makespan " + std::to_string(s.makespan) + " != max AFT " +
         std::to_string(cmax));
  return diags;
}

}  // namespace hais
