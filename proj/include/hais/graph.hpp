#pragma once

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

namespace hais {

using Time = double;
inline constexpr Time kTimeEps = 1e-9;

// One task of the application. proc_times holds the processing time of the
// task on each processor (row length = processor count of the platform the
// graph was declared for).
struct TaskNode {
  int id = 0;  // internal index; 0 is the virtual entry
  std::vector<Time> proc_times;
};

// Data dependency: dst needs `weight` data units produced by src.
struct Edge {
  int src = 0;
  int dst = 0;
  double weight = 0.0;
};

// Immutable after construction. Index 0 is reserved for the virtual entry
// task once add_virtual_entry() has run; parsers and generators always
// return graphs in that canonical form.
struct TaskGraph {
  std::vector<TaskNode> tasks;
  std::vector<Edge> edges;
  int proc_count = 0;

  // original file ids per internal index (index 0 maps to -1, the virtual
  // entry has no external id)
  std::vector<int> original_ids;

  // derived, rebuilt by finalize()
  std::vector<std::vector<int>> successors;    // edge indices are parallel
  std::vector<std::vector<int>> predecessors;  // to these adjacency lists
  std::vector<std::vector<double>> succ_weights;
  std::vector<std::vector<double>> pred_weights;
  std::vector<int> topo_order;  // empty if the graph is cyclic

  int task_count() const { return static_cast<int>(tasks.size()); }
  int real_task_count() const { return std::max(0, task_count() - 1); }

  void finalize();
  bool is_acyclic() const { return topo_order.size() == tasks.size(); }
};

inline void TaskGraph::finalize() {
  const std::size_t n = tasks.size();
  successors.assign(n, {});
  predecessors.assign(n, {});
  succ_weights.assign(n, {});
  pred_weights.assign(n, {});
  for (const Edge& e : edges) {
    if (e.src < 0 || e.dst < 0 || e.src >= static_cast<int>(n) ||
        e.dst >= static_cast<int>(n) || e.src == e.dst) {
      continue;  // validate() reports these; keep adjacency well-formed
    }
    successors[e.src].push_back(e.dst);
    succ_weights[e.src].push_back(e.weight);
    predecessors[e.dst].push_back(e.src);
    pred_weights[e.dst].push_back(e.weight);
  }

  // Kahn's algorithm; ties resolved by lowest index for determinism.
  topo_order.clear();
  std::vector<int> indeg(n, 0);
  for (std::size_t t = 0; t < n; ++t)
    indeg[t] = static_cast<int>(predecessors[t].size());
  std::vector<int> frontier;
  for (std::size_t t = 0; t < n; ++t)
    if (indeg[t] == 0) frontier.push_back(static_cast<int>(t));
  std::size_t head = 0;
  while (head < frontier.size()) {
    std::sort(frontier.begin() + head, frontier.end());
    int u = frontier[head++];
    topo_order.push_back(u);
    for (int v : successors[u])
      if (--indeg[v] == 0) frontier.push_back(v);
  }
  // on a cyclic graph topo_order is partial and is_acyclic() reports false
}

// Prepends the zero-cost virtual entry task so the graph has exactly one
// entry. A graph already in canonical form (unique zero-cost entry with
// zero-weight out-edges at index 0) is returned unchanged.
inline TaskGraph add_virtual_entry(const TaskGraph& raw) {
  std::vector<bool> has_pred(raw.tasks.size(), false);
  for (const Edge& e : raw.edges)
    if (e.dst >= 0 && e.dst < raw.task_count()) has_pred[e.dst] = true;

  std::vector<int> entries;
  for (int t = 0; t < raw.task_count(); ++t)
    if (!has_pred[t]) entries.push_back(t);

  if (entries.size() == 1 && entries[0] == 0) {
    const TaskNode& e = raw.tasks[0];
    bool zero_cost =
        std::all_of(e.proc_times.begin(), e.proc_times.end(),
                    [](Time t) { return t == 0.0; });
    bool zero_out = true;
    for (const Edge& ed : raw.edges)
      if (ed.src == 0 && ed.weight != 0.0) zero_out = false;
    if (zero_cost && zero_out) return raw;  // idempotent
  }

  TaskGraph g;
  g.proc_count = raw.proc_count;
  g.tasks.reserve(raw.tasks.size() + 1);
  TaskNode entry;
  entry.id = 0;
  entry.proc_times.assign(std::max(raw.proc_count, 0), 0.0);
  g.tasks.push_back(entry);
  g.original_ids.push_back(-1);
  for (int t = 0; t < raw.task_count(); ++t) {
    TaskNode node = raw.tasks[t];
    node.id = t + 1;
    g.tasks.push_back(node);
    g.original_ids.push_back(t < static_cast<int>(raw.original_ids.size())
                                 ? raw.original_ids[t]
                                 : t + 1);
  }
  for (const Edge& e : raw.edges)
    g.edges.push_back({e.src + 1, e.dst + 1, e.weight});
  for (int t : entries) g.edges.push_back({0, t + 1, 0.0});
  g.finalize();
  return g;
}

// Returns one human-readable diagnostic per invariant violation; an empty
// list means the graph is valid.
inline std::vector<std::string> validate(const TaskGraph& g) {
  std::vector<std::string> diags;
  auto report = [&diags](const std::string& msg) { diags.push_back(msg); };

  const int n = g.task_count();
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const Edge& e = g.edges[i];
    std::ostringstream name;
    name << "edge " << e.src << "->" << e.dst;
    if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n)
      report(name.str() + ": dangling endpoint");
    else if (e.src == e.dst)
      report(name.str() + ": self-edge");
    if (e.weight < 0.0) report(name.str() + ": negative weight");
    for (std::size_t j = i + 1; j < g.edges.size(); ++j)
      if (g.edges[j].src == e.src && g.edges[j].dst == e.dst) {
        report(name.str() + ": duplicate edge");
        break;
      }
  }

  for (int t = 0; t < n; ++t) {
    const TaskNode& node = g.tasks[t];
    std::ostringstream name;
    name << "task " << t;
    if (static_cast<int>(node.proc_times.size()) != g.proc_count)
      report(name.str() + ": processing-time row has " +
             std::to_string(node.proc_times.size()) + " entries, expected " +
             std::to_string(g.proc_count));
    bool any_positive = false;
    for (Time pt : node.proc_times) {
      if (pt < 0.0) report(name.str() + ": negative processing time");
      if (pt > 0.0) any_positive = true;
    }
    if (t > 0 && !node.proc_times.empty() && !any_positive)
      report(name.str() + ": real task with zero time on every processor");
  }

  if (n > 0) {
    const TaskNode& entry = g.tasks[0];
    for (Time pt : entry.proc_times)
      if (pt != 0.0) {
        report("task 0: virtual entry must have zero processing time");
        break;
      }
    for (const Edge& e : g.edges)
      if (e.src == 0 && e.weight != 0.0)
        report("edge 0->" + std::to_string(e.dst) +
               ": virtual entry out-edge must have zero weight");

    std::vector<bool> has_pred(n, false);
    for (const Edge& e : g.edges)
      if (e.dst >= 0 && e.dst < n && e.src != e.dst) has_pred[e.dst] = true;
    for (int t = 1; t < n; ++t)
      if (!has_pred[t])
        report("task " + std::to_string(t) +
               ": entry task other than the virtual entry");
    if (has_pred[0]) report("task 0: virtual entry has a predecessor");
  }

  TaskGraph tmp = g;
  tmp.finalize();
  if (!tmp.is_acyclic()) {
    // name a few tasks left out of the topological order
    std::vector<bool> in_topo(n, false);
    for (int t : tmp.topo_order) in_topo[t] = true;
    std::vector<int> cyclic;
    for (int t = 0; t < n; ++t)
      if (!in_topo[t]) cyclic.push_back(t);
    std::ostringstream msg;
    msg << "cycle detected involving tasks";
    for (std::size_t i = 0; i < cyclic.size() && i < 4; ++i)
      msg << ' ' << cyclic[i];
    report(msg.str());
  }
  return diags;
}

}  // namespace hais
