#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hais/graph.hpp"
#include "hais/rng.hpp"

namespace hais {

struct Interval {
  double lo = 1.0;
  double hi = 1.0;
};

namespace detail {

inline void check_interval(const Interval& iv, const char* what) {
  if (iv.lo < 0 || iv.hi < iv.lo)
    throw std::invalid_argument(std::string(what) + " interval invalid");
}

// Integer draws keep generated files small and fixture arithmetic exact.
inline double draw_in(std::mt19937_64& rng, const Interval& iv) {
  const long long lo = static_cast<long long>(iv.lo);
  const long long hi = static_cast<long long>(iv.hi);
  return static_cast<double>(
      lo + static_cast<long long>(draw_below(rng, hi - lo + 1)));
}

inline TaskNode random_task(std::mt19937_64& rng, int id, int procs,
                            const Interval& pt_range) {
  if (pt_range.hi <= 0)
    throw std::invalid_argument(
        "pt interval must admit a positive processing time");
  TaskNode node;
  node.id = id;
  // redraw all-zero rows: a real task needs a positive time somewhere
  do {
    node.proc_times.clear();
    for (int p = 0; p < procs; ++p)
      node.proc_times.push_back(draw_in(rng, pt_range));
  } while (std::all_of(node.proc_times.begin(), node.proc_times.end(),
                       [](double v) { return v == 0.0; }));
  return node;
}

inline TaskGraph finish_generated(TaskGraph raw) {
  for (int t = 0; t < raw.task_count(); ++t)
    raw.original_ids.push_back(t + 1);
  raw.finalize();
  return add_virtual_entry(raw);
}

}  // namespace detail

// Layered random DAG: `layers` layers of `width` tasks; each pair of tasks
// in adjacent layers is connected with probability edge_density, so edges
// only go from a layer to the next one. Deterministic in its arguments.
inline TaskGraph gen_random_layered(int layers, int width, double edge_density,
                                    int procs, Interval pt_range,
                                    Interval w_range, std::uint64_t seed) {
  if (layers < 1 || width < 1)
    throw std::invalid_argument("layers and width must be at least 1");
  if (!(edge_density > 0.0) || edge_density > 1.0)
    throw std::invalid_argument("edge_density must be in (0, 1]");
  if (procs < 1) throw std::invalid_argument("procs must be positive");
  detail::check_interval(pt_range, "pt");
  detail::check_interval(w_range, "w");

  std::mt19937_64 rng = substream(seed, 0x6c61796572ULL, layers, width);
  TaskGraph raw;
  raw.proc_count = procs;
  for (int t = 0; t < layers * width; ++t)
    raw.tasks.push_back(detail::random_task(rng, t, procs, pt_range));
  for (int l = 0; l + 1 < layers; ++l)
    for (int u = 0; u < width; ++u)
      for (int v = 0; v < width; ++v) {
        const double coin = draw_unit(rng);
        if (coin <= edge_density)
          raw.edges.push_back({l * width + u, (l + 1) * width + v,
                               detail::draw_in(rng, w_range)});
      }
  return detail::finish_generated(std::move(raw));
}

// Gaussian-elimination dependence pattern for matrix dimension n: per
// elimination step k there is one pivot task followed by n-k column update
// tasks; each update feeds the corresponding task of step k+1. Real task
// count is n(n+1)/2 - 1. Weights and processing times are drawn from the
// given ranges.
inline TaskGraph gen_gaussian_elimination(int n, int procs, Interval pt_range,
                                          Interval w_range,
                                          std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("matrix dimension must be >= 2");
  if (procs < 1) throw std::invalid_argument("procs must be positive");
  detail::check_interval(pt_range, "pt");
  detail::check_interval(w_range, "w");

  std::mt19937_64 rng = substream(seed, 0x67617573ULL, n, procs);
  TaskGraph raw;
  raw.proc_count = procs;
  // task indices: pivot[k], then update[k][j] for j in k+1..n, k in 1..n-1
  std::vector<int> pivot(n, -1);
  std::vector<std::vector<int>> update(n, std::vector<int>(n + 1, -1));
  for (int k = 1; k <= n - 1; ++k) {
    pivot[k] = raw.task_count();
    raw.tasks.push_back(
        detail::random_task(rng, pivot[k], procs, pt_range));
    for (int j = k + 1; j <= n; ++j) {
      update[k][j] = raw.task_count();
      raw.tasks.push_back(
          detail::random_task(rng, update[k][j], procs, pt_range));
    }
  }
  for (int k = 1; k <= n - 1; ++k) {
    for (int j = k + 1; j <= n; ++j)
      raw.edges.push_back(
          {pivot[k], update[k][j], detail::draw_in(rng, w_range)});
    if (k + 1 <= n - 1) {
      raw.edges.push_back({update[k][k + 1], pivot[k + 1],
                           detail::draw_in(rng, w_range)});
      for (int j = k + 2; j <= n; ++j)
        raw.edges.push_back(
            {update[k][j], update[k + 1][j], detail::draw_in(rng, w_range)});
    }
  }
  return detail::finish_generated(std::move(raw));
}

}  // namespace hais
