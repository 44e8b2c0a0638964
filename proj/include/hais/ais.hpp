#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hais/decoder.hpp"
#include "hais/graph.hpp"
#include "hais/parallel.hpp"
#include "hais/platform.hpp"
#include "hais/rng.hpp"

namespace hais {

struct OptimizerConfig {
  int iterations = 100;             // K
  int popsize = 400;                // Popsize
  int clones = 50;                  // C_clone
  double selection_rate = 0.25;     // B
  double affinity_threshold = 0.2;  // Aff
  bool sns = true;
  std::uint64_t seed = 0;
  int threads = 1;
};

inline void validate(const OptimizerConfig& cfg) {
  if (cfg.iterations < 1) throw std::invalid_argument("K must be >= 1");
  if (cfg.popsize < 2) throw std::invalid_argument("popsize must be >= 2");
  if (cfg.clones < 1) throw std::invalid_argument("clones must be >= 1");
  if (!(cfg.selection_rate > 0.0) || cfg.selection_rate > 1.0)
    throw std::invalid_argument("selection_rate must be in (0, 1]");
  if (cfg.affinity_threshold < 0.0 || cfg.affinity_threshold > 1.0)
    throw std::invalid_argument("aff must be in [0, 1]");
}

struct Member {
  Antibody assign;
  Time makespan = 0.0;
};

struct Population {
  std::vector<Member> members;
  Antibody best_antibody;
  Time best_makespan = 0.0;
  bool has_best = false;
};

struct IterationStats {
  Time best = 0.0;       // best-ever makespan after the iteration
  Time mean = 0.0;       // mean population makespan
  double diversity = 0.0;  // mean pairwise affinity
};

struct RunHistory {
  std::vector<IterationStats> iterations;
};

// Eq.-style min-max normalization: the minimum makespan maps to 0 (best),
// the maximum to 1. Degenerate spreads map everything to 0.
inline std::vector<double> fitness_normalize(const std::vector<Time>& ms) {
  if (ms.empty()) throw std::invalid_argument("empty makespan sequence");
  const auto [lo, hi] = std::minmax_element(ms.begin(), ms.end());
  std::vector<double> out(ms.size(), 0.0);
  if (*hi - *lo <= 0.0) return out;
  for (std::size_t i = 0; i < ms.size(); ++i)
    out[i] = (ms[i] - *lo) / (*hi - *lo);
  return out;
}

inline int hamming_distance(const Antibody& a, const Antibody& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("antibody length mismatch");
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

// Normalized Hamming distance; 0 means identical. The divisor is the
// antibody length (the virtual entry is not encoded).
inline double affinity(const Antibody& a, const Antibody& b) {
  if (a.empty() && b.empty()) return 0.0;
  return static_cast<double>(hamming_distance(a, b)) /
         static_cast<double>(a.size());
}

// Hypermutation: swap the values of two distinct random cells. Strings
// shorter than two cells are returned unchanged.
inline Antibody mutate_swap(const Antibody& a, std::mt19937_64& rng) {
  if (a.size() < 2) return a;
  Antibody out = a;
  const std::size_t i = draw_below(rng, out.size());
  std::size_t j = draw_below(rng, out.size() - 1);
  if (j >= i) ++j;
  std::swap(out[i], out[j]);
  return out;
}

inline Antibody random_antibody(int cells, int procs, std::mt19937_64& rng) {
  Antibody a(cells);
  for (int i = 0; i < cells; ++i)
    a[i] = static_cast<int>(draw_below(rng, procs));
  return a;
}

namespace detail {
inline constexpr std::uint64_t kInitTag = 1;
inline constexpr std::uint64_t kCloneTag = 2;
inline constexpr std::uint64_t kRefillTag = 3;

inline void track_best(Population& pop, const Antibody& a, Time ms) {
  if (!pop.has_best || ms < pop.best_makespan) {
    pop.best_antibody = a;
    pop.best_makespan = ms;
    pop.has_best = true;
  }
}
}  // namespace detail

inline Population init_population(const TaskGraph& g, const Platform& pf,
                                  const OptimizerConfig& cfg) {
  Population pop;
  pop.members.resize(cfg.popsize);
  const int cells = g.real_task_count();
  for (int m = 0; m < cfg.popsize; ++m) {
    auto rng = substream(cfg.seed, detail::kInitTag, m, 0);
    pop.members[m].assign = random_antibody(cells, pf.proc_count, rng);
  }
  parallel_for(cfg.popsize, cfg.threads, [&](int m) {
    pop.members[m].makespan =
        decode(g, pf, pop.members[m].assign, cfg.sns).makespan;
  });
  for (const Member& m : pop.members)
    detail::track_best(pop, m.assign, m.makespan);
  return pop;
}

// Clone C_clone times, swap-mutate each clone, decode, and keep the best
// candidate of {original} + clones (original wins ties). The member's
// makespan never increases.
inline Member clonal_step(const Member& member, const TaskGraph& g,
                          const Platform& pf, const OptimizerConfig& cfg,
                          std::mt19937_64& rng, Member* group_best = nullptr) {
  std::vector<Antibody> candidates;
  candidates.reserve(cfg.clones + 1);
  candidates.push_back(member.assign);
  std::vector<Time> makespans;
  makespans.reserve(cfg.clones + 1);
  makespans.push_back(member.makespan);
  for (int c = 0; c < cfg.clones; ++c) {
    Antibody clone = mutate_swap(member.assign, rng);
    makespans.push_back(decode(g, pf, clone, cfg.sns).makespan);
    candidates.push_back(std::move(clone));
  }
  const std::vector<double> fit = fitness_normalize(makespans);
  std::size_t best = 0;
  for (std::size_t i = 1; i < fit.size(); ++i)
    if (fit[i] < fit[best]) best = i;
  if (group_best) *group_best = {candidates[best], makespans[best]};
  return {candidates[best], makespans[best]};
}

// Elitist suppression: the ceil(B * Popsize) best members are kept; every
// other member lying within the affinity threshold of some elite (too
// similar) is purged. Survivors keep their original relative order.
inline Population immune_remove(const Population& pop,
                                const OptimizerConfig& cfg) {
  const int n = static_cast<int>(pop.members.size());
  const int n_sel = std::min(
      n, static_cast<int>(
             std::ceil(cfg.selection_rate * cfg.popsize - 1e-12)));
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return pop.members[x].makespan < pop.members[y].makespan;
  });

  std::vector<bool> selected(n, false);
  for (int i = 0; i < n_sel; ++i) selected[order[i]] = true;
  std::vector<bool> removed(n, false);
  for (int i = 0; i < n_sel; ++i) {
    const int elite = order[i];
    for (int m = 0; m < n; ++m) {
      if (selected[m] || removed[m]) continue;
      if (affinity(pop.members[elite].assign, pop.members[m].assign) <
          cfg.affinity_threshold)
        removed[m] = true;
    }
  }

  Population out;
  out.best_antibody = pop.best_antibody;
  out.best_makespan = pop.best_makespan;
  out.has_best = pop.has_best;
  for (int m = 0; m < n; ++m)
    if (!removed[m]) out.members.push_back(pop.members[m]);
  return out;
}

inline void refill_random(Population& pop, const TaskGraph& g,
                          const Platform& pf, const OptimizerConfig& cfg,
                          std::uint64_t iteration) {
  const int cells = g.real_task_count();
  int slot = 0;
  while (static_cast<int>(pop.members.size()) < cfg.popsize) {
    auto rng = substream(cfg.seed, detail::kRefillTag, iteration, slot++);
    Member m;
    m.assign = random_antibody(cells, pf.proc_count, rng);
    m.makespan = decode(g, pf, m.assign, cfg.sns).makespan;
    detail::track_best(pop, m.assign, m.makespan);
    pop.members.push_back(std::move(m));
  }
}

struct OptimizeResult {
  Antibody best_antibody;
  Schedule best_schedule;
  Time best_makespan = 0.0;
  RunHistory history;
};

inline double mean_pairwise_affinity(const std::vector<Member>& members) {
  const std::size_t n = members.size();
  if (n < 2) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      sum += affinity(members[i].assign, members[j].assign);
  return sum / (0.5 * static_cast<double>(n) * static_cast<double>(n - 1));
}

// Main loop: K iterations of per-member clonal selection, immune removal
// against the selected elites, and random refill back to Popsize. Clonal
// steps for distinct members run in parallel; each (iteration, member)
// pair owns a derived random substream, so thread count never changes the
// result.
inline OptimizeResult optimize(const TaskGraph& g, const Platform& pf,
                               const OptimizerConfig& cfg) {
  validate(cfg);
  Population pop = init_population(g, pf, cfg);

  RunHistory history;
  history.iterations.reserve(cfg.iterations);
  for (int it = 0; it < cfg.iterations; ++it) {
    std::vector<Member> next(pop.members.size());
    parallel_for(static_cast<int>(pop.members.size()), cfg.threads,
                 [&](int m) {
                   auto rng = substream(cfg.seed, detail::kCloneTag, it, m);
                   next[m] = clonal_step(pop.members[m], g, pf, cfg, rng);
                 });
    pop.members = std::move(next);
    for (const Member& m : pop.members)
      detail::track_best(pop, m.assign, m.makespan);

    pop = immune_remove(pop, cfg);
    refill_random(pop, g, pf, cfg, static_cast<std::uint64_t>(it));

    IterationStats stats;
    stats.best = pop.best_makespan;
    double sum = 0.0;
    for (const Member& m : pop.members) sum += m.makespan;
    stats.mean = pop.members.empty()
                     ? 0.0
                     : sum / static_cast<double>(pop.members.size());
    stats.diversity = mean_pairwise_affinity(pop.members);
    history.iterations.push_back(stats);
  }

  OptimizeResult res;
  res.best_antibody = pop.best_antibody;
  res.best_makespan = pop.best_makespan;
  res.best_schedule = decode(g, pf, pop.best_antibody, cfg.sns);
  res.history = std::move(history);
  return res;
}

}  // namespace hais
