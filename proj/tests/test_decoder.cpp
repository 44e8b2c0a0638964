#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <numeric>

#include "hais/decoder.hpp"
#include "hais/io.hpp"
#include "hais/verify.hpp"
#include "test_support.hpp"

using namespace hais;

namespace {

// Independent b-level oracle: enumerate every path from t to an exit and
// take the maximum of (sum of assigned PTs) + (sum of comm terms).
Time longest_path_to_exit(const TaskGraph& g, const Platform& pf,
                          const Antibody& a, int t) {
  auto proc_of = [&a](int v) { return v == 0 ? 0 : a[v - 1]; };
  std::function<Time(int)> walk = [&](int v) -> Time {
    Time best = g.tasks[v].proc_times[proc_of(v)];
    for (std::size_t k = 0; k < g.successors[v].size(); ++k) {
      const int s = g.successors[v][k];
      const Time via = g.tasks[v].proc_times[proc_of(v)] +
                       g.succ_weights[v][k] * pf.rate(proc_of(v), proc_of(s)) +
                       walk(s);
      best = std::max(best, via);
    }
    return best;
  };
  return walk(t);
}

}  // namespace

TEST_CASE("fixture b-levels match hand-derived values") {
  TaskGraph g = testsup::fork5();
  Platform pf = testsup::duo();

  SECTION("mixed assignment") {
    Antibody a{0, 0, 1, 0, 1};
    auto b = compute_b_levels(g, pf, a);
    CHECK(b[5] == 1.0);
    CHECK(b[3] == 3.0);
    CHECK(b[4] == 10.0);
    CHECK(b[2] == 13.0);
    CHECK(b[1] == 15.0);
  }
  SECTION("all on processor 0, comm terms vanish") {
    Antibody a{0, 0, 0, 0, 0};
    auto b = compute_b_levels(g, pf, a);
    CHECK(b[5] == 3.0);
    CHECK(b[3] == 7.0);
    CHECK(b[4] == 5.0);
    CHECK(b[2] == 10.0);
    CHECK(b[1] == 12.0);
  }
}

TEST_CASE("ranks are sums of successor b-levels") {
  TaskGraph g = testsup::fork5();
  Platform pf = testsup::duo();

  SECTION("mixed assignment") {
    Antibody a{0, 0, 1, 0, 1};
    auto r = compute_ranks(g, compute_b_levels(g, pf, a));
    CHECK(r[2] == 13.0);  // b(T3) + b(T4)
    CHECK(r[5] == 0.0);   // exit task, empty sum
  }
  SECTION("all-zero assignment produces the rank tie") {
    Antibody a{0, 0, 0, 0, 0};
    auto r = compute_ranks(g, compute_b_levels(g, pf, a));
    CHECK(r[3] == 3.0);
    CHECK(r[4] == 3.0);
    CHECK(r[2] == 12.0);
  }
}

TEST_CASE("exit task b-level equals its own assigned PT") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto inst = testsup::random_instance(seed, 15, 4);
    Antibody a = testsup::random_assignment(inst.graph, inst.platform, seed);
    auto b = compute_b_levels(inst.graph, inst.platform, a);
    for (int t = 1; t < inst.graph.task_count(); ++t)
      if (inst.graph.successors[t].empty())
        REQUIRE(b[t] == inst.graph.tasks[t].proc_times[a[t - 1]]);
  }
}

TEST_CASE("b-levels equal the brute-force longest-path oracle") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto inst = testsup::random_instance(seed, 10, 4);
    Antibody a = testsup::random_assignment(inst.graph, inst.platform, seed);
    auto b = compute_b_levels(inst.graph, inst.platform, a);
    CAPTURE(seed);
    for (int t = 0; t < inst.graph.task_count(); ++t)
      REQUIRE_THAT(b[t],
                   Catch::Matchers::WithinAbs(
                       longest_path_to_exit(inst.graph, inst.platform, a, t),
                       1e-9));
  }
}

TEST_CASE("fixture decode, mixed assignment") {
  TaskGraph g = testsup::fork5();
  Platform pf = testsup::duo();
  Antibody a{0, 0, 1, 0, 1};
  Schedule s = decode(g, pf, a, false);
  CHECK(s.entries[0].start == 0.0);
  CHECK(s.entries[0].finish == 2.0);
  CHECK(s.entries[1].start == 2.0);
  CHECK(s.entries[1].finish == 5.0);
  CHECK(s.entries[3].start == 5.0);
  CHECK(s.entries[3].finish == 7.0);
  CHECK(s.entries[2].start == 10.0);
  CHECK(s.entries[2].finish == 12.0);
  CHECK(s.entries[4].start == 14.0);
  CHECK(s.entries[4].finish == 15.0);
  CHECK(makespan(s) == 15.0);
  REQUIRE(check_schedule(g, pf, s, &a).empty());
}

TEST_CASE("fixture decode, all on processor 0") {
  TaskGraph g = testsup::fork5();
  Platform pf = testsup::duo();
  Antibody a{0, 0, 0, 0, 0};
  Schedule s = decode(g, pf, a, false);
  CHECK(s.entries[0].start == 0.0);
  CHECK(s.entries[1].start == 2.0);
  // rank tie between tasks 3 and 4 goes to the lower id
  CHECK(s.entries[2].start == 5.0);
  CHECK(s.entries[2].finish == 9.0);
  CHECK(s.entries[3].start == 9.0);
  CHECK(s.entries[3].finish == 11.0);
  CHECK(s.entries[4].start == 11.0);
  CHECK(s.entries[4].finish == 14.0);
  CHECK(makespan(s) == 14.0);
  REQUIRE(s.proc_order[0] == std::vector<int>{1, 2, 3, 4, 5});
}

TEST_CASE("single task on one processor") {
  TaskGraph g = parse_taskgraph(std::string("procs 1\ntask 1 4\n"));
  Platform pf = parse_platform(std::string("procs 1\n"));
  Schedule s = decode(g, pf, {0}, false);
  CHECK(s.entries[0].start == 0.0);
  CHECK(s.entries[0].finish == 4.0);
  CHECK(s.makespan == 4.0);
}

TEST_CASE("empty real-task graph has makespan 0") {
  TaskGraph raw;
  raw.proc_count = 1;
  raw.finalize();
  TaskGraph g = add_virtual_entry(raw);
  Platform pf = make_uniform_platform(1, 0.0);
  Schedule s = decode(g, pf, {}, true);
  CHECK(s.makespan == 0.0);
  CHECK(s.entries.empty());
}

TEST_CASE("gap filler selection") {
  auto pt_of = [](int t) { return t == 1 ? 4.0 : 6.0; };
  SECTION("only the fitting task qualifies, regardless of rank") {
    std::vector<ReadyTask> waiting{{1, 3.0, 0.0}, {2, 9.0, 0.0}};
    auto pick = pick_gap_filler(waiting, 0.0, 5.0, pt_of);
    REQUIRE(pick.has_value());
    CHECK(*pick == 1);
  }
  SECTION("empty waiting set") {
    std::vector<ReadyTask> waiting;
    CHECK_FALSE(pick_gap_filler(waiting, 0.0, 5.0, pt_of).has_value());
  }
  SECTION("nothing fits a zero gap") {
    std::vector<ReadyTask> waiting{{1, 3.0, 0.0}};
    CHECK_FALSE(pick_gap_filler(waiting, 5.0, 5.0, pt_of).has_value());
  }
  SECTION("highest rank wins among fitting tasks, id breaks ties") {
    auto unit_pt = [](int) { return 1.0; };
    std::vector<ReadyTask> waiting{{3, 2.0, 0.0}, {1, 2.0, 0.0}, {2, 5.0, 0.0}};
    auto pick = pick_gap_filler(waiting, 0.0, 4.0, unit_pt);
    REQUIRE(pick.has_value());
    CHECK(*pick == 2);
    waiting.pop_back();
    pick = pick_gap_filler(waiting, 0.0, 4.0, unit_pt);
    REQUIRE(pick.has_value());
    CHECK(*pick == 1);
  }
  SECTION("a task that cannot start yet is skipped") {
    std::vector<ReadyTask> waiting{{1, 3.0, 2.0}};
    CHECK_FALSE(pick_gap_filler(waiting, 0.0, 5.0, pt_of).has_value());
  }
}

TEST_CASE("sns fills the idle gap on the fixture when a filler exists") {
  // same fixture but task 4 moved to processor 1: while processor 1 waits
  // for task 3's data, task 4 fits in the gap
  TaskGraph g = testsup::fork5();
  Platform pf = testsup::duo();
  Antibody a{0, 0, 1, 1, 1};
  Schedule off = decode(g, pf, a, false);
  Schedule on = decode(g, pf, a, true);
  REQUIRE(check_schedule(g, pf, on, &a).empty());
  CHECK(on.makespan <= off.makespan + kTimeEps);
}

TEST_CASE("random schedules satisfy every invariant") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto inst = testsup::random_instance(seed, 40, 8);
    Antibody a = testsup::random_assignment(inst.graph, inst.platform, seed);
    CAPTURE(seed);
    for (bool sns : {false, true}) {
      Schedule s = decode(inst.graph, inst.platform, a, sns);
      auto problems = check_schedule(inst.graph, inst.platform, s, &a);
      CAPTURE(sns, problems);
      REQUIRE(problems.empty());
    }
  }
}

TEST_CASE("decode is deterministic") {
  auto inst = testsup::random_instance(11, 30, 5);
  Antibody a = testsup::random_assignment(inst.graph, inst.platform, 11);
  Schedule s1 = decode(inst.graph, inst.platform, a, true);
  Schedule s2 = decode(inst.graph, inst.platform, a, true);
  REQUIRE(serialize_schedule(s1, inst.graph) ==
          serialize_schedule(s2, inst.graph));
}

TEST_CASE("single processor, zero comm: rank-greedy among ready, packed") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto inst = testsup::random_instance(seed, 25, 1);
    Platform pf = make_uniform_platform(1, 0.0);
    Antibody a(inst.graph.real_task_count(), 0);
    Schedule s = decode(inst.graph, pf, a, false);
    auto r = compute_ranks(inst.graph, compute_b_levels(inst.graph, pf, a));
    CAPTURE(seed);
    const auto& order = s.proc_order[0];
    // each dispatched task must have the highest rank (lowest id on ties)
    // among the tasks whose predecessors have all finished by then
    std::vector<bool> done(inst.graph.task_count(), false);
    done[0] = true;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const int picked = order[i];
      for (std::size_t j = i + 1; j < order.size(); ++j) {
        const int other = order[j];
        bool ready = true;
        for (int p : inst.graph.predecessors[other])
          if (!done[p]) ready = false;
        if (!ready) continue;
        CAPTURE(i, picked, other);
        const bool preferred =
            r[picked] > r[other] + kTimeEps ||
            (std::abs(r[picked] - r[other]) <= kTimeEps && picked < other);
        REQUIRE(preferred);
      }
      done[picked] = true;
    }
    Time total = 0.0;
    for (int t = 1; t < inst.graph.task_count(); ++t)
      total += inst.graph.tasks[t].proc_times[0];
    REQUIRE_THAT(s.makespan, Catch::Matchers::WithinAbs(total, 1e-9));
  }
}
