#pragma once

#include <stdexcept>
#include <vector>

#include "hais/graph.hpp"  // Time

namespace hais {

// Fully connected heterogeneous cluster: processor count plus a symmetric
// matrix of communication rates (time units per data unit). Diagonal is 0.
struct Platform {
  int proc_count = 0;
  std::vector<std::vector<Time>> comm;

  // Unchecked lookup for hot paths; callers guarantee valid indices.
  Time rate(int i, int j) const { return i == j ? 0.0 : comm[i][j]; }
};

inline Time processor_comm(const Platform& pf, int i, int j) {
  if (i < 0 || j < 0 || i >= pf.proc_count || j >= pf.proc_count)
    throw std::out_of_range("processor index out of range");
  return pf.rate(i, j);
}

inline Platform make_uniform_platform(int procs, Time rate) {
  Platform pf;
  pf.proc_count = procs;
  pf.comm.assign(procs, std::vector<Time>(procs, rate));
  for (int i = 0; i < procs; ++i) pf.comm[i][i] = 0.0;
  return pf;
}

}  // namespace hais
