#pragma once

#include <cstdint>
#include <vector>

#include "hyperpart/hypergraph.hpp"

namespace hyperpart {

struct RefineConfig {
  double tolerance = 1.05;      // a bisection is feasible when imbalance < tolerance (strict)
  std::int32_t max_passes = 4;  // FM pass budget per call
  std::uint64_t rng_seed = 1;   // breaks weight ties and orders BFS frontiers
};

// Greedy seed bisection: BFS region growing from the heaviest vertex (weight
// ties broken by a seeded draw, frontier order seeded) until the region holds
// half the total weight, restarting from the heaviest unreached vertex when a
// component is exhausted, followed by one fm_refine call. The grow stops at
// the prefix closest to the target weight.
Partition initial_bisect(const Hypergraph& hg, const RefineConfig& cfg);

// Generalised form: part 0 targets frac0 * total weight (used by recursive
// bisection with uneven part counts). initial_bisect is frac0 = 0.5.
Partition initial_bisect_targets(const Hypergraph& hg, const RefineConfig& cfg, double frac0);

// Two-way Fiduccia–Mattheyses refinement: gain-bucket move selection over
// integer-scaled gains (1e-6 resolution), one move per vertex per pass,
// rollback to the best visited prefix. A move is admissible when the
// resulting imbalance stays within max(tolerance, imbalance before the move).
// Relative to the input the result never has a larger tolerance violation,
// and the cut only grows when the violation strictly shrinks (restoring
// balance may cost cut); from a feasible input the output stays feasible and
// the cut never grows.
Partition fm_refine(const Hypergraph& hg, Partition p, const RefineConfig& cfg);

// Generalised form with part-0 weight target frac0 * total.
Partition fm_refine_targets(const Hypergraph& hg, Partition p, const RefineConfig& cfg,
                            double frac0);

// Pulls a coarse partition back to the fine level through a contraction map.
Partition project(const Partition& coarse, const std::vector<std::int32_t>& map,
                  std::int32_t n_fine);

// max(w0 / (frac0 * total), w1 / ((1 - frac0) * total)) — equals the k = 2
// imbalance ratio when frac0 = 0.5.
double bisection_balance(const Hypergraph& hg, const Partition& p, double frac0);

}  // namespace hyperpart
