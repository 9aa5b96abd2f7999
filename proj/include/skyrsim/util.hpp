#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace skyrsim {

// Cascade (pairwise) summation with a fixed association order. Every
// reduction in the code base goes through this so results do not depend
// on worker count or traversal details.
double pairwise_sum(std::span<const double> xs);

// Worker count used by parallel_for. The SKYRSIM_WORKERS environment
// variable overrides hardware concurrency; minimum 1.
int worker_count();

// Runs body(lo, hi) on disjoint index blocks covering [0, n). Callers must
// write results by index only; merged output is then identical for any
// worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace skyrsim
