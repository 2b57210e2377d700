#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ncber/numerics.hpp"

namespace ncber::detail {

struct McTotals {
  std::vector<std::uint64_t> errors;
  std::uint64_t trials = 0;
  bool budget_exhausted = false;
};

/// Deterministic block scheduler for Monte Carlo loops. Trials are cut
/// into fixed-size blocks; block b draws from base.derived(b). Blocks are
/// executed in waves of constant width and reduced in block order, then
/// the stopping rule is checked at the wave boundary, so the totals are
/// bit-identical for any worker count. Stops once every monitored counter
/// holds at least min_errors, or once max_trials have been committed.
McTotals run_blocks(std::size_t n_counters, const std::vector<std::size_t>& monitored,
                    std::uint64_t min_errors, std::uint64_t max_trials,
                    std::uint64_t block_size, int threads, const RngStream& base,
                    const std::function<void(RngStream&, std::uint64_t,
                                             std::vector<std::uint64_t>&)>& block_fn);

}  // namespace ncber::detail
