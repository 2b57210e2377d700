#include "ncber/mc_runner.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace ncber::detail {

namespace {
constexpr std::uint64_t kWaveWidth = 16;
}

McTotals run_blocks(std::size_t n_counters, const std::vector<std::size_t>& monitored,
                    std::uint64_t min_errors, std::uint64_t max_trials,
                    std::uint64_t block_size, int threads, const RngStream& base,
                    const std::function<void(RngStream&, std::uint64_t,
                                             std::vector<std::uint64_t>&)>& block_fn) {
  McTotals totals;
  totals.errors.assign(n_counters, 0);
  if (threads < 1) threads = 1;
  if (block_size == 0) block_size = 1;

  auto goals_met = [&]() {
    for (std::size_t idx : monitored)
      if (totals.errors[idx] < min_errors) return false;
    return !monitored.empty();
  };

  std::uint64_t next_block = 0;
  while (totals.trials < max_trials && !goals_met()) {
    // Plan one wave of blocks; the last blocks may be truncated so the
    // committed trial count never exceeds max_trials.
    struct Planned {
      std::uint64_t index;
      std::uint64_t n;
    };
    std::vector<Planned> wave;
    std::uint64_t planned = totals.trials;
    for (std::uint64_t i = 0; i < kWaveWidth && planned < max_trials; ++i) {
      const std::uint64_t n = std::min<std::uint64_t>(block_size, max_trials - planned);
      wave.push_back({next_block++, n});
      planned += n;
    }

    std::vector<std::vector<std::uint64_t>> results(wave.size(),
                                                    std::vector<std::uint64_t>(n_counters, 0));
    const int workers = std::min<int>(threads, static_cast<int>(wave.size()));
    if (workers <= 1) {
      for (std::size_t i = 0; i < wave.size(); ++i) {
        RngStream rng = base.derived(wave[i].index);
        block_fn(rng, wave[i].n, results[i]);
      }
    } else {
      std::atomic<std::size_t> cursor{0};
      auto work = [&]() {
        for (;;) {
          const std::size_t i = cursor.fetch_add(1);
          if (i >= wave.size()) return;
          RngStream rng = base.derived(wave[i].index);
          block_fn(rng, wave[i].n, results[i]);
        }
      };
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (int t = 0; t < workers; ++t) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }

    // Commit in block order; order-independent sums, deterministic anyway.
    for (std::size_t i = 0; i < wave.size(); ++i) {
      totals.trials += wave[i].n;
      for (std::size_t c = 0; c < n_counters; ++c) totals.errors[c] += results[i][c];
    }
  }

  totals.budget_exhausted = !goals_met() && totals.trials >= max_trials;
  return totals;
}

}  // namespace ncber::detail
