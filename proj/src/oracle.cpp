#include "ddfl/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <thread>
#include <vector>

#include "ddfl/lshaped.hpp"

namespace ddfl {

SolveReport exhaustive_oracle(const Instance& inst, const DemandModel& demand) {
  const auto t0 = std::chrono::steady_clock::now();
  const int ni = inst.n_facilities();
  if (ni > 20) throw std::invalid_argument("exhaustive_oracle: more than 20 facilities");
  const std::uint32_t total = 1u << ni;

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::uint32_t nchunks = std::min<std::uint32_t>(total, std::min(hw, 8u));
  struct Best {
    double obj = kInfinity;
    std::uint32_t mask = 0;
    bool any = false;
  };
  std::vector<Best> results(nchunks);

  auto run_chunk = [&](std::uint32_t c) {
    const std::uint32_t lo = static_cast<std::uint32_t>(
        static_cast<std::uint64_t>(total) * c / nchunks);
    const std::uint32_t hi = static_cast<std::uint32_t>(
        static_cast<std::uint64_t>(total) * (c + 1) / nchunks);
    Best b;
    std::vector<int> x(ni);
    for (std::uint32_t mask = lo; mask < hi; ++mask) {
      for (int i = 0; i < ni; ++i) x[i] = (mask >> i) & 1u;
      const double obj = evaluate_first_stage(inst, demand, x);
      if (!b.any || obj < b.obj) {
        b.any = true;
        b.obj = obj;
        b.mask = mask;
      }
    }
    results[c] = b;
  };

  std::vector<std::thread> pool;
  for (std::uint32_t c = 1; c < nchunks; ++c) pool.emplace_back(run_chunk, c);
  run_chunk(0);
  for (auto& t : pool) t.join();

  Best best;
  for (const Best& b : results)
    if (b.any && (!best.any || b.obj < best.obj)) best = b;

  SolveReport rep;
  rep.incumbent.resize(ni);
  for (int i = 0; i < ni; ++i) rep.incumbent[i] = (best.mask >> i) & 1u;
  rep.objective = best.obj;
  rep.best_bound = best.obj;
  rep.gap_percent = 0.0;
  rep.status = SolveStatus::Optimal;
  rep.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace ddfl
