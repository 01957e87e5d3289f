#include "aniso/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "aniso/initial_data.hpp"
#include "aniso/spectral/random.hpp"

namespace aniso::corpus {

Member member(int index, std::uint64_t base_seed) {
  return {index, kSlopes[index % 3], base_seed + static_cast<std::uint64_t>(index)};
}

VectorField field(const Grid& grid, const Member& m, std::optional<double> k_max) {
  RandomFieldSpec spec;
  spec.slope = m.slope;
  spec.seed = m.seed;
  spec.amplitude = 1.0;
  spec.k_min = 1.0;
  const double kc = std::min({grid.dealias_cutoff(0), grid.dealias_cutoff(1), grid.dealias_cutoff(2)});
  spec.k_max = k_max ? std::min(*k_max, kc) : kc;
  return init_random_divfree(grid, spec);
}

ScalarField planar_field(const Grid& grid, const Member& m, double k_max) {
  spectral::BandSpec band{1.0, k_max, m.slope, true};
  return spectral::random_scalar_field(grid, m.seed, band);
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace aniso::corpus
