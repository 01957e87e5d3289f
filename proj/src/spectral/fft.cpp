#include "aniso/spectral/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace aniso::spectral::fft {

namespace {

enum class PlanKind { c2r, r2c, vertical };

using PlanKey = std::tuple<PlanKind, int, int, int>;

class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(PlanKind kind, const Grid& g) {
    const PlanKey key{kind, g.n1(), g.n2(), g.n3()};
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    fftw_plan plan = make(kind, g);
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  static fftw_plan make(PlanKind kind, const Grid& g) {
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    const std::size_t half = std::size_t(g.n3()) * g.n2() * (g.n1() / 2 + 1);
    fftw_plan plan = nullptr;
    switch (kind) {
      case PlanKind::c2r: {
        auto* in = fftw_alloc_complex(half);
        auto* out = fftw_alloc_real(g.size());
        plan = fftw_plan_dft_c2r_3d(g.n3(), g.n2(), g.n1(), in, out, flags);
        fftw_free(in);
        fftw_free(out);
        break;
      }
      case PlanKind::r2c: {
        auto* in = fftw_alloc_real(g.size());
        auto* out = fftw_alloc_complex(half);
        plan = fftw_plan_dft_r2c_3d(g.n3(), g.n2(), g.n1(), in, out, flags);
        fftw_free(in);
        fftw_free(out);
        break;
      }
      case PlanKind::vertical: {
        auto* buf = fftw_alloc_complex(g.size());
        const int n = g.n3();
        const int howmany = static_cast<int>(g.slice_size());
        plan = fftw_plan_many_dft(1, &n, howmany, buf, nullptr, howmany, 1, buf, nullptr, howmany, 1,
                                  FFTW_BACKWARD, flags);
        fftw_free(buf);
        break;
      }
    }
    if (plan == nullptr) throw std::runtime_error("FFTW planning failed for grid " + g.describe());
    return plan;
  }

  std::mutex mutex_;
  std::map<PlanKey, fftw_plan> plans_;
};

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

std::vector<double> synthesize(const Grid& source, std::span<const std::complex<double>> coeffs,
                               const Grid& target) {
  if (coeffs.size() != source.size()) throw std::invalid_argument("synthesize: coefficient count mismatch");
  for (int axis = 0; axis < 3; ++axis) {
    if (target.n(axis) < source.n(axis)) throw std::invalid_argument("synthesize: target grid is coarser");
  }
  const int h1 = target.n1() / 2 + 1;
  std::vector<std::complex<double>> half(std::size_t(target.n3()) * target.n2() * h1);
  for (int i3 = 0; i3 < source.n3(); ++i3) {
    if (source.is_nyquist(2, i3)) continue;
    const int t3 = target.storage_index(2, source.wavenumber(2, i3));
    for (int i2 = 0; i2 < source.n2(); ++i2) {
      if (source.is_nyquist(1, i2)) continue;
      const int t2 = target.storage_index(1, source.wavenumber(1, i2));
      for (int i1 = 0; i1 < source.n1() / 2; ++i1) {
        half[(std::size_t(t3) * target.n2() + t2) * h1 + i1] = coeffs[source.index(i1, i2, i3)];
      }
    }
  }
  std::vector<double> out(target.size());
  fftw_execute_dft_c2r(PlanCache::instance().get(PlanKind::c2r, target), as_fftw(half.data()), out.data());
  return out;
}

std::vector<std::complex<double>> analyze(const Grid& grid, std::span<const double> samples) {
  if (samples.size() != grid.size()) throw std::invalid_argument("analyze: sample count mismatch");
  const int h1 = grid.n1() / 2 + 1;
  std::vector<double> in(samples.begin(), samples.end());
  std::vector<std::complex<double>> half(std::size_t(grid.n3()) * grid.n2() * h1);
  fftw_execute_dft_r2c(PlanCache::instance().get(PlanKind::r2c, grid), in.data(), as_fftw(half.data()));

  const double scale = 1.0 / static_cast<double>(grid.size());
  std::vector<std::complex<double>> full(grid.size());
  for (int i3 = 0; i3 < grid.n3(); ++i3) {
    const int m3 = (grid.n3() - i3) % grid.n3();
    for (int i2 = 0; i2 < grid.n2(); ++i2) {
      const int m2 = (grid.n2() - i2) % grid.n2();
      for (int i1 = 0; i1 < h1; ++i1) {
        const std::complex<double> c = scale * half[(std::size_t(i3) * grid.n2() + i2) * h1 + i1];
        full[grid.index(i1, i2, i3)] = c;
        const int m1 = (grid.n1() - i1) % grid.n1();
        full[grid.index(m1, m2, m3)] = std::conj(c);
      }
    }
  }
  return full;
}

std::vector<std::complex<double>> vertical_synthesis(const Grid& grid,
                                                     std::span<const std::complex<double>> coeffs) {
  if (coeffs.size() != grid.size()) throw std::invalid_argument("vertical_synthesis: coefficient count mismatch");
  std::vector<std::complex<double>> out(coeffs.begin(), coeffs.end());
  fftw_execute_dft(PlanCache::instance().get(PlanKind::vertical, grid), as_fftw(out.data()),
                   as_fftw(out.data()));
  return out;
}

}  // namespace aniso::spectral::fft
