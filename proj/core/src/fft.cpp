#include "mlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

#include "mlab/error.hpp"

namespace mlab {

namespace {

// Plans are made once per shape with FFTW_UNALIGNED so they can run on any
// std::vector storage; fftw_execute_dft itself is thread-safe.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n0, std::size_t n1, int sign) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(n0, n1, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const std::size_t total = n0 * n1;
    auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * total));
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    const int fs = sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD;
    fftw_plan plan = (n1 == 1) ? fftw_plan_dft_1d(static_cast<int>(n0), buf, buf, fs, flags)
                               : fftw_plan_dft_2d(static_cast<int>(n0), static_cast<int>(n1), buf, buf, fs, flags);
    fftw_free(buf);
    require(plan != nullptr, ErrorKind::Evaluation, "FFTW could not create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<std::size_t, std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void run(std::span<std::complex<double>> data, std::size_t n0, std::size_t n1, int sign) {
  require(data.size() == n0 * n1 && !data.empty(), ErrorKind::Structural, "FFT buffer has the wrong size");
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(cache().get(n0, n1, sign), p, p);
}

}  // namespace

void fft(std::span<std::complex<double>> data, int sign) { run(data, data.size(), 1, sign); }

void fft_2d(std::span<std::complex<double>> data, std::size_t n0, std::size_t n1, int sign) {
  run(data, n0, n1, sign);
}

}  // namespace mlab
