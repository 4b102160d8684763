#include "singquad/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace singquad::fft {

namespace {

// Plans are created once per (extents, sign) on scratch buffers and run through the
// new-array interface, which FFTW documents as thread safe. Only the planner is locked.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(const std::vector<int>& dims, int sign) {
    std::lock_guard<std::mutex> lock(mtx_);
    auto key = std::make_pair(dims, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::size_t total = 1;
    for (int d : dims) total *= static_cast<std::size_t>(d);
    fftw_complex* scratch = fftw_alloc_complex(total);
    fftw_plan p = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), scratch, scratch, sign,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    if (!p) throw std::runtime_error("fft: plan creation failed");
    plans_.emplace(key, p);
    return p;
  }

 private:
  std::mutex mtx_;
  std::map<std::pair<std::vector<int>, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void run(std::vector<cplx>& data, const std::vector<int>& dims, int sign) {
  std::size_t total = 1;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("fft: extents must be positive");
    total *= static_cast<std::size_t>(d);
  }
  if (data.size() != total) throw std::invalid_argument("fft: data size does not match extents");
  if (total == 0) return;
  fftw_plan p = cache().get(dims, sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(p, ptr, ptr);
}

}  // namespace

void forward(std::vector<cplx>& data, const std::vector<int>& dims) { run(data, dims, FFTW_FORWARD); }
void backward(std::vector<cplx>& data, const std::vector<int>& dims) { run(data, dims, FFTW_BACKWARD); }

void dft(std::vector<cplx>& data, const std::vector<int>& dims) {
  forward(data, dims);
  const double s = 1.0 / static_cast<double>(data.size());
  for (auto& v : data) v *= s;
}

void idft(std::vector<cplx>& data, const std::vector<int>& dims) { backward(data, dims); }

}  // namespace singquad::fft
