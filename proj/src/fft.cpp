#include "cvsheet/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace cvsheet::fft {
namespace {

// One plan pair per transform size. Plans are created with FFTW_UNALIGNED so
// they can execute on arbitrary std::vector storage via the new-array
// interface, and FFTW_ESTIMATE so planning never touches the scratch buffer's
// contents (and stays fast; these sizes are small).
struct PlanPair {
  fftw_plan fwd;
  fftw_plan bwd;
};

std::mutex plan_mutex;
std::map<std::size_t, PlanPair>& plan_cache() {
  static std::map<std::size_t, PlanPair> cache;
  return cache;
}

PlanPair plans_for(std::size_t n) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto& cache = plan_cache();
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<std::complex<double>> scratch(n);
  auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
  PlanPair pp;
  pp.fwd = fftw_plan_dft_1d(static_cast<int>(n), p, p, FFTW_FORWARD,
                            FFTW_ESTIMATE | FFTW_UNALIGNED);
  pp.bwd = fftw_plan_dft_1d(static_cast<int>(n), p, p, FFTW_BACKWARD,
                            FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!pp.fwd || !pp.bwd) throw std::runtime_error("fft: plan creation failed");
  cache.emplace(n, pp);
  return pp;
}

}  // namespace

void forward(std::vector<std::complex<double>>& data) {
  if (data.empty()) throw std::invalid_argument("fft::forward: empty buffer");
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plans_for(data.size()).fwd, p, p);
}

void backward(std::vector<std::complex<double>>& data) {
  if (data.empty()) throw std::invalid_argument("fft::backward: empty buffer");
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plans_for(data.size()).bwd, p, p);
}

}  // namespace cvsheet::fft
