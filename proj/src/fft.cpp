#include "wman/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace wman {

namespace {

std::mutex plan_mutex;

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

fftw_plan get_plan(std::size_t n, bool inverse) {
  static std::map<std::size_t, PlanPair>* cache = new std::map<std::size_t, PlanPair>();
  const std::lock_guard<std::mutex> lock(plan_mutex);
  PlanPair& pp = (*cache)[n];
  fftw_plan& plan = inverse ? pp.bwd : pp.fwd;
  if (plan == nullptr) {
    std::vector<cplx> tmp(n);
    plan = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(tmp.data()),
                            reinterpret_cast<fftw_complex*>(tmp.data()),
                            inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                            FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw std::runtime_error("fft: plan creation failed");
  }
  return plan;
}

}  // namespace

void fft(std::vector<cplx>& data, bool inverse) {
  if (data.empty()) return;
  fftw_plan plan = get_plan(data.size(), inverse);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(data.data()),
                   reinterpret_cast<fftw_complex*>(data.data()));
}

void fft_unitary(std::vector<cplx>& data, bool inverse) {
  fft(data, inverse);
  const double s = 1.0 / std::sqrt(static_cast<double>(data.size()));
  for (cplx& v : data) v *= s;
}

}  // namespace wman
