#pragma once

#include "wman/complex.hpp"

#include <vector>

namespace wman {

// FFTW-backed in-place transforms. Plans are cached per size behind a mutex;
// execution runs on the caller's buffer and is safe from multiple threads.
void fft(std::vector<cplx>& data, bool inverse);          // unnormalized
void fft_unitary(std::vector<cplx>& data, bool inverse);  // scaled by 1/sqrt(N)

}  // namespace wman
