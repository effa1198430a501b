#pragma once

#include <complex>

namespace wman {

using cplx = std::complex<double>;

}  // namespace wman
