#pragma once

// Thin FFTW wrapper. sign = -1 computes sum_j x_j e^{-2 pi i jk/n}; sign = +1
// the conjugate kernel. Neither direction is normalized.

#include <complex>
#include <cstddef>
#include <span>

namespace mlab {

void fft(std::span<std::complex<double>> data, int sign);
/// Row-major n0 x n1 array.
void fft_2d(std::span<std::complex<double>> data, std::size_t n0, std::size_t n1, int sign);

}  // namespace mlab
