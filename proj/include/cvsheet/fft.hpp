#pragma once

#include <complex>
#include <vector>

namespace cvsheet::fft {

// Unnormalized in-place complex transforms, exponent convention
//   forward:  X_k = sum_j x_j exp(-2*pi*i*j*k/n)
//   backward: x_j = sum_k X_k exp(+2*pi*i*j*k/n)
// Plans are cached per size. Plan creation is serialized internally; executing
// a cached plan is safe from several threads at once as long as each call uses
// its own buffer, which these entry points do (they run on the caller's
// vector).
void forward(std::vector<std::complex<double>>& data);
void backward(std::vector<std::complex<double>>& data);

}  // namespace cvsheet::fft
