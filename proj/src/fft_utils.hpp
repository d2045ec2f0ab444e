#pragma once

#include <complex>
#include <vector>

namespace stou::detail {

/// Unnormalized forward real-to-complex DFT of length n (n/2+1 output bins).
/// The input vector is zero-padded or truncated to length n.
std::vector<std::complex<double>> rfft(const std::vector<double>& in,
                                       std::size_t n);

/// Inverse complex-to-real DFT of length n, normalized by 1/n.
std::vector<double> irfft(const std::vector<std::complex<double>>& spec,
                          std::size_t n);

}  // namespace stou::detail
