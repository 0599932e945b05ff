#pragma once

#include <complex>
#include <vector>

namespace mntc::fft {

using Complex = std::complex<double>;

/// Unitary transform between the centered mode grid q_j = 2 pi j / N and the
/// centered site grid n = j, with j = -N/2 .. N/2-1 stored at array index
/// j + N/2:
///
///   to_sites:  psi_n = N^{-1/2} sum_j psi_j exp(+i q_j n)
///   to_modes:  psi_j = N^{-1/2} sum_n psi_n exp(-i q_j n)
///
/// N must be even. Backed by FFTW with the centering phases applied around
/// the raw transform.
std::vector<Complex> to_sites(const std::vector<Complex> &mode_amps);
std::vector<Complex> to_modes(const std::vector<Complex> &site_amps);

} // namespace mntc::fft
