#pragma once
#include <complex>
#include <vector>

// Thin FFTW wrapper. Forward transforms carry the 1/N factor.
// Real transforms use the half spectrum of size n/2+1 (FFTW order).
namespace epnls::fft {

using cplx = std::complex<double>;

std::vector<cplx> rfft(const std::vector<double>& x);
std::vector<double> irfft(const std::vector<cplx>& half, int n);
void rfft(const double* x, cplx* out, int n);
void irfft(const cplx* half, double* out, int n);

std::vector<cplx> cfft(const std::vector<cplx>& x);
std::vector<cplx> icfft(const std::vector<cplx>& X);

} // namespace epnls::fft
