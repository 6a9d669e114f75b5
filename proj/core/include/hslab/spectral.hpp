#pragma once

#include <complex>
#include <vector>

#include "hslab/grid.hpp"

// Spectral calculus for real 1-periodic functions.
//
// Conventions:
//   f(x) = sum_{k=-n/2}^{n/2-1} c_k e^{2 pi i k x},  period exactly 1,
// so every wavenumber carries the 2*pi factor explicitly. Coefficients are
// stored in the half-complex layout k = 0..n/2 (Hermitian symmetry
// c_{-k} = conj(c_k)); the bin k = n/2 holds the real Nyquist coefficient
// c_{-n/2}.
//
// The Nyquist mode is zeroed by odd-order derivatives and by the
// antiderivative (keeps results real and the operators skew-symmetric) and
// kept by even-order derivatives.

namespace hslab {

struct SpectralCoeffs {
  int n = 0;                             // grid size the coefficients refer to
  std::vector<std::complex<double>> c;   // k = 0..n/2

  int num_bins() const { return n / 2 + 1; }

  // Coefficient for any wavenumber in [-n/2, n/2-1].
  std::complex<double> coeff(int k) const {
    if (k >= 0) return c[k];
    if (k == -n / 2) return c[n / 2];
    return std::conj(c[-k]);
  }
};

SpectralCoeffs to_coeffs(const GridFunction& f);
GridFunction to_grid(const SpectralCoeffs& coeffs, Grid grid);

// Spectral derivative of order 1, 2 or 3.
GridFunction deriv(const GridFunction& f, int order);

// Circle mean: the k = 0 coefficient, equal to the arithmetic sample average.
double mean(const GridFunction& f);

// Mean-zero primitive of (f - mean(f)): the Fourier multiplier 1/(2 pi i k)
// with the k = 0 mode set to zero. On mean-zero input this is the
// antiderivative operator used by the nonlocal evolution equations, and it is
// independent of any quadrature base point.
GridFunction antideriv_mean_zero(const GridFunction& f);

// ( sum_k (1 + (2 pi k)^2)^s |c_k|^2 )^{1/2} over the resolved modes
// k = -n/2..n/2-1. Exact for bandlimited f, a truncation otherwise.
double sobolev_norm_circle(const GridFunction& f, double s);

// Zero all modes with |k| > fraction * (n/2). fraction = 2/3 is the cutoff
// applied after every nonlinear product in the evolution kernels.
GridFunction dealias(const GridFunction& f, double fraction);

inline constexpr double kDefaultDealiasFraction = 2.0 / 3.0;

// Pointwise product followed by the dealias cutoff.
GridFunction dealiased_product(const GridFunction& a, const GridFunction& b,
                               double fraction = kDefaultDealiasFraction);

}  // namespace hslab
