#include "hslab/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numbers>

namespace hslab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// FFTW plan pair for one grid size, created once against scratch buffers and
// executed with the new-array interface. Planning uses FFTW_ESTIMATE so plan
// selection (and therefore output) is reproducible across runs. The cache is
// mutex-guarded; execution itself is thread-safe on distinct buffers.
class FftEngine {
 public:
  static FftEngine& instance() {
    static FftEngine engine;
    return engine;
  }

  void forward(const double* in, std::complex<double>* out, int n) {
    const Plans& p = plans(n);
    double* buf_r = static_cast<double*>(fftw_malloc(sizeof(double) * n));
    fftw_complex* buf_c =
        static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1)));
    std::copy(in, in + n, buf_r);
    fftw_execute_dft_r2c(p.r2c, buf_r, buf_c);
    for (int k = 0; k <= n / 2; ++k)
      out[k] = std::complex<double>(buf_c[k][0], buf_c[k][1]) / static_cast<double>(n);
    fftw_free(buf_c);
    fftw_free(buf_r);
  }

  void backward(const std::complex<double>* in, double* out, int n) {
    const Plans& p = plans(n);
    double* buf_r = static_cast<double*>(fftw_malloc(sizeof(double) * n));
    fftw_complex* buf_c =
        static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1)));
    for (int k = 0; k <= n / 2; ++k) {
      buf_c[k][0] = in[k].real();
      buf_c[k][1] = in[k].imag();
    }
    fftw_execute_dft_c2r(p.c2r, buf_c, buf_r);
    std::copy(buf_r, buf_r + n, out);
    fftw_free(buf_c);
    fftw_free(buf_r);
  }

 private:
  struct Plans {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
  };

  const Plans& plans(int n) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(n);
    if (it != cache_.end()) return it->second;
    double* r = static_cast<double*>(fftw_malloc(sizeof(double) * n));
    fftw_complex* c =
        static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1)));
    Plans p;
    p.r2c = fftw_plan_dft_r2c_1d(n, r, c, FFTW_ESTIMATE);
    p.c2r = fftw_plan_dft_c2r_1d(n, c, r, FFTW_ESTIMATE);
    fftw_free(c);
    fftw_free(r);
    return cache_.emplace(n, p).first->second;
  }

  std::mutex mutex_;
  std::map<int, Plans> cache_;
};

}  // namespace

SpectralCoeffs to_coeffs(const GridFunction& f) {
  SpectralCoeffs out;
  out.n = f.n();
  out.c.resize(out.num_bins());
  FftEngine::instance().forward(f.v.data(), out.c.data(), out.n);
  return out;
}

GridFunction to_grid(const SpectralCoeffs& coeffs, Grid grid) {
  if (coeffs.n != grid.n)
    throw std::invalid_argument("to_grid: coefficient size does not match grid");
  GridFunction out = GridFunction::zeros(grid);
  FftEngine::instance().backward(coeffs.c.data(), out.v.data(), grid.n);
  return out;
}

GridFunction deriv(const GridFunction& f, int order) {
  if (order < 1 || order > 3)
    throw std::invalid_argument("deriv: order must be 1, 2 or 3");
  SpectralCoeffs coeffs = to_coeffs(f);
  const int n = coeffs.n;
  for (int k = 0; k <= n / 2; ++k) {
    if (k == n / 2) {
      if (order % 2 == 1) {
        coeffs.c[k] = 0.0;  // no real odd derivative exists for the Nyquist mode
      } else {
        // even order: (2 pi i k)^order is real and equal for k = +-n/2
        double w = std::pow(kTwoPi * (n / 2), order);
        coeffs.c[k] *= (order % 4 == 0) ? w : -w;
      }
    } else {
      coeffs.c[k] *= std::pow(std::complex<double>(0.0, kTwoPi * k), order);
    }
  }
  return to_grid(coeffs, f.grid);
}

double mean(const GridFunction& f) {
  double s = 0.0;
  for (double a : f.v) s += a;
  return s / f.n();
}

GridFunction antideriv_mean_zero(const GridFunction& f) {
  SpectralCoeffs coeffs = to_coeffs(f);
  const int n = coeffs.n;
  coeffs.c[0] = 0.0;
  for (int k = 1; k < n / 2; ++k)
    coeffs.c[k] /= std::complex<double>(0.0, kTwoPi * k);
  coeffs.c[n / 2] = 0.0;
  return to_grid(coeffs, f.grid);
}

double sobolev_norm_circle(const GridFunction& f, double s) {
  if (s < 0.0) throw std::invalid_argument("sobolev_norm_circle: s must be >= 0");
  SpectralCoeffs coeffs = to_coeffs(f);
  const int n = coeffs.n;
  double sum = std::norm(coeffs.c[0]);
  for (int k = 1; k < n / 2; ++k)
    sum += 2.0 * std::pow(1.0 + (kTwoPi * k) * (kTwoPi * k), s) * std::norm(coeffs.c[k]);
  // The bin k = n/2 stores the single coefficient c_{-n/2}.
  double kn = kTwoPi * (n / 2);
  sum += std::pow(1.0 + kn * kn, s) * std::norm(coeffs.c[n / 2]);
  return std::sqrt(sum);
}

GridFunction dealias(const GridFunction& f, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw std::invalid_argument("dealias: fraction must lie in (0, 1]");
  SpectralCoeffs coeffs = to_coeffs(f);
  const int n = coeffs.n;
  const int kc = static_cast<int>(std::floor(fraction * (n / 2) + 1e-9));
  for (int k = kc + 1; k <= n / 2; ++k) coeffs.c[k] = 0.0;
  return to_grid(coeffs, f.grid);
}

GridFunction dealiased_product(const GridFunction& a, const GridFunction& b,
                               double fraction) {
  GridFunction prod = a;
  for (int j = 0; j < prod.n(); ++j) prod.v[j] *= b.v[j];
  return dealias(prod, fraction);
}

}  // namespace hslab
