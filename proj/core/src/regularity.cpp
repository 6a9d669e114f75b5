#include "hslab/regularity.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hslab/spectral.hpp"

namespace hslab {

std::vector<ScanPoint> extension_regularity_scan(const IntervalFunction& v,
                                                 double s,
                                                 const std::vector<int>& cutoffs) {
  if (cutoffs.empty()) return {};
  for (size_t i = 1; i < cutoffs.size(); ++i)
    if (cutoffs[i] <= cutoffs[i - 1])
      throw std::invalid_argument("extension_regularity_scan: cutoffs must increase");
  if (cutoffs.back() > v.m)
    throw std::invalid_argument(
        "extension_regularity_scan: cutoff exceeds n/2 of the extension grid");

  const GridFunction ext = odd_periodic_extend(v);
  const SpectralCoeffs coeffs = to_coeffs(ext);
  const int n = coeffs.n;
  constexpr double kTwoPi = 2.0 * std::numbers::pi;

  // Cumulative weighted spectrum; +-k pairs counted together.
  std::vector<double> cumulative(n / 2 + 1, 0.0);
  cumulative[0] = std::norm(coeffs.c[0]);
  for (int k = 1; k <= n / 2; ++k) {
    const double w = std::pow(1.0 + (kTwoPi * k) * (kTwoPi * k), s);
    const double mult = (k < n / 2) ? 2.0 : 1.0;  // Nyquist bin is a single mode
    cumulative[k] = cumulative[k - 1] + mult * w * std::norm(coeffs.c[k]);
  }

  std::vector<ScanPoint> out;
  out.reserve(cutoffs.size());
  for (int K : cutoffs) out.push_back({K, cumulative[K]});
  return out;
}

std::vector<double> scan_octave_growth(const std::vector<ScanPoint>& scan) {
  std::vector<double> growth;
  for (size_t i = 1; i < scan.size(); ++i) {
    const double octaves =
        std::log2(static_cast<double>(scan[i].cutoff) / scan[i - 1].cutoff);
    const double ratio = scan[i].partial_sum / scan[i - 1].partial_sum;
    growth.push_back(std::pow(ratio, 1.0 / octaves) - 1.0);
  }
  return growth;
}

bool scan_divergent(const std::vector<ScanPoint>& scan) {
  const std::vector<double> growth = scan_octave_growth(scan);
  if (growth.size() < 3) return false;
  for (size_t i = growth.size() - 3; i < growth.size(); ++i)
    if (growth[i] <= 0.05) return false;
  return true;
}

}  // namespace hslab
