#pragma once

#include <vector>

#include "hslab/interval.hpp"

// Numerical probe of the Sobolev class of the odd periodic extension.
// Partial sums S(K) = sum_{|k|<=K} (1+(2 pi k)^2)^s |c_k|^2 of the extension
// are monitored over dyadic cutoffs: bounded growth is consistent with
// membership in H^s(S); sustained power-law growth certifies the extension
// left the class. A finite grid cannot certify true divergence, so
// "divergent" is operationalized as growth above 5% per octave over the last
// three octaves of K.

namespace hslab {

struct ScanPoint {
  int cutoff = 0;
  double partial_sum = 0.0;
};

// Extends v oddly (trace-zero required) and returns the partial sums at the
// given increasing cutoffs; cutoffs must not exceed m (= n/2 of the
// extension grid).
std::vector<ScanPoint> extension_regularity_scan(const IntervalFunction& v,
                                                 double s,
                                                 const std::vector<int>& cutoffs);

// Growth per octave between consecutive scan points, normalized as
// (S2/S1)^{1/log2(K2/K1)} - 1 so non-dyadic cutoff lists compare fairly.
std::vector<double> scan_octave_growth(const std::vector<ScanPoint>& scan);

// True when the last three octave growth rates all exceed 5%.
bool scan_divergent(const std::vector<ScanPoint>& scan);

}  // namespace hslab
