#include "hslab/interval.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace hslab {

GridFunction odd_periodic_extend(const IntervalFunction& v) {
  if (v.m < 4)
    throw std::invalid_argument("odd_periodic_extend: need m >= 4");
  constexpr double kTraceTol = 1e-12;
  if (std::abs(v.v[0]) > kTraceTol || std::abs(v.v[v.m]) > kTraceTol) {
    std::ostringstream msg;
    msg << "odd_periodic_extend: nonzero boundary trace, |v(0)|=" << std::abs(v.v[0])
        << " |v(1/2)|=" << std::abs(v.v[v.m]) << " (extension would be discontinuous)";
    throw std::invalid_argument(msg.str());
  }
  const int n = 2 * v.m;
  GridFunction out = GridFunction::zeros(Grid(n));
  for (int j = 0; j <= v.m; ++j) out.v[j] = v.v[j];
  for (int j = v.m + 1; j < n; ++j) out.v[j] = -v.v[n - j];
  return out;
}

IntervalFunction restrict_to_interval(const GridFunction& f) {
  const int m = f.n() / 2;
  IntervalFunction out = IntervalFunction::zeros(m);
  for (int j = 0; j <= m; ++j) out.v[j] = f.v[j];
  return out;
}

void write_interval_function(const IntervalFunction& v, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "# interval-function m=" << v.m << "\n";
  char line[64];
  for (int j = 0; j <= v.m; ++j) {
    std::snprintf(line, sizeof(line), "%.17g %.17g\n", v.node(j), v.v[j]);
    out << line;
  }
}

IntervalFunction read_interval_function(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string header;
  std::getline(in, header);
  int m = 0;
  if (std::sscanf(header.c_str(), "# interval-function m=%d", &m) != 1 || m < 1)
    throw std::runtime_error("bad interval-function header in " + path);
  IntervalFunction out = IntervalFunction::zeros(m);
  for (int j = 0; j <= m; ++j) {
    double x = 0.0, val = 0.0;
    if (!(in >> x >> val))
      throw std::runtime_error("truncated interval-function file " + path);
    if (std::abs(x - out.node(j)) > 1e-12)
      throw std::runtime_error("interval-function node mismatch at row " +
                               std::to_string(j) + " in " + path +
                               ": values must sit at x_j = j/(2m)");
    out.v[j] = val;
  }
  return out;
}

}  // namespace hslab
