#include "bcond/convergence.hpp"

#include <cmath>

namespace bcond {

double worst_case_width(int n, double t, double k_time) {
  if (n < 1) throw Error("worst_case_width: n must be >= 1");
  if (t < 0.0) throw Error("worst_case_width: t must be >= 0");
  if (k_time <= 0.0) throw Error("worst_case_width: k_time must be > 0");
  const double solves = t / k_time;
  if (solves > std::ldexp(1.0, n)) {
    throw Error("worst_case_width: more solves than instances");
  }
  return 1.0 - std::ldexp(solves, -n);
}

double binomial_width(int n, double p, int m) {
  if (n < 1) throw Error("binomial_width: n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw Error("binomial_width: p must be in [0,1]");
  if (m < 0 || m > n) throw Error("binomial_width: m must be in [0,n]");
  double sum = 0.0;
  double coeff = 1.0;  // C(n, j), updated multiplicatively
  for (int j = 0; j <= m; ++j) {
    if (j > 0) coeff = coeff * (n - j + 1) / j;
    sum += coeff * std::pow(p, n - j) * std::pow(1.0 - p, j);
  }
  const double width = 1.0 - sum;
  return std::min(std::max(width, 0.0), 1.0);
}

DecayFit fit_decay(const std::vector<std::pair<double, double>>& trace) {
  if (trace.size() < 2) throw Error("fit_decay: need at least two points");
  DecayFit fit;
  double num = 0.0, den = 0.0;
  std::vector<std::pair<double, double>> used;
  for (const auto& [t, width] : trace) {
    if (!(width > 0.0)) {
      ++fit.excluded;
      continue;
    }
    if (width > 1.0) throw Error("fit_decay: width above 1");
    const double x = t + 1.0;
    const double y = std::log(width);
    num += -x * y;
    den += x * x;
    used.emplace_back(x, y);
  }
  if (used.empty()) throw Error("fit_decay: every width was excluded");
  fit.used = used.size();
  fit.k = den > 0.0 ? num / den : 0.0;
  double ss = 0.0;
  for (const auto& [x, y] : used) {
    const double r = y + fit.k * x;
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / used.size());
  return fit;
}

}  // namespace bcond
