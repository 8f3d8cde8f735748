#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bcond/network.hpp"

namespace bcond {

// Analytic width of the bounds after t work units when all 2^n instances
// of an n-node binary cutset carry equal weight: 1 - 2^-n * t / k_time.
double worst_case_width(int n, double t, double k_time);

// Width after consuming weight classes 0..m of a homogeneous cutset of n
// binary nodes whose first state carries mass p:
//   1 - sum_{j=0}^{m} C(n,j) p^(n-j) (1-p)^j, clamped to [0,1].
double binomial_width(int n, double p, int m);

struct DecayFit {
  double k = 0.0;        // per work-step decay constant
  double residual = 0.0; // rms error of the log-space fit
  std::size_t used = 0;  // points entering the fit
  std::size_t excluded = 0;  // non-positive widths dropped
};

// Least-squares fit of ln(width) = -k (t + 1) over (t, width) pairs.
// Non-positive widths are excluded; all excluded is an error.
DecayFit fit_decay(const std::vector<std::pair<double, double>>& trace);

}  // namespace bcond
