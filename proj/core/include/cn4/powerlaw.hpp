#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cn4/rng.hpp"

namespace cn4 {

struct Moments {
  double mean = 0;
  double variance = 0;  // divides by n - 1
  double std_dev = 0;
  double skewness = 0;  // third central moment over n, divided by std_dev^3
  double kurtosis = 0;  // excess: fourth central moment over n, / variance^2, minus 3
};

struct PowerLawFit {
  double alpha = 0;
  std::int64_t xmin = 0;
  double log_likelihood = 0;
  double ks = 0;
  double p_value = 0;
  std::size_t bootstrap_n = 0;  // replicates that produced a fit
  std::size_t n = 0;            // full sample size
  std::size_t tail_n = 0;       // samples >= xmin
  Moments moments;
};

struct FitOptions {
  std::size_t bootstrap = 100;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

// Hurwitz zeta sum_{k>=0} (k + q)^-s for s > 1, q > 0.
double hurwitz_zeta(double s, double q);
// Its logarithm, finite where the value itself underflows.
double log_hurwitz_zeta(double s, double q);

// 1 + n / sum ln(x / (xmin - 1/2)) over the tail.
double approximate_alpha(std::span<const std::int64_t> tail, std::int64_t xmin);

// Discrete MLE of alpha for samples that are all >= xmin.
double fit_alpha(std::span<const std::int64_t> tail, std::int64_t xmin);

double log_likelihood(std::span<const std::int64_t> tail, std::int64_t xmin, double alpha);

// KS distance between the tail and the fitted law: the supremum over all
// integers x >= xmin of |empirical CDF - model CDF|.
double ks_distance(std::span<const std::int64_t> sorted_tail, std::int64_t xmin, double alpha);

Moments moments(std::span<const std::int64_t> samples);

// Scans every distinct sample value as xmin and keeps the one minimizing
// the KS distance (smallest on ties). Throws FitError on degenerate input.
PowerLawFit powerlaw_fit(std::span<const std::int64_t> samples, const FitOptions& options = {});

// Exact inverse-CDF draw from the discrete power law on x >= xmin.
std::int64_t sample_powerlaw(double alpha, std::int64_t xmin, Rng& rng);

}  // namespace cn4
