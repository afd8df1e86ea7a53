#include "cn4/powerlaw.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <numeric>

#include "cn4/error.hpp"
#include "cn4/parallel.hpp"

namespace cn4 {

namespace {

// q^s * zeta(s, q), which stays near 1 where zeta itself underflows.
double scaled_hurwitz_zeta(double s, double q) {
  if (!(s > 1.0) || !(q > 0.0)) throw ParameterError("hurwitz_zeta needs s > 1 and q > 0");
  // Euler-Maclaurin with the direct sum carried until q + N >= 16.
  static constexpr double kCoef[] = {
      1.0 / 12.0,
      -1.0 / 720.0,
      1.0 / 30240.0,
      -1.0 / 1209600.0,
      1.0 / 47900160.0,
      -691.0 / 1307674368000.0,
      1.0 / 74724249600.0,
      -3617.0 / 10670622842880000.0,
  };
  double sum = 0.0;
  double a = q;
  while (a < 16.0) {
    sum += std::pow(a / q, -s);
    a += 1.0;
  }
  double a_s = std::pow(a / q, -s);
  sum += a * a_s / (s - 1.0) + 0.5 * a_s;
  double poch = s;         // s (s+1) ... (s+2j-2)
  double power = a_s / a;  // (a/q)^-s a^(-2j+1)
  for (std::size_t j = 0; j < std::size(kCoef); ++j) {
    sum += kCoef[j] * poch * power;
    poch *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
    power /= a * a;
  }
  return sum;
}

}  // namespace

double hurwitz_zeta(double s, double q) { return std::pow(q, -s) * scaled_hurwitz_zeta(s, q); }

double log_hurwitz_zeta(double s, double q) {
  return -s * std::log(q) + std::log(scaled_hurwitz_zeta(s, q));
}

namespace {

double maximize_alpha(std::size_t n, double sum_log, std::int64_t xmin, double seed) {
  auto negll = [&](double alpha) {
    return static_cast<double>(n) * log_hurwitz_zeta(alpha, static_cast<double>(xmin)) +
           alpha * sum_log;
  };
  double lo = 1.0 + 1e-9;
  double hi = std::max(4.0, 2.0 * seed);
  for (;;) {
    auto [x, fx] = boost::math::tools::brent_find_minima(negll, lo, hi, 50);
    if (x < hi - 1e-6 * hi || hi > 1e3) return x;
    hi *= 2.0;
  }
}

}  // namespace

double approximate_alpha(std::span<const std::int64_t> tail, std::int64_t xmin) {
  double denom = 0;
  for (auto x : tail) denom += std::log(static_cast<double>(x) / (static_cast<double>(xmin) - 0.5));
  return 1.0 + static_cast<double>(tail.size()) / denom;
}

double fit_alpha(std::span<const std::int64_t> tail, std::int64_t xmin) {
  if (tail.empty()) throw FitError("empty tail");
  double sum_log = 0;
  for (auto x : tail) {
    if (x < xmin) throw FitError("tail sample below xmin");
    sum_log += std::log(static_cast<double>(x));
  }
  return maximize_alpha(tail.size(), sum_log, xmin, approximate_alpha(tail, xmin));
}

double log_likelihood(std::span<const std::int64_t> tail, std::int64_t xmin, double alpha) {
  double sum_log = 0;
  for (auto x : tail) sum_log += std::log(static_cast<double>(x));
  return -static_cast<double>(tail.size()) * log_hurwitz_zeta(alpha, static_cast<double>(xmin)) -
         alpha * sum_log;
}

double ks_distance(std::span<const std::int64_t> sorted_tail, std::int64_t xmin, double alpha) {
  double log_z = log_hurwitz_zeta(alpha, static_cast<double>(xmin));
  auto cdf_below = [&](std::int64_t x) {
    return -std::expm1(log_hurwitz_zeta(alpha, static_cast<double>(x)) - log_z);
  };
  double n = static_cast<double>(sorted_tail.size());
  double d = 0;
  std::size_t i = 0;
  // Both CDFs are step functions on the integers, and the empirical one only
  // moves at observed values, so the supremum is reached just before or at
  // one of them.
  while (i < sorted_tail.size()) {
    std::int64_t x = sorted_tail[i];
    double below = cdf_below(x);
    double upto = cdf_below(x + 1);
    double before = static_cast<double>(i) / n;
    while (i < sorted_tail.size() && sorted_tail[i] == x) ++i;
    double after = static_cast<double>(i) / n;
    d = std::max({d, std::fabs(below - before), std::fabs(upto - after)});
  }
  return d;
}

Moments moments(std::span<const std::int64_t> samples) {
  Moments m;
  double n = static_cast<double>(samples.size());
  if (samples.empty()) return m;
  for (auto x : samples) m.mean += static_cast<double>(x);
  m.mean /= n;
  double m2 = 0, m3 = 0, m4 = 0;
  for (auto x : samples) {
    double d = static_cast<double>(x) - m.mean;
    double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  if (samples.size() < 2) return m;
  m.variance = m2 / (n - 1.0);
  m.std_dev = std::sqrt(m.variance);
  if (m.variance > 0) {
    m.skewness = (m3 / n) / (m.variance * m.std_dev);
    m.kurtosis = (m4 / n) / (m.variance * m.variance) - 3.0;
  }
  return m;
}

namespace {

struct ScanResult {
  double alpha;
  std::int64_t xmin;
  double ks;
  std::size_t tail_start;
};

ScanResult scan_xmin(const std::vector<std::int64_t>& sorted) {
  std::vector<std::size_t> starts;  // first position of each distinct value
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (i == 0 || sorted[i] != sorted[i - 1]) starts.push_back(i);
  if (starts.size() < 2) throw FitError("degenerate sample: fewer than two distinct values");
  std::vector<double> suffix_log(sorted.size() + 1, 0.0);
  for (std::size_t i = sorted.size(); i-- > 0;)
    suffix_log[i] = suffix_log[i + 1] + std::log(static_cast<double>(sorted[i]));

  ScanResult best{0, 0, std::numeric_limits<double>::infinity(), 0};
  for (std::size_t k = 0; k + 1 < starts.size(); ++k) {
    std::size_t from = starts[k];
    std::int64_t xmin = sorted[from];
    std::size_t n = sorted.size() - from;
    double seed_denom = 0;
    for (std::size_t j = k; j < starts.size(); ++j) {
      std::size_t cnt = (j + 1 < starts.size() ? starts[j + 1] : sorted.size()) - starts[j];
      seed_denom += static_cast<double>(cnt) *
                    std::log(static_cast<double>(sorted[starts[j]]) / (static_cast<double>(xmin) - 0.5));
    }
    double seed = 1.0 + static_cast<double>(n) / seed_denom;
    double alpha = maximize_alpha(n, suffix_log[from], xmin, seed);
    double ks = ks_distance(std::span(sorted).subspan(from), xmin, alpha);
    if (ks < best.ks) best = {alpha, xmin, ks, from};
  }
  return best;
}

}  // namespace

PowerLawFit powerlaw_fit(std::span<const std::int64_t> samples, const FitOptions& options) {
  if (samples.empty()) throw FitError("no samples");
  for (auto x : samples)
    if (x < 1) throw FitError("samples must be positive integers");
  std::vector<std::int64_t> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  ScanResult best = scan_xmin(sorted);

  PowerLawFit fit;
  fit.alpha = best.alpha;
  fit.xmin = best.xmin;
  fit.ks = best.ks;
  fit.n = sorted.size();
  fit.tail_n = sorted.size() - best.tail_start;
  fit.log_likelihood = log_likelihood(std::span(sorted).subspan(best.tail_start), fit.xmin, fit.alpha);
  fit.moments = moments(samples);

  std::size_t head = best.tail_start;
  double p_tail = static_cast<double>(fit.tail_n) / static_cast<double>(fit.n);
  std::vector<signed char> exceeded(options.bootstrap, -1);
  parallel_for(options.bootstrap, effective_threads(options.threads), [&](std::size_t r, unsigned) {
    Rng rng(options.seed, r);
    std::vector<std::int64_t> synth(sorted.size());
    for (auto& x : synth) {
      if (head == 0 || rng.uniform() < p_tail) {
        x = sample_powerlaw(fit.alpha, fit.xmin, rng);
      } else {
        x = sorted[rng.below(head)];
      }
    }
    std::sort(synth.begin(), synth.end());
    try {
      exceeded[r] = scan_xmin(synth).ks >= fit.ks ? 1 : 0;
    } catch (const FitError&) {
      exceeded[r] = -1;
    }
  });
  std::size_t hits = 0;
  for (auto e : exceeded) {
    if (e < 0) continue;
    ++fit.bootstrap_n;
    hits += static_cast<std::size_t>(e);
  }
  fit.p_value = fit.bootstrap_n ? static_cast<double>(hits) / static_cast<double>(fit.bootstrap_n) : 0.0;
  return fit;
}

std::int64_t sample_powerlaw(double alpha, std::int64_t xmin, Rng& rng) {
  double r = 1.0 - rng.uniform();  // (0, 1]
  double log_z = log_hurwitz_zeta(alpha, static_cast<double>(xmin));
  auto ccdf = [&](std::int64_t x) {
    return std::exp(log_hurwitz_zeta(alpha, static_cast<double>(x)) - log_z);
  };
  double guess = std::floor((static_cast<double>(xmin) - 0.5) * std::pow(r, -1.0 / (alpha - 1.0)) + 0.5);
  constexpr double kCap = 1e15;
  std::int64_t x = static_cast<std::int64_t>(std::clamp(guess, static_cast<double>(xmin), kCap));
  // Smallest x with P(X >= x + 1) < r; P(X >= xmin) = 1 >= r always.
  while (x > xmin && ccdf(x) < r) --x;
  while (x < static_cast<std::int64_t>(kCap) && ccdf(x + 1) >= r) ++x;
  return x;
}

}  // namespace cn4
