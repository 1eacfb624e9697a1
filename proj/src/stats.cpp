#include "rqim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/erf.hpp>

#include "rqim/errors.hpp"

namespace rqim::stats {

namespace {

double sum_range(const double* p, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += p[i];
    return s;
  }
  const std::size_t half = n / 2;
  return sum_range(p, half) + sum_range(p + half, n - half);
}

struct Moments {
  double m2, m3, m4;
};

Moments central_moments(std::span<const double> sample) {
  const double mu = mean(sample);
  std::vector<double> d2(sample.size()), d3(sample.size()), d4(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double d = sample[i] - mu;
    d2[i] = d * d;
    d3[i] = d2[i] * d;
    d4[i] = d2[i] * d2[i];
  }
  return {mean(d2), mean(d3), mean(d4)};
}

void require_spread(std::span<const double> sample, std::size_t min_n, const char* what) {
  if (sample.size() < min_n)
    throw DomainError(std::string(what) + " needs at least " + std::to_string(min_n) + " samples");
}

void check_power_args(double alpha, double delta, double p_iii) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in (0, 1]");
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  if (!(p_iii >= 0.0 && p_iii <= 0.5)) throw DomainError("region probability must lie in [0, 0.5]");
}

}  // namespace

double pairwise_sum(std::span<const double> values) { return sum_range(values.data(), values.size()); }

double mean(std::span<const double> values) {
  if (values.empty()) throw DomainError("mean of an empty sample");
  return pairwise_sum(values) / static_cast<double>(values.size());
}

double ber(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  if (a.size() != b.size()) throw DomainError("BER needs equal-length bit sequences");
  if (a.empty()) throw DomainError("BER of empty sequences");
  std::size_t errors = 0;
  for (std::size_t i = 0; i < a.size(); ++i) errors += ((a[i] != 0) != (b[i] != 0)) ? 1 : 0;
  return static_cast<double>(errors) / static_cast<double>(a.size());
}

double swr(double signal_power, double watermark_power) {
  if (!(signal_power > 0.0) || !(watermark_power > 0.0))
    throw DomainError("SWR needs strictly positive powers");
  return 10.0 * std::log10(signal_power / watermark_power);
}

double hs_watermark_power(double p_iii) {
  if (!(p_iii >= 0.0 && p_iii <= 0.5)) throw DomainError("region probability must lie in [0, 0.5]");
  return 0.25 + p_iii / 2.0;
}

double rqim_watermark_power(double alpha, double delta, double p_iii) {
  check_power_args(alpha, delta, p_iii);
  return alpha * delta * delta / 12.0 * (1.0 - 2.0 * p_iii);
}

double swr_gap(double alpha, double delta, double p_iii) {
  check_power_args(alpha, delta, p_iii);
  const double ad2 = alpha * delta * delta;
  return (3.0 - ad2) / 12.0 + (3.0 + ad2) / 6.0 * p_iii;
}

RegionProbabilities region_probabilities(std::span<const int> host, int peak) {
  if (host.empty()) throw DomainError("region probabilities of an empty host");
  std::size_t below = 0, at = 0, above = 0;
  for (int h : host) {
    if (h < peak)
      ++below;
    else if (h == peak)
      ++at;
    else
      ++above;
  }
  const double n = static_cast<double>(host.size());
  return {below / n, at / n, above / n};
}

double skewness(std::span<const double> sample) {
  require_spread(sample, 3, "skewness");
  const Moments m = central_moments(sample);
  if (!(m.m2 > 0.0)) throw DomainError("skewness of a zero-variance sample");
  return m.m3 / std::pow(m.m2, 1.5);
}

double kurtosis(std::span<const double> sample) {
  require_spread(sample, 4, "kurtosis");
  const Moments m = central_moments(sample);
  if (!(m.m2 > 0.0)) throw DomainError("kurtosis of a zero-variance sample");
  return m.m4 / (m.m2 * m.m2);
}

double kolmogorov_survival(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  double p;
  if (lambda < 1.18) {
    // Equivalent theta-function form; the alternating series converges
    // slowly for small lambda.
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double s = 0.0;
    for (int j = 1; j <= 100; ++j) {
      const double term = std::exp(-(2.0 * j - 1) * (2.0 * j - 1) * pi2 / (8.0 * lambda * lambda));
      s += term;
      if (term < 1e-17 * s) break;
    }
    p = 1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * s;
  } else {
    double s = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100; ++j) {
      const double term = std::exp(-2.0 * j * j * lambda * lambda);
      s += sign * term;
      sign = -sign;
      if (term < 1e-17) break;
    }
    p = 2.0 * s;
  }
  return std::clamp(p, 0.0, 1.0);
}

TestResult ks_test(std::span<const double> sample, const Cdf& null_cdf) {
  require_spread(sample, 8, "K-S test");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = null_cdf(sorted[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  const double root = std::sqrt(n);
  return {d, kolmogorov_survival((root + 0.12 + 0.11 / root) * d)};
}

TestResult jb_test(std::span<const double> sample) {
  require_spread(sample, 8, "J-B test");
  const double s = skewness(sample);
  const double k = kurtosis(sample);
  const double jb = static_cast<double>(sample.size()) * (s * s / 6.0 + (k - 3.0) * (k - 3.0) / 24.0);
  return {jb, std::exp(-jb / 2.0)};
}

NormalFit fit_normal(std::span<const double> sample) {
  require_spread(sample, 2, "normal fit");
  const double mu = mean(sample);
  std::vector<double> d2(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) d2[i] = (sample[i] - mu) * (sample[i] - mu);
  const double var = pairwise_sum(d2) / static_cast<double>(sample.size() - 1);
  if (!(var > 0.0)) throw DomainError("normal fit of a zero-variance sample");
  return {mu, std::sqrt(var)};
}

double normal_cdf(double x, double mean, double sd) {
  return 0.5 * std::erfc(-(x - mean) / (sd * std::numbers::sqrt2));
}

double normal_quantile(double p, double mean, double sd) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("normal quantile needs p in (0, 1)");
  return mean - sd * std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

Cdf normal_cdf_fn(double mean, double sd) {
  return [mean, sd](double x) { return normal_cdf(x, mean, sd); };
}

Quantile normal_quantile_fn(double mean, double sd) {
  return [mean, sd](double p) { return normal_quantile(p, mean, sd); };
}

Cdf uniform_cdf_fn(double lo, double hi) {
  if (!(hi > lo)) throw DomainError("uniform range must be non-empty");
  return [lo, hi](double x) { return std::clamp((x - lo) / (hi - lo), 0.0, 1.0); };
}

Quantile uniform_quantile_fn(double lo, double hi) {
  if (!(hi > lo)) throw DomainError("uniform range must be non-empty");
  return [lo, hi](double p) { return lo + p * (hi - lo); };
}

std::vector<QqPoint> qq_points(std::span<const double> sample, const Quantile& reference) {
  require_spread(sample, 2, "Q-Q plot");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<QqPoint> out;
  out.reserve(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    out.push_back({reference((static_cast<double>(i) + 0.5) / n), sorted[i]});
  return out;
}

double linear_fit_r2(std::span<const QqPoint> points) {
  if (points.size() < 2) throw DomainError("line fit needs two points");
  std::vector<double> xs, ys;
  for (const auto& p : points) {
    xs.push_back(p.theoretical);
    ys.push_back(p.empirical);
  }
  const double mx = mean(xs), my = mean(ys);
  std::vector<double> sxx(xs.size()), syy(xs.size()), sxy(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx[i] = (xs[i] - mx) * (xs[i] - mx);
    syy[i] = (ys[i] - my) * (ys[i] - my);
    sxy[i] = (xs[i] - mx) * (ys[i] - my);
  }
  const double a = pairwise_sum(sxx), b = pairwise_sum(syy), c = pairwise_sum(sxy);
  if (!(a > 0.0 && b > 0.0)) throw DomainError("line fit of degenerate points");
  return c * c / (a * b);
}

DistributionSummary summarize(std::span<const double> sample) {
  DistributionSummary s;
  s.n = sample.size();
  s.skewness = skewness(sample);
  s.kurtosis = kurtosis(sample);
  const NormalFit fit = fit_normal(sample);
  const TestResult ks = ks_test(sample, normal_cdf_fn(fit.mean, fit.sd));
  s.ks_statistic = ks.statistic;
  s.ks_p = ks.p_value;
  const TestResult jb = jb_test(sample);
  s.jb_statistic = jb.statistic;
  s.jb_p = jb.p_value;
  return s;
}

}  // namespace rqim::stats
