#pragma once

// Metrics and distribution tests: BER, SWR and the closed-form watermark
// powers of the HS / R-QIM comparison, moment statistics, Kolmogorov-Smirnov,
// Jarque-Bera and Q-Q data.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace rqim::stats {

/// Pairwise (cascade) summation; identical result for identical input order.
double pairwise_sum(std::span<const double> values);
double mean(std::span<const double> values);

/// Fraction of differing bits. Throws DomainError on length mismatch or empty input.
double ber(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

/// 10 log10(signal / watermark) in dB. Both powers must be positive.
double swr(double signal_power, double watermark_power);

/// Closed forms of the equal-payload comparison on a symmetric host.
/// p_iii is the probability mass above the peak, accepted in [0, 0.5].
double hs_watermark_power(double p_iii);                               // 1/4 + p/2
double rqim_watermark_power(double alpha, double delta, double p_iii);  // (a d^2/12)(1 - 2p)
double swr_gap(double alpha, double delta, double p_iii);               // HS minus R-QIM

struct RegionProbabilities {
  double p_i = 0.0;
  double p_ii = 0.0;
  double p_iii = 0.0;
};

RegionProbabilities region_probabilities(std::span<const int> host, int peak);

/// Population moments m3/m2^1.5 and m4/m2^2 (Pearson, non-excess).
/// Throw DomainError for too-small or zero-variance samples.
double skewness(std::span<const double> sample);
double kurtosis(std::span<const double> sample);

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

using Cdf = std::function<double(double)>;
using Quantile = std::function<double(double)>;

/// One-sample K-S test; p from the asymptotic Kolmogorov distribution with
/// the (sqrt(n) + 0.12 + 0.11/sqrt(n)) D scaling. Needs n >= 8.
TestResult ks_test(std::span<const double> sample, const Cdf& null_cdf);

/// Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2), clamped to [0, 1].
double kolmogorov_survival(double lambda);

/// JB = n (S^2/6 + (K-3)^2/24), p = exp(-JB/2). Needs n >= 8.
TestResult jb_test(std::span<const double> sample);

struct NormalFit {
  double mean = 0.0;
  double sd = 1.0;
};
/// Sample mean and (n-1)-normalised standard deviation.
NormalFit fit_normal(std::span<const double> sample);

double normal_cdf(double x, double mean, double sd);
double normal_quantile(double p, double mean, double sd);
Cdf normal_cdf_fn(double mean, double sd);
Quantile normal_quantile_fn(double mean, double sd);
Cdf uniform_cdf_fn(double lo, double hi);
Quantile uniform_quantile_fn(double lo, double hi);

struct QqPoint {
  double theoretical;
  double empirical;
};

/// (Q((i - 0.5)/n), x_(i)) for i = 1..n over the sorted sample.
std::vector<QqPoint> qq_points(std::span<const double> sample, const Quantile& reference);

/// Coefficient of determination of the least-squares line through the points.
double linear_fit_r2(std::span<const QqPoint> points);

struct DistributionSummary {
  double skewness = 0.0;
  double kurtosis = 0.0;
  double ks_statistic = 0.0;
  double ks_p = 1.0;
  double jb_statistic = 0.0;
  double jb_p = 1.0;
  std::size_t n = 0;
};

/// Moments, K-S against a fitted normal, and J-B.
DistributionSummary summarize(std::span<const double> sample);

}  // namespace rqim::stats
