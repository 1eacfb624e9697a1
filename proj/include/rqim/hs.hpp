#pragma once

// Histogram-shifting (HS) baseline for floating-point weights.
//
// Each weight is written as +-0.00..0 n1 n2 ... nq; one pair of consecutive
// significant digits (n_c, n_{c+1}) becomes an integer host value
// sign * (10 n_c + n_{c+1}) + V in [-99, 99], which is then marked with
// single-peak histogram shifting.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rqim::hs {

inline constexpr int kHostMin = -99;
inline constexpr int kHostMax = 99;
inline constexpr int kDefaultDigits = 8;
inline constexpr int kMaxDigits = 15;

struct WeightDigits {
  int sign = 1;           // +1 or -1
  int leading_zeros = 0;  // p
  std::string digits;     // n1..nq
  bool operator==(const WeightDigits&) const = default;
};

/// Decimal decomposition of |w| < 1 rounded to q significant digits.
/// Throws DomainError for |w| >= 1 (or when rounding reaches 1) and for q
/// outside [2, 15].
WeightDigits decompose_weight(double w, int q);

/// Nearest binary64 value to the decimal described by d.
double compose_weight(const WeightDigits& d);

/// Shannon entropy (bits) of the pair value 10*n_c + n_{c+1} across the host.
double pair_entropy(std::span<const WeightDigits> host, int c);

/// 1-based c in [1, q-1] with minimum pair entropy; ties go to the smallest c.
int select_pair_index(std::span<const WeightDigits> host);

struct PreprocessedHost {
  std::vector<int> host_values;
  int pair_index = 1;  // c, 1-based
  int shift = 0;       // V
  int digit_count = kDefaultDigits;
  std::vector<WeightDigits> side_info;
};

/// Builds the integer host. When pair_index is not given it is chosen by
/// minimum entropy. Throws DomainError when any host value leaves [-99, 99].
PreprocessedHost preprocess(std::span<const double> weights, int q, int shift,
                            std::optional<int> pair_index = std::nullopt);

/// Writes (possibly modified) host values back into the stored digit strings.
/// Throws FormatError when a value cannot be re-digitized (|h - V| > 99).
std::vector<double> deprocess(const PreprocessedHost& host, std::span<const int> values);
std::vector<double> deprocess(const PreprocessedHost& host);

/// Signed pair value of any finite weight from its scientific-notation
/// significant digits; used for distribution analysis where |w| >= 1 occurs.
int digit_pair_value(double w, int q, int c);

struct HsParams {
  int peak = 0;    // Omega_max
  int valley = 0;  // Omega_min
};

struct RegionMasks {
  std::vector<std::size_t> region_i;    // h < peak
  std::vector<std::size_t> region_ii;   // h == peak
  std::vector<std::size_t> region_iii;  // h > peak
};

/// Counts for every bin of [-99, 99]; index 0 is -99.
std::vector<std::size_t> histogram(std::span<const int> host);

/// Peak is the most populated bin (ties: smallest value); valley is the
/// smallest empty bin above it. Throws CapacityError when no valley exists.
HsParams choose_peak_valley(std::span<const int> host);

/// Searches V = 0, -1, 1, -2, 2, ... , +-9 until preprocessing and
/// peak/valley selection succeed. Rethrows the last failure otherwise.
struct PreparedHost {
  PreprocessedHost host;
  HsParams params;
};
PreparedHost prepare_host(std::span<const double> weights, int q,
                          std::optional<int> pair_index = std::nullopt);

std::vector<int> hs_embed(std::span<const int> host, std::span<const std::uint8_t> bits,
                          const HsParams& params);
std::vector<std::uint8_t> hs_extract(std::span<const int> marked, const HsParams& params);
std::vector<int> hs_recover(std::span<const int> marked, const HsParams& params);

/// Number of host values equal to the histogram peak.
std::size_t hs_capacity(std::span<const int> host);

RegionMasks region_masks(std::span<const int> host, int peak);

}  // namespace rqim::hs
