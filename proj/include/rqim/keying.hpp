#pragma once

// Embedding-location construction and the side-information files that travel
// with a watermarked model: secret key (k, cl, delta), watermark info
// (L, |M|) and, kept apart, the scaling factor alpha.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rqim::keying {

/// SplitMix64; the constants are fixed so location sequences are portable.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}
  std::uint64_t next() noexcept;
  /// Uniform double in [0, 1) from the top 53 bits.
  double next_unit() noexcept;

 private:
  std::uint64_t state_;
};

/// First L entries of a partial Fisher-Yates shuffle of [0, N) driven by
/// SplitMix64(clue). Throws CapacityError for L > N.
std::vector<std::size_t> construct_locations(std::uint64_t clue, std::size_t length,
                                             std::size_t count);

struct SecretKey {
  double k = 0.0;
  std::uint64_t clue = 0;
  double delta = 1.0;
  bool operator==(const SecretKey&) const = default;
};

struct WatermarkInfo {
  std::size_t length = 0;
  std::uint32_t m_card = 2;
  bool operator==(const WatermarkInfo&) const = default;
};

/// Side information of the histogram-shifting baseline.
struct HsKey {
  int digit_count = 8;
  int pair_index = 1;
  int shift = 0;
  int peak = 0;
  int valley = 1;
  bool operator==(const HsKey&) const = default;
};

std::string serialize_key(const SecretKey& key);
std::string serialize_info(const WatermarkInfo& info);
std::string serialize_alpha(double alpha);
std::string serialize_hs_key(const HsKey& key);

/// Parsers throw FormatError naming the line and field on malformed input.
SecretKey parse_key(std::string_view text);
WatermarkInfo parse_info(std::string_view text);
double parse_alpha(std::string_view text);
HsKey parse_hs_key(std::string_view text);

/// True when the key text carries "method = hs".
bool is_hs_key(std::string_view text);

/// Lowercase hexadecimal float literal, exact for every finite double.
std::string hex_double(double value);

}  // namespace rqim::keying
