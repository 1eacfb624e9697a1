#include "rqim/hs.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "rqim/errors.hpp"

namespace rqim::hs {

namespace {

void require_digit_count(int q) {
  if (q < 2 || q > kMaxDigits)
    throw DomainError("digit count q must lie in [2, " + std::to_string(kMaxDigits) + "]");
}

struct Scientific {
  std::string digits;  // q significant digits
  int exponent = 0;    // |w| ~ d.ddd * 10^exponent
};

// Correctly rounded q-significant-digit expansion of |w| > 0.
Scientific scientific(double magnitude, int q) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.*e", q - 1, magnitude);
  Scientific out;
  const char* p = buf.data();
  for (; *p != 'e'; ++p)
    if (*p >= '0' && *p <= '9') out.digits.push_back(*p);
  out.exponent = std::atoi(p + 1);
  return out;
}

int pair_at(const std::string& digits, int c) {
  return 10 * (digits[c - 1] - '0') + (digits[c] - '0');
}

std::size_t bin(int h) { return static_cast<std::size_t>(h - kHostMin); }

}  // namespace

WeightDigits decompose_weight(double w, int q) {
  require_digit_count(q);
  if (!std::isfinite(w) || std::fabs(w) >= 1.0)
    throw DomainError("weight " + std::to_string(w) + " is not of the form +-0.d...d (|w| < 1)");
  WeightDigits out;
  if (w == 0.0) {
    out.digits.assign(static_cast<std::size_t>(q), '0');
    return out;
  }
  out.sign = w < 0.0 ? -1 : 1;
  const Scientific sci = scientific(std::fabs(w), q);
  if (sci.exponent >= 0)
    throw DomainError("weight " + std::to_string(w) + " rounds to magnitude 1 at " +
                      std::to_string(q) + " digits");
  out.leading_zeros = -sci.exponent - 1;
  out.digits = sci.digits;
  return out;
}

double compose_weight(const WeightDigits& d) {
  std::string text = d.sign < 0 ? "-0." : "0.";
  text.append(static_cast<std::size_t>(d.leading_zeros), '0');
  text += d.digits;
  return std::strtod(text.c_str(), nullptr);
}

double pair_entropy(std::span<const WeightDigits> host, int c) {
  std::array<std::size_t, 100> counts{};
  for (const auto& d : host) ++counts[static_cast<std::size_t>(pair_at(d.digits, c))];
  const double n = static_cast<double>(host.size());
  double entropy = 0.0;
  for (std::size_t count : counts) {
    if (count == 0) continue;
    const double p = static_cast<double>(count) / n;
    entropy -= p * std::log2(p);
  }
  return entropy;
}

int select_pair_index(std::span<const WeightDigits> host) {
  if (host.empty()) throw DomainError("pair selection needs at least one weight");
  const int q = static_cast<int>(host.front().digits.size());
  if (q < 2) throw DomainError("pair selection needs at least two digits");
  int best = 1;
  double best_entropy = pair_entropy(host, 1);
  for (int c = 2; c <= q - 1; ++c) {
    const double e = pair_entropy(host, c);
    if (e < best_entropy) {
      best_entropy = e;
      best = c;
    }
  }
  return best;
}

PreprocessedHost preprocess(std::span<const double> weights, int q, int shift,
                            std::optional<int> pair_index) {
  require_digit_count(q);
  PreprocessedHost out;
  out.digit_count = q;
  out.shift = shift;
  out.side_info.reserve(weights.size());
  for (double w : weights) out.side_info.push_back(decompose_weight(w, q));

  if (pair_index) {
    if (*pair_index < 1 || *pair_index > q - 1)
      throw DomainError("pair index c must lie in [1, q-1]");
    out.pair_index = *pair_index;
  } else if (!out.side_info.empty()) {
    out.pair_index = select_pair_index(out.side_info);
  }

  out.host_values.reserve(weights.size());
  for (const auto& d : out.side_info) {
    const int h = d.sign * pair_at(d.digits, out.pair_index) + shift;
    if (h < kHostMin || h > kHostMax)
      throw DomainError("host value " + std::to_string(h) + " outside [-99, 99] with V = " +
                        std::to_string(shift) + "; choose a different V");
    out.host_values.push_back(h);
  }
  return out;
}

std::vector<double> deprocess(const PreprocessedHost& host, std::span<const int> values) {
  if (values.size() != host.side_info.size())
    throw FormatError("host length does not match the stored side information");
  std::vector<double> out;
  out.reserve(values.size());
  const auto c = static_cast<std::size_t>(host.pair_index);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const int value = values[i] - host.shift;
    if (value < -99 || value > 99)
      throw FormatError("host value " + std::to_string(values[i]) + " at index " +
                        std::to_string(i) + " cannot be re-digitized");
    const int magnitude = std::abs(value);
    WeightDigits d = host.side_info[i];
    d.digits[c - 1] = static_cast<char>('0' + magnitude / 10);
    d.digits[c] = static_cast<char>('0' + magnitude % 10);
    out.push_back(compose_weight(d));
  }
  return out;
}

std::vector<double> deprocess(const PreprocessedHost& host) {
  return deprocess(host, host.host_values);
}

int digit_pair_value(double w, int q, int c) {
  require_digit_count(q);
  if (c < 1 || c > q - 1) throw DomainError("pair index c must lie in [1, q-1]");
  if (!std::isfinite(w)) throw DomainError("weight must be finite");
  if (w == 0.0) return 0;
  const Scientific sci = scientific(std::fabs(w), q);
  return (w < 0.0 ? -1 : 1) * pair_at(sci.digits, c);
}

std::vector<std::size_t> histogram(std::span<const int> host) {
  std::vector<std::size_t> counts(static_cast<std::size_t>(kHostMax - kHostMin + 1), 0);
  for (int h : host) {
    if (h < kHostMin || h > kHostMax)
      throw DomainError("host value " + std::to_string(h) + " outside [-99, 99]");
    ++counts[bin(h)];
  }
  return counts;
}

HsParams choose_peak_valley(std::span<const int> host) {
  if (host.empty()) throw DomainError("histogram of an empty host");
  const auto counts = histogram(host);
  int peak = kHostMin;
  for (int h = kHostMin; h <= kHostMax; ++h)
    if (counts[bin(h)] > counts[bin(peak)]) peak = h;
  for (int v = peak + 1; v <= kHostMax; ++v)
    if (counts[bin(v)] == 0) return {peak, v};
  throw CapacityError("no empty histogram bin above the peak " + std::to_string(peak));
}

PreparedHost prepare_host(std::span<const double> weights, int q, std::optional<int> pair_index) {
  std::optional<int> c = pair_index;
  if (!c) {
    // The pair position does not depend on V; select it once.
    std::vector<WeightDigits> digits;
    digits.reserve(weights.size());
    for (double w : weights) digits.push_back(decompose_weight(w, q));
    if (!digits.empty()) c = select_pair_index(digits);
  }
  std::string last_error = "no shift tried";
  for (int step = 0; step <= 18; ++step) {
    const int shift = (step % 2 == 0) ? step / 2 : -(step + 1) / 2;
    try {
      PreparedHost prepared;
      prepared.host = preprocess(weights, q, shift, c);
      prepared.params = choose_peak_valley(prepared.host.host_values);
      return prepared;
    } catch (const DomainError& e) {
      last_error = e.what();
    } catch (const CapacityError& e) {
      last_error = e.what();
    }
  }
  throw CapacityError("no shift V in [-9, 9] yields a usable host: " + last_error);
}

std::vector<int> hs_embed(std::span<const int> host, std::span<const std::uint8_t> bits,
                          const HsParams& params) {
  if (params.valley <= params.peak) throw DomainError("valley must lie above the peak");
  std::vector<int> out(host.begin(), host.end());
  std::size_t next_bit = 0;
  for (int& h : out) {
    if (h == params.peak) {
      if (next_bit < bits.size()) h += bits[next_bit++] ? 1 : 0;
    } else if (h > params.peak && h < params.valley) {
      h += 1;
    }
  }
  if (next_bit < bits.size())
    throw CapacityError(std::to_string(bits.size()) + " bits exceed HS capacity of " +
                        std::to_string(next_bit));
  return out;
}

std::vector<std::uint8_t> hs_extract(std::span<const int> marked, const HsParams& params) {
  std::vector<std::uint8_t> bits;
  for (int h : marked) {
    if (h == params.peak)
      bits.push_back(0);
    else if (h == params.peak + 1)
      bits.push_back(1);
  }
  return bits;
}

std::vector<int> hs_recover(std::span<const int> marked, const HsParams& params) {
  std::vector<int> out(marked.begin(), marked.end());
  for (int& h : out)
    if (h > params.peak && h <= params.valley) h -= 1;
  return out;
}

std::size_t hs_capacity(std::span<const int> host) {
  if (host.empty()) return 0;
  const auto counts = histogram(host);
  std::size_t best = 0;
  for (std::size_t c : counts) best = std::max(best, c);
  return best;
}

RegionMasks region_masks(std::span<const int> host, int peak) {
  RegionMasks masks;
  for (std::size_t i = 0; i < host.size(); ++i) {
    if (host[i] < peak)
      masks.region_i.push_back(i);
    else if (host[i] == peak)
      masks.region_ii.push_back(i);
    else
      masks.region_iii.push_back(i);
  }
  return masks;
}

}  // namespace rqim::hs
