#include "rqim/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "rqim/errors.hpp"
#include "rqim/parallel.hpp"
#include "rqim/stats.hpp"

namespace rqim {

namespace {

QimParams extraction_params(const keying::WatermarkInfo& info, const keying::SecretKey& key) {
  bits_per_symbol(info.m_card);
  return QimParams(key.delta, info.m_card, 1.0, key.k);
}

std::vector<std::size_t> locations_for(const WeightTensor& tensor, const keying::WatermarkInfo& info,
                                       const keying::SecretKey& key) {
  if (info.length > tensor.size())
    throw FormatError("watermark length " + std::to_string(info.length) + " exceeds tensor of " +
                      std::to_string(tensor.size()) + " elements");
  return keying::construct_locations(key.clue, info.length, tensor.size());
}

std::vector<std::uint8_t> unpack(std::span<const Symbol> symbols, std::uint32_t m_card) {
  const unsigned b = bits_per_symbol(m_card);
  std::vector<std::uint8_t> bits;
  bits.reserve(symbols.size() * b);
  for (Symbol s : symbols)
    for (unsigned j = b; j-- > 0;) bits.push_back(static_cast<std::uint8_t>((s >> j) & 1u));
  return bits;
}

void require_same_shape(const WeightTensor& a, const WeightTensor& b) {
  if (a.size() != b.size() || a.precision != b.precision)
    throw FormatError("tensors differ in element count or precision");
}

}  // namespace

MarkResult mark(const WeightTensor& cover, const WatermarkMessage& message, const QimParams& params,
                std::uint64_t clue, unsigned workers) {
  params.validate_reversible();
  bits_per_symbol(params.m_card());
  if (message.m_card != params.m_card())
    throw DomainError("message alphabet " + std::to_string(message.m_card) +
                      " differs from embedding alphabet " + std::to_string(params.m_card()));
  const std::size_t length = message.length();
  const auto locations = keying::construct_locations(clue, length, cover.size());

  MarkResult out;
  out.watermarked = cover;
  out.info = {length, params.m_card()};
  out.key = {params.k(), clue, params.delta()};
  auto& elements = out.watermarked.elements;
  parallel_for(length, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const std::size_t at = locations[i];
      elements[at] = narrow(rqim_embed(cover.elements[at], message.symbols[i], params).watermarked,
                            cover.precision);
    }
  });
  return out;
}

WatermarkMessage extract(const WeightTensor& marked, const keying::WatermarkInfo& info,
                         const keying::SecretKey& key, unsigned workers) {
  const QimParams params = extraction_params(info, key);
  const auto locations = locations_for(marked, info, key);
  std::vector<Symbol> symbols(info.length);
  parallel_for(info.length, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) symbols[i] = rqim_extract(marked.elements[locations[i]], params);
  });
  return WatermarkMessage::from_symbols(std::move(symbols), info.m_card);
}

WeightTensor restore(const WeightTensor& marked, const keying::WatermarkInfo& info,
                     const keying::SecretKey& key, double alpha, unsigned workers) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("restoration needs alpha in (0, 1)");
  const QimParams params = extraction_params(info, key).with_alpha(alpha);
  const auto locations = locations_for(marked, info, key);
  WeightTensor out = marked;
  parallel_for(info.length, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const std::size_t at = locations[i];
      out.elements[at] = narrow(rqim_recover(marked.elements[at], params), marked.precision);
    }
  });
  return out;
}

double default_tolerance(Precision precision) {
  return precision == Precision::binary32 ? 1e-5 : 1e-9;
}

VerificationReport diff(const WeightTensor& a, const WeightTensor& b, double tolerance) {
  require_same_shape(a, b);
  VerificationReport report;
  report.tolerance = tolerance;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = a.elements[i];
    if (std::fabs(x - b.elements[i]) > tolerance * std::max(1.0, std::fabs(x))) ++report.mismatch_count;
  }
  report.tampered = report.mismatch_count > 0;
  report.b = a.size() ? static_cast<double>(report.mismatch_count) / static_cast<double>(a.size()) : 0.0;
  return report;
}

VerificationReport verify_integrity_noiseless(const WeightTensor& marked,
                                              const keying::WatermarkInfo& info,
                                              const keying::SecretKey& key, double alpha,
                                              const WeightTensor& original, double tolerance,
                                              unsigned workers) {
  require_same_shape(marked, original);
  return diff(original, restore(marked, info, key, alpha, workers), tolerance);
}

VerificationReport verify_integrity_noisy(const WeightTensor& received,
                                          const keying::WatermarkInfo& info,
                                          const keying::SecretKey& key, double alpha,
                                          const WeightTensor& original, double noise_bound,
                                          double tolerance, unsigned workers) {
  require_same_shape(received, original);
  if (!(noise_bound >= 0.0)) throw DomainError("noise bound must be non-negative");
  const QimParams params = extraction_params(info, key).with_alpha(alpha);
  if (!(noise_bound < decision_margin(params)))
    throw UnsupportedError("noise bound " + std::to_string(noise_bound) +
                           " is not below the decision margin " +
                           std::to_string(decision_margin(params)) +
                           "; extraction is not guaranteed on this channel");
  const WeightTensor restored = restore(received, info, key, alpha, workers);
  std::vector<char> is_marked(received.size(), 0);
  for (std::size_t at : locations_for(received, info, key)) is_marked[at] = 1;

  VerificationReport report;
  report.tolerance = tolerance;
  const double marked_allowance = noise_bound / (1.0 - alpha);
  for (std::size_t i = 0; i < original.size(); ++i) {
    const double x = original.elements[i];
    const double allowance = (is_marked[i] ? marked_allowance : noise_bound) +
                             tolerance * std::max(1.0, std::fabs(x));
    if (std::fabs(restored.elements[i] - x) > allowance) ++report.mismatch_count;
  }
  report.tampered = report.mismatch_count > 0;
  report.b = original.size()
                 ? static_cast<double>(report.mismatch_count) / static_cast<double>(original.size())
                 : 0.0;
  return report;
}

InfringementResult infringement_check(const WeightTensor& suspect, const keying::WatermarkInfo& info,
                                      const keying::SecretKey& key, const WatermarkMessage& original,
                                      double threshold, unsigned workers) {
  const WatermarkMessage estimate = extract(suspect, info, key, workers);
  auto bits = unpack(estimate.symbols, estimate.m_card);
  if (bits.size() < original.bits.size())
    throw FormatError("watermark info describes fewer bits than the reference message");
  bits.resize(original.bits.size());
  InfringementResult out;
  out.ber = stats::ber(original.bits, bits);
  out.detected = out.ber <= threshold;
  return out;
}

Powers measure_powers(const WeightTensor& original, const WeightTensor& marked) {
  require_same_shape(original, marked);
  std::vector<double> signal(original.size()), watermark(original.size());
  for (std::size_t i = 0; i < original.size(); ++i) {
    const double d = marked.elements[i] - original.elements[i];
    signal[i] = original.elements[i] * original.elements[i];
    watermark[i] = d * d;
  }
  return {stats::mean(signal), stats::mean(watermark)};
}

}  // namespace rqim
