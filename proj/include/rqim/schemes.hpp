#pragma once

// Whole-tensor watermarking: Mark / Extract / Restore over keyed locations,
// and the integrity-protection and infringement-identification checks built
// on them.

#include <cstddef>
#include <cstdint>
#include <span>

#include "rqim/keying.hpp"
#include "rqim/qim.hpp"
#include "rqim/types.hpp"

namespace rqim {

struct MarkResult {
  WeightTensor watermarked;
  keying::WatermarkInfo info;
  keying::SecretKey key;
};

/// Embeds message.symbols at construct_locations(clue, L, N). Params must be
/// reversible. Marked values are rounded to the tensor's precision.
MarkResult mark(const WeightTensor& cover, const WatermarkMessage& message, const QimParams& params,
                std::uint64_t clue, unsigned workers = 1);

/// Decodes info.length symbols; needs no scaling factor.
WatermarkMessage extract(const WeightTensor& marked, const keying::WatermarkInfo& info,
                         const keying::SecretKey& key, unsigned workers = 1);

/// Inverts mark at the keyed locations. Throws DomainError unless alpha is in (0, 1).
WeightTensor restore(const WeightTensor& marked, const keying::WatermarkInfo& info,
                     const keying::SecretKey& key, double alpha, unsigned workers = 1);

struct VerificationReport {
  double b = 0.0;  // mismatch_count / N
  bool tampered = false;
  std::size_t mismatch_count = 0;
  double tolerance = 0.0;
};

/// 1e-9 for binary64, 1e-5 for binary32 (relative to max(1, |a|)).
double default_tolerance(Precision precision);

/// Element-wise comparison; a mismatch is |a - b| > tolerance * max(1, |a|).
VerificationReport diff(const WeightTensor& a, const WeightTensor& b, double tolerance);

VerificationReport verify_integrity_noiseless(const WeightTensor& marked,
                                              const keying::WatermarkInfo& info,
                                              const keying::SecretKey& key, double alpha,
                                              const WeightTensor& original, double tolerance,
                                              unsigned workers = 1);

/// Allows noise_bound/(1 - alpha) of residual at marked positions and
/// noise_bound elsewhere. Throws UnsupportedError when noise_bound is not
/// below the decision margin.
VerificationReport verify_integrity_noisy(const WeightTensor& received,
                                          const keying::WatermarkInfo& info,
                                          const keying::SecretKey& key, double alpha,
                                          const WeightTensor& original, double noise_bound,
                                          double tolerance, unsigned workers = 1);

struct InfringementResult {
  double ber = 0.0;
  bool detected = false;
};

inline constexpr double kDetectionThreshold = 0.1;

/// BER between the owner's message bits and those extracted from the suspect.
InfringementResult infringement_check(const WeightTensor& suspect, const keying::WatermarkInfo& info,
                                      const keying::SecretKey& key, const WatermarkMessage& original,
                                      double threshold = kDetectionThreshold, unsigned workers = 1);

/// Empirical signal-to-watermark power terms: mean(W^2) and mean((W' - W)^2).
struct Powers {
  double signal = 0.0;
  double watermark = 0.0;
};
Powers measure_powers(const WeightTensor& original, const WeightTensor& marked);

}  // namespace rqim
