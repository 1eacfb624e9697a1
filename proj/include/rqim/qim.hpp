#pragma once

// Scalar dithered quantizers: uniform quantization, conventional QIM and
// reversible QIM (R-QIM) with embedding, minimum-distance extraction and
// host recovery.
//
// All arithmetic is binary64. Symbol m of an |M|-ary alphabet owns the
// coset  d_m + k + delta*Z  with d_m = (2m+1)*delta/(2|M|) - delta/2.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace rqim {

using Symbol = std::uint32_t;

class QimParams {
 public:
  /// Throws DomainError unless delta > 0, m_card >= 2 and alpha in (0, 1].
  /// The dither is reduced into [0, delta).
  QimParams(double delta, std::uint32_t m_card, double alpha, double k);

  double delta() const noexcept { return delta_; }
  std::uint32_t m_card() const noexcept { return m_card_; }
  double alpha() const noexcept { return alpha_; }
  double k() const noexcept { return k_; }

  /// True when alpha lies in the open interval ((|M|-1)/|M|, 1), the range
  /// in which embedded values can both be decoded and inverted.
  bool is_reversible() const noexcept;
  /// Throws DomainError when is_reversible() is false.
  void validate_reversible() const;

  /// Same geometry with a different scaling factor.
  QimParams with_alpha(double alpha) const { return {delta_, m_card_, alpha, k_}; }

 private:
  double delta_;
  std::uint32_t m_card_;
  double alpha_;
  double k_;
};

/// Coset offset d_m; symbols are spaced delta/|M| apart inside [-delta/2, delta/2).
double codeword_offset(Symbol m, const QimParams& params);

/// delta * round(x / delta), ties away from zero.
double uniform_quantize(double x, double delta);

/// Nearest point of the dithered coset of m.
double qim_embed(double s, Symbol m, const QimParams& params);

struct Decoded {
  Symbol symbol;
  double point;
};

/// Globally nearest dithered codeword of y; equidistant candidates resolve to
/// the smaller symbol.
Decoded qim_decode(double y, const QimParams& params);

struct EmbedRecord {
  double watermarked;
  double quant_point;
  double quant_error;
};

EmbedRecord rqim_embed(double s, Symbol m, const QimParams& params);
Symbol rqim_extract(double y, const QimParams& params);

/// Inverts rqim_embed: (y - alpha*q) / (1 - alpha) with q the decoded codeword.
/// Throws DomainError for alpha == 1.
double rqim_recover(double y, const QimParams& params);

/// Largest additive noise magnitude under which extraction of an R-QIM output
/// is guaranteed: delta/(2|M|) - (1-alpha)*delta/2. Defined for
/// alpha in [(|M|-1)/|M|, 1]; zero at the lower end.
double decision_margin(const QimParams& params);

struct MseFormulas {
  double paper_value;    // alpha * delta^2 / 12
  double derived_value;  // alpha^2 * delta^2 / 12
};

MseFormulas theoretical_mse(const QimParams& params);

struct EmbeddedSequence {
  std::vector<double> watermarked;
  std::vector<EmbedRecord> records;
};

/// Element-wise rqim_embed over the first message.size() entries of cover;
/// remaining entries are copied. Throws CapacityError if the message is longer.
EmbeddedSequence embed_sequence(std::span<const double> cover, std::span<const Symbol> message,
                                const QimParams& params, unsigned workers = 1);

}  // namespace rqim
