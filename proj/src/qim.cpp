#include "rqim/qim.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "rqim/errors.hpp"
#include "rqim/parallel.hpp"

namespace rqim {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw DomainError(std::string(what) + " must be finite");
}

void require_symbol(Symbol m, const QimParams& params) {
  if (m >= params.m_card())
    throw DomainError("symbol " + std::to_string(m) + " outside alphabet of size " +
                      std::to_string(params.m_card()));
}

// Nearest point of the dithered coset owned by m.
double coset_point(double x, Symbol m, const QimParams& params) {
  const double shift = codeword_offset(m, params) + params.k();
  return uniform_quantize(x - shift, params.delta()) + shift;
}

}  // namespace

QimParams::QimParams(double delta, std::uint32_t m_card, double alpha, double k)
    : delta_(delta), m_card_(m_card), alpha_(alpha), k_(k) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("step size delta must be positive");
  if (m_card < 2) throw DomainError("alphabet size must be at least 2");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("scaling factor alpha must lie in (0, 1]");
  require_finite(k, "dither k");
  k_ = std::fmod(k, delta);
  if (k_ < 0.0) k_ += delta;
  if (k_ >= delta) k_ = 0.0;
}

bool QimParams::is_reversible() const noexcept {
  const double lower = static_cast<double>(m_card_ - 1) / static_cast<double>(m_card_);
  return alpha_ > lower && alpha_ < 1.0;
}

void QimParams::validate_reversible() const {
  if (!is_reversible())
    throw DomainError("alpha = " + std::to_string(alpha_) + " violates the reversibility constraint (" +
                      std::to_string(m_card_ - 1) + "/" + std::to_string(m_card_) + ", 1)");
}

double codeword_offset(Symbol m, const QimParams& params) {
  require_symbol(m, params);
  const double card = params.m_card();
  return (2.0 * m + 1.0) * params.delta() / (2.0 * card) - params.delta() / 2.0;
}

double uniform_quantize(double x, double delta) {
  require_finite(x, "quantizer input");
  if (!(delta > 0.0)) throw DomainError("step size delta must be positive");
  return delta * std::round(x / delta);
}

double qim_embed(double s, Symbol m, const QimParams& params) {
  require_symbol(m, params);
  return coset_point(s, m, params);
}

Decoded qim_decode(double y, const QimParams& params) {
  require_finite(y, "received value");
  Decoded best{0, 0.0};
  double best_distance = std::numeric_limits<double>::infinity();
  for (Symbol m = 0; m < params.m_card(); ++m) {
    const double point = coset_point(y, m, params);
    const double distance = std::fabs(y - point);
    if (distance < best_distance) {
      best_distance = distance;
      best = {m, point};
    }
  }
  return best;
}

EmbedRecord rqim_embed(double s, Symbol m, const QimParams& params) {
  require_finite(s, "cover value");
  const double q = qim_embed(s, m, params);
  const double alpha = params.alpha();
  return {alpha * q + (1.0 - alpha) * s, q, s - q};
}

Symbol rqim_extract(double y, const QimParams& params) { return qim_decode(y, params).symbol; }

double rqim_recover(double y, const QimParams& params) {
  const double alpha = params.alpha();
  if (alpha >= 1.0) throw DomainError("recovery is undefined for alpha = 1");
  const double q = qim_decode(y, params).point;
  return (y - alpha * q) / (1.0 - alpha);
}

double decision_margin(const QimParams& params) {
  const double card = params.m_card();
  const double lower = (card - 1.0) / card;
  if (params.alpha() < lower)
    throw DomainError("decision margin undefined for alpha below (|M|-1)/|M|");
  const double margin =
      params.delta() / (2.0 * card) - (1.0 - params.alpha()) * params.delta() / 2.0;
  return margin > 0.0 ? margin : 0.0;
}

MseFormulas theoretical_mse(const QimParams& params) {
  const double d2 = params.delta() * params.delta();
  const double a = params.alpha();
  return {a * d2 / 12.0, a * a * d2 / 12.0};
}

EmbeddedSequence embed_sequence(std::span<const double> cover, std::span<const Symbol> message,
                                const QimParams& params, unsigned workers) {
  if (message.size() > cover.size())
    throw CapacityError("message of " + std::to_string(message.size()) +
                        " symbols exceeds cover of " + std::to_string(cover.size()));
  EmbeddedSequence out;
  out.watermarked.assign(cover.begin(), cover.end());
  out.records.resize(message.size());
  parallel_for(message.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      out.records[i] = rqim_embed(cover[i], message[i], params);
      out.watermarked[i] = out.records[i].watermarked;
    }
  });
  return out;
}

}  // namespace rqim
