#include "rqim/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "rqim/errors.hpp"
#include "rqim/hs.hpp"
#include "rqim/keying.hpp"
#include "rqim/model_io.hpp"
#include "rqim/qim.hpp"
#include "rqim/schemes.hpp"
#include "rqim/stats.hpp"

namespace rqim::cli {

namespace {

// Defaults reproduce the reference experiment configuration.
constexpr double kDefaultDelta = 1.0;
constexpr double kDefaultAlpha = 0.8675;
constexpr double kDefaultK = 0.0;
constexpr std::uint32_t kDefaultMCard = 2;
constexpr std::uint64_t kDefaultClue = 1;
constexpr int kDefaultAnalysisPair = 3;

struct ModelInput {
  std::string path;
  bool raw = false;
  std::string dtype = "f64";
  std::size_t count = 0;

  void attach(CLI::App* cmd, const std::string& flag = "--model") {
    cmd->add_option(flag, path, "Weight tensor file")->required();
    cmd->add_flag("--raw", raw, "Treat the model as a headerless little-endian dump");
    cmd->add_option("--dtype", dtype, "Raw element type")->check(CLI::IsMember({"f32", "f64"}));
    cmd->add_option("--count", count, "Raw element count");
  }

  WeightTensor load() const {
    if (!raw) return io::load_tensor(path);
    const Precision p = dtype == "f32" ? Precision::binary32 : Precision::binary64;
    return io::read_raw(io::read_file(path), p, count);
  }
};

struct MessageInput {
  std::string text;
  std::string file;

  void attach(CLI::App* cmd) {
    auto* t = cmd->add_option("--message", text, "Watermark text");
    auto* f = cmd->add_option("--message-file", file, "File holding the watermark text");
    t->excludes(f);
    f->excludes(t);
  }

  bool given() const { return !text.empty() || !file.empty(); }
  std::string load() const { return file.empty() ? text : io::read_text_file(file); }
};

std::string fmt(double v) { return io::format_double(v); }

std::string swr_text(const Powers& p) {
  if (!(p.watermark > 0.0)) return "inf";
  if (!(p.signal > 0.0)) return "-inf";
  return fmt(stats::swr(p.signal, p.watermark));
}

// --- HS plumbing for the --method hs variants ---

struct HsMarked {
  WeightTensor tensor;
  keying::HsKey key;
  std::size_t bits = 0;
};

HsMarked hs_mark(const WeightTensor& cover, const std::vector<std::uint8_t>& bits, int q) {
  const hs::PreparedHost prepared = hs::prepare_host(cover.elements, q);
  const auto marked = hs::hs_embed(prepared.host.host_values, bits, prepared.params);
  HsMarked out;
  out.tensor.precision = cover.precision;
  out.tensor.elements = hs::deprocess(prepared.host, marked);
  for (double& v : out.tensor.elements) v = narrow(v, cover.precision);
  out.key = {q, prepared.host.pair_index, prepared.host.shift, prepared.params.peak,
             prepared.params.valley};
  out.bits = bits.size();
  // Extraction re-derives the host from the stored weights, so the written
  // tensor must reproduce the marked host exactly.
  const auto reread = hs::preprocess(out.tensor.elements, q, out.key.shift, out.key.pair_index);
  if (reread.host_values != marked)
    throw UnsupportedError(
        "HS-marked weights do not re-read to the marked host at this precision and digit count");
  return out;
}

hs::PreprocessedHost hs_reread(const WeightTensor& tensor, const keying::HsKey& key) {
  return hs::preprocess(tensor.elements, key.digit_count, key.shift, key.pair_index);
}

std::vector<std::uint8_t> hs_extract_bits(const WeightTensor& tensor, const keying::HsKey& key,
                                          std::size_t length) {
  auto bits = hs::hs_extract(hs_reread(tensor, key).host_values, {key.peak, key.valley});
  if (bits.size() < length) throw FormatError("HS host carries fewer bits than the info file states");
  bits.resize(length);
  return bits;
}

WeightTensor hs_restore(const WeightTensor& tensor, const keying::HsKey& key) {
  const auto host = hs_reread(tensor, key);
  const auto recovered = hs::hs_recover(host.host_values, {key.peak, key.valley});
  WeightTensor out{hs::deprocess(host, recovered), tensor.precision};
  for (double& v : out.elements) v = narrow(v, tensor.precision);
  return out;
}

// --- commands ---

struct MarkCmd {
  ModelInput model;
  MessageInput message;
  double delta = kDefaultDelta;
  double alpha = kDefaultAlpha;
  std::uint32_t m_card = kDefaultMCard;
  double k = kDefaultK;
  std::uint64_t clue = kDefaultClue;
  std::string out, key_out, alpha_out, info_out, method = "rqim";
  int q = hs::kDefaultDigits;
  unsigned threads = 1;

  void attach(CLI::App* cmd) {
    model.attach(cmd);
    message.attach(cmd);
    cmd->add_option("--delta", delta, "Quantization step size")->capture_default_str();
    cmd->add_option("--alpha", alpha, "Scaling factor")->capture_default_str();
    cmd->add_option("--m-card", m_card, "Alphabet size |M| (power of two)")->capture_default_str();
    cmd->add_option("--k", k, "Dither value")->capture_default_str();
    cmd->add_option("--clue", clue, "Location seed")->capture_default_str();
    cmd->add_option("--out", out, "Watermarked tensor output")->required();
    cmd->add_option("--key-out", key_out, "Secret key output")->required();
    cmd->add_option("--alpha-out", alpha_out, "Scaling factor output (R-QIM)");
    cmd->add_option("--info-out", info_out, "Watermark info output")->required();
    cmd->add_option("--method", method, "rqim or hs")
        ->check(CLI::IsMember({"rqim", "hs"}))
        ->capture_default_str();
    cmd->add_option("--q", q, "HS digit count")->capture_default_str();
    cmd->add_option("--threads", threads, "Worker threads")->capture_default_str();
  }

  int run(std::ostream& os, std::ostream& es) const {
    if (!message.given()) {
      es << "mark: one of --message or --message-file is required\n";
      return kUsage;
    }
    const WeightTensor cover = model.load();
    const std::string text = message.load();
    if (method == "hs") {
      if (m_card != 2) throw DomainError("HS embeds binary messages only (--m-card 2)");
      const WatermarkMessage msg = io::encode_message(text, 2);
      const HsMarked marked = hs_mark(cover, msg.bits, q);
      io::save_tensor(out, marked.tensor);
      io::write_text_file(key_out, keying::serialize_hs_key(marked.key));
      io::write_text_file(info_out, keying::serialize_info({marked.bits, 2}));
      os << "method = hs\nL = " << marked.bits << "\n|M| = 2\nSWR_dB = "
         << swr_text(measure_powers(cover, marked.tensor)) << "\n";
      return kOk;
    }
    if (alpha_out.empty()) {
      es << "mark: --alpha-out is required for R-QIM\n";
      return kUsage;
    }
    const QimParams params(delta, m_card, alpha, k);
    params.validate_reversible();
    const WatermarkMessage msg = io::encode_message(text, m_card);
    const MarkResult result = mark(cover, msg, params, clue, threads);
    io::save_tensor(out, result.watermarked);
    io::write_text_file(key_out, keying::serialize_key(result.key));
    io::write_text_file(info_out, keying::serialize_info(result.info));
    io::write_text_file(alpha_out, keying::serialize_alpha(alpha));
    os << "method = rqim\nL = " << result.info.length << "\n|M| = " << result.info.m_card
       << "\nSWR_dB = " << swr_text(measure_powers(cover, result.watermarked)) << "\n";
    return kOk;
  }
};

struct SideInfo {
  std::string key, info;

  void attach(CLI::App* cmd) {
    cmd->add_option("--key", key, "Secret key file")->required();
    cmd->add_option("--info", info, "Watermark info file")->required();
  }
};

struct ExtractCmd {
  ModelInput model;
  SideInfo side;
  std::string out, bits_out;
  unsigned threads = 1;

  void attach(CLI::App* cmd) {
    model.attach(cmd);
    side.attach(cmd);
    cmd->add_option("--out", out, "Decoded text output")->required();
    cmd->add_option("--bits-out", bits_out, "Extracted bit dump ('0'/'1')");
    cmd->add_option("--threads", threads, "Worker threads")->capture_default_str();
  }

  int run(std::ostream& os, std::ostream& es) const {
    const WeightTensor tensor = model.load();
    const std::string key_text = io::read_text_file(side.key);
    const auto info = keying::parse_info(io::read_text_file(side.info));
    WatermarkMessage msg;
    if (keying::is_hs_key(key_text)) {
      msg = WatermarkMessage::from_bits(hs_extract_bits(tensor, keying::parse_hs_key(key_text), info.length), 2);
    } else {
      msg = extract(tensor, info, keying::parse_key(key_text), threads);
    }
    const io::DecodedText decoded = io::decode_message(msg);
    io::write_text_file(out, decoded.text);
    if (!bits_out.empty()) io::write_text_file(bits_out, io::bits_to_string(msg.bits));
    if (decoded.padding_nonzero) es << "warning: nonzero padding bits; the payload may be corrupted\n";
    os << "L = " << info.length << "\nbytes = " << decoded.text.size() << "\n";
    return kOk;
  }
};

struct RestoreCmd {
  ModelInput model;
  SideInfo side;
  std::string alpha_file, out;
  unsigned threads = 1;

  void attach(CLI::App* cmd) {
    model.attach(cmd);
    side.attach(cmd);
    cmd->add_option("--alpha-file", alpha_file, "Scaling factor file (R-QIM)");
    cmd->add_option("--out", out, "Restored tensor output")->required();
    cmd->add_option("--threads", threads, "Worker threads")->capture_default_str();
  }

  int run(std::ostream& os, std::ostream& es) const {
    const WeightTensor tensor = model.load();
    const std::string key_text = io::read_text_file(side.key);
    const auto info = keying::parse_info(io::read_text_file(side.info));
    WeightTensor restored;
    if (keying::is_hs_key(key_text)) {
      restored = hs_restore(tensor, keying::parse_hs_key(key_text));
    } else {
      if (alpha_file.empty()) {
        es << "restore: --alpha-file is required for R-QIM\n";
        return kUsage;
      }
      const double alpha = keying::parse_alpha(io::read_text_file(alpha_file));
      restored = restore(tensor, info, keying::parse_key(key_text), alpha, threads);
    }
    io::save_tensor(out, restored);
    os << "restored = " << restored.size() << "\n";
    return kOk;
  }
};

struct VerifyCmd {
  ModelInput model;
  std::string original;
  SideInfo side;
  std::string alpha_file;
  std::optional<double> noise_bound;
  std::optional<double> tolerance;
  bool strict = false;
  unsigned threads = 1;

  void attach(CLI::App* cmd) {
    model.attach(cmd);
    cmd->add_option("--original", original, "Original tensor held by the owner")->required();
    side.attach(cmd);
    cmd->add_option("--alpha-file", alpha_file, "Scaling factor file (R-QIM)");
    cmd->add_option("--noise-bound", noise_bound, "Known additive noise bound; enables noisy mode");
    cmd->add_option("--tolerance", tolerance, "Relative comparison tolerance");
    cmd->add_flag("--strict-exit", strict, "Exit 4 when tampering is detected");
    cmd->add_option("--threads", threads, "Worker threads")->capture_default_str();
  }

  int run(std::ostream& os, std::ostream& es) const {
    const WeightTensor tensor = model.load();
    const WeightTensor orig = io::load_tensor(original);
    const std::string key_text = io::read_text_file(side.key);
    const auto info = keying::parse_info(io::read_text_file(side.info));
    const double tol = tolerance.value_or(default_tolerance(tensor.precision));
    VerificationReport report;
    if (keying::is_hs_key(key_text)) {
      if (noise_bound) throw UnsupportedError("noisy-channel verification needs an R-QIM key");
      report = diff(orig, hs_restore(tensor, keying::parse_hs_key(key_text)), tol);
    } else {
      if (alpha_file.empty()) {
        es << "verify: --alpha-file is required for R-QIM\n";
        return kUsage;
      }
      const double alpha = keying::parse_alpha(io::read_text_file(alpha_file));
      const auto key = keying::parse_key(key_text);
      report = noise_bound
                   ? verify_integrity_noisy(tensor, info, key, alpha, orig, *noise_bound, tol, threads)
                   : verify_integrity_noiseless(tensor, info, key, alpha, orig, tol, threads);
    }
    os << "mode = " << (noise_bound ? "noisy" : "noiseless") << "\nb = " << fmt(report.b)
       << "\nmismatches = " << report.mismatch_count << "\ntolerance = " << fmt(report.tolerance)
       << "\ntampered = " << (report.tampered ? "yes" : "no") << "\n";
    return (strict && report.tampered) ? kDetected : kOk;
  }
};

struct InfringeCmd {
  ModelInput model;
  SideInfo side;
  MessageInput message;
  double threshold = kDetectionThreshold;
  bool strict = false;
  unsigned threads = 1;

  void attach(CLI::App* cmd) {
    model.attach(cmd);
    side.attach(cmd);
    message.attach(cmd);
    cmd->add_option("--threshold", threshold, "Detection threshold on BER")->capture_default_str();
    cmd->add_flag("--strict-exit", strict, "Exit 4 when the watermark is detected");
    cmd->add_option("--threads", threads, "Worker threads")->capture_default_str();
  }

  int run(std::ostream& os, std::ostream& es) const {
    if (!message.given()) {
      es << "infringe: one of --message or --message-file is required\n";
      return kUsage;
    }
    const WeightTensor tensor = model.load();
    const std::string key_text = io::read_text_file(side.key);
    const auto info = keying::parse_info(io::read_text_file(side.info));
    const std::string text = message.load();
    InfringementResult result;
    if (keying::is_hs_key(key_text)) {
      const WatermarkMessage original = io::encode_message(text, 2);
      auto bits = hs_extract_bits(tensor, keying::parse_hs_key(key_text), info.length);
      if (bits.size() < original.bits.size())
        throw FormatError("watermark info describes fewer bits than the reference message");
      bits.resize(original.bits.size());
      result.ber = stats::ber(original.bits, bits);
      result.detected = result.ber <= threshold;
    } else {
      const WatermarkMessage original = io::encode_message(text, info.m_card);
      result = infringement_check(tensor, info, keying::parse_key(key_text), original, threshold, threads);
    }
    os << "BER = " << fmt(result.ber) << "\nthreshold = " << fmt(threshold)
       << "\ndetected = " << (result.detected ? "yes" : "no") << "\n";
    return (strict && result.detected) ? kDetected : kOk;
  }
};

struct AnalyzeCmd {
  ModelInput model;
  std::string qq = "uniform";
  std::string out_csv, qq_csv, raw_qq_csv;
  int q = hs::kDefaultDigits;
  int pair_index = kDefaultAnalysisPair;

  void attach(CLI::App* cmd) {
    model.attach(cmd);
    cmd->add_option("--qq", qq, "Q-Q reference distribution")
        ->check(CLI::IsMember({"normal", "uniform"}))
        ->capture_default_str();
    cmd->add_option("--out-csv", out_csv, "Summary CSV (metric,value)")->required();
    cmd->add_option("--qq-csv", qq_csv, "Q-Q CSV of the preprocessed view");
    cmd->add_option("--raw-qq-csv", raw_qq_csv, "Q-Q CSV of the raw view");
    cmd->add_option("--q", q, "Digit count of the preprocessed view")->capture_default_str();
    cmd->add_option("--pair-index", pair_index, "Digit pair position c")->capture_default_str();
  }

  static std::vector<io::CsvRow> summary_rows(const std::string& view, const stats::DistributionSummary& s) {
    return {{view + "_n", static_cast<std::int64_t>(s.n)},
            {view + "_skewness", s.skewness},
            {view + "_kurtosis", s.kurtosis},
            {view + "_ks_statistic", s.ks_statistic},
            {view + "_ks_p", s.ks_p},
            {view + "_jb_statistic", s.jb_statistic},
            {view + "_jb_p", s.jb_p}};
  }

  stats::Quantile reference(std::span<const double> sample, bool preprocessed) const {
    if (qq == "normal") {
      const auto fit = stats::fit_normal(sample);
      return stats::normal_quantile_fn(fit.mean, fit.sd);
    }
    if (preprocessed) return stats::uniform_quantile_fn(hs::kHostMin, hs::kHostMax);
    const auto [lo, hi] = std::minmax_element(sample.begin(), sample.end());
    return stats::uniform_quantile_fn(*lo, *hi);
  }

  static void write_qq(const std::string& path, const std::vector<stats::QqPoint>& points) {
    std::vector<io::CsvRow> rows;
    rows.reserve(points.size());
    for (const auto& p : points) rows.push_back({p.theoretical, p.empirical});
    io::write_text_file(path, io::write_csv({"theoretical", "empirical"}, rows));
  }

  int run(std::ostream& os, std::ostream&) const {
    const WeightTensor tensor = model.load();
    const auto& raw = tensor.elements;
    std::vector<double> pre;
    pre.reserve(raw.size());
    for (double w : raw) pre.push_back(hs::digit_pair_value(w, q, pair_index));
    const auto raw_summary = stats::summarize(raw);
    const auto pre_summary = stats::summarize(pre);
    auto rows = summary_rows("raw", raw_summary);
    for (auto& r : summary_rows("preprocessed", pre_summary)) rows.push_back(std::move(r));
    const auto pre_qq = stats::qq_points(pre, reference(pre, true));
    rows.push_back({std::string("preprocessed_qq_r2"), stats::linear_fit_r2(pre_qq)});
    io::write_text_file(out_csv, io::write_csv({"metric", "value"}, rows));
    if (!qq_csv.empty()) write_qq(qq_csv, pre_qq);
    if (!raw_qq_csv.empty()) write_qq(raw_qq_csv, stats::qq_points(raw, reference(raw, false)));
    for (const auto& r : rows) {
      os << std::get<std::string>(r[0]) << " = ";
      if (const auto* d = std::get_if<double>(&r[1]))
        os << fmt(*d);
      else
        os << std::get<std::int64_t>(r[1]);
      os << "\n";
    }
    return kOk;
  }
};

struct CompareCmd {
  ModelInput model;
  std::vector<double> fractions{20, 40, 60, 80, 100};
  double delta = kDefaultDelta;
  double alpha = kDefaultAlpha;
  double k = kDefaultK;
  std::uint64_t clue = kDefaultClue;
  int q = hs::kDefaultDigits;
  std::string out_csv;
  unsigned threads = 1;

  void attach(CLI::App* cmd) {
    model.attach(cmd);
    cmd->add_option("--fractions", fractions, "Host prefix percentages")->delimiter(',')->capture_default_str();
    cmd->add_option("--delta", delta, "Quantization step size")->capture_default_str();
    cmd->add_option("--alpha", alpha, "Scaling factor")->capture_default_str();
    cmd->add_option("--k", k, "Dither value")->capture_default_str();
    cmd->add_option("--clue", clue, "Seed for locations and payload bits")->capture_default_str();
    cmd->add_option("--q", q, "HS digit count")->capture_default_str();
    cmd->add_option("--out-csv", out_csv, "Comparison CSV")->required();
    cmd->add_option("--threads", threads, "Worker threads")->capture_default_str();
  }

  int run(std::ostream& os, std::ostream&) const {
    const WeightTensor tensor = model.load();
    const QimParams params(delta, 2, alpha, k);
    params.validate_reversible();
    std::vector<io::CsvRow> rows;
    for (double f : fractions) {
      if (!(f > 0.0 && f <= 100.0)) throw DomainError("fractions must lie in (0, 100]");
      const auto n = static_cast<std::size_t>(std::floor(f / 100.0 * static_cast<double>(tensor.size())));
      WeightTensor prefix{{tensor.elements.begin(), tensor.elements.begin() + static_cast<std::ptrdiff_t>(n)},
                          tensor.precision};
      const hs::PreparedHost prepared = hs::prepare_host(prefix.elements, q);
      const std::size_t capacity_hs = hs::hs_capacity(prepared.host.host_values);

      keying::SplitMix64 rng(clue);
      std::vector<std::uint8_t> payload(capacity_hs);
      for (auto& b : payload) b = static_cast<std::uint8_t>(rng.next() >> 63);

      const auto hs_marked = hs::hs_embed(prepared.host.host_values, payload, prepared.params);
      WeightTensor hs_tensor{hs::deprocess(prepared.host, hs_marked), prefix.precision};
      for (double& v : hs_tensor.elements) v = narrow(v, prefix.precision);
      const auto rq = mark(prefix, WatermarkMessage::from_bits(payload, 2), params, clue, threads);

      const std::string swr_rqim = swr_text(measure_powers(prefix, rq.watermarked));
      const std::string swr_hs = swr_text(measure_powers(prefix, hs_tensor));
      rows.push_back({f, static_cast<std::int64_t>(n), static_cast<std::int64_t>(n),
                      static_cast<std::int64_t>(capacity_hs), static_cast<std::int64_t>(capacity_hs),
                      swr_rqim, swr_hs});
      os << "fraction " << fmt(f) << "%: length " << n << ", C_RQIM " << n << ", C_HS " << capacity_hs
         << ", SWR_RQIM " << swr_rqim << " dB, SWR_HS " << swr_hs << " dB\n";
    }
    io::write_text_file(out_csv, io::write_csv({"fraction", "length", "capacity_rqim", "capacity_hs",
                                                "payload_bits", "swr_rqim_db", "swr_hs_db"},
                                               rows));
    return kOk;
  }
};

struct DistortionCmd {
  double delta = kDefaultDelta;
  double alpha = kDefaultAlpha;
  std::uint32_t m_card = kDefaultMCard;
  std::size_t samples = 1000000;
  std::uint64_t clue = kDefaultClue;
  std::string out_csv;

  void attach(CLI::App* cmd) {
    cmd->add_option("--delta", delta, "Quantization step size")->capture_default_str();
    cmd->add_option("--alpha", alpha, "Scaling factor")->capture_default_str();
    cmd->add_option("--m-card", m_card, "Alphabet size |M|")->capture_default_str();
    cmd->add_option("--samples", samples, "Monte-Carlo sample count")->capture_default_str();
    cmd->add_option("--clue", clue, "Sampling seed")->capture_default_str();
    cmd->add_option("--out-csv", out_csv, "Distortion CSV");
  }

  int run(std::ostream& os, std::ostream&) const {
    const QimParams params(delta, m_card, alpha, 0.0);
    if (samples == 0) throw DomainError("--samples must be positive");
    keying::SplitMix64 rng(clue);
    std::vector<double> sq(samples);
    double max_err = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
      const double s = rng.next_unit() * delta;
      const auto m = static_cast<Symbol>(rng.next() % m_card);
      const double d = rqim_embed(s, m, params).watermarked - s;
      sq[i] = d * d;
      max_err = std::max(max_err, std::fabs(d));
    }
    const double measured = stats::mean(sq);
    const MseFormulas theory = theoretical_mse(params);
    const double paper_err = std::fabs(theory.paper_value - measured) / measured;
    const double derived_err = std::fabs(theory.derived_value - measured) / measured;
    const std::string supported = derived_err <= paper_err ? "alpha^2*delta^2/12" : "alpha*delta^2/12";
    const std::vector<io::CsvRow> rows{
        {std::string("samples"), static_cast<std::int64_t>(samples)},
        {std::string("delta"), delta},
        {std::string("alpha"), alpha},
        {std::string("measured_mse"), measured},
        {std::string("linear_alpha_mse"), theory.paper_value},
        {std::string("squared_alpha_mse"), theory.derived_value},
        {std::string("linear_alpha_rel_error"), paper_err},
        {std::string("squared_alpha_rel_error"), derived_err},
        {std::string("measured_max_abs_error"), max_err},
        {std::string("max_abs_error_bound"), alpha * delta / 2.0},
        {std::string("supported_formula"), supported},
    };
    if (!out_csv.empty()) io::write_text_file(out_csv, io::write_csv({"quantity", "value"}, rows));
    os << "measured MSE = " << fmt(measured) << "\n"
       << "alpha*delta^2/12 = " << fmt(theory.paper_value) << " (rel. error " << fmt(paper_err) << ")\n"
       << "alpha^2*delta^2/12 = " << fmt(theory.derived_value) << " (rel. error " << fmt(derived_err)
       << ")\n"
       << "max |s'-s| = " << fmt(max_err) << " (bound alpha*delta/2 = " << fmt(alpha * delta / 2.0) << ")\n"
       << "Monte-Carlo supports " << supported << "\n";
    return kOk;
  }
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::format:
    case ErrorKind::io:
      return kIoOrFormat;
    case ErrorKind::domain:
    case ErrorKind::capacity:
    case ErrorKind::unsupported:
      return kCapacityOrParameter;
  }
  return kCapacityOrParameter;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reversible QIM watermarking for model weights"};
  app.name("rqim");
  app.require_subcommand(1);

  MarkCmd mark_cmd;
  ExtractCmd extract_cmd;
  RestoreCmd restore_cmd;
  VerifyCmd verify_cmd;
  InfringeCmd infringe_cmd;
  AnalyzeCmd analyze_cmd;
  CompareCmd compare_cmd;
  DistortionCmd distortion_cmd;

  std::vector<std::pair<CLI::App*, std::function<int()>>> commands;
  auto add = [&](const char* name, const char* desc, auto& cmd) {
    CLI::App* sub = app.add_subcommand(name, desc);
    cmd.attach(sub);
    commands.emplace_back(sub, [&cmd, &out, &err] { return cmd.run(out, err); });
  };
  add("mark", "Embed a watermark into a weight tensor", mark_cmd);
  add("extract", "Extract the watermark (no scaling factor needed)", extract_cmd);
  add("restore", "Recover the original weights", restore_cmd);
  add("verify", "Integrity check against the original tensor", verify_cmd);
  add("infringe", "Decide whether a suspect model carries the watermark", infringe_cmd);
  add("analyze", "Distribution statistics of raw and digit-pair views", analyze_cmd);
  add("compare", "Capacity and SWR of R-QIM versus HS", compare_cmd);
  add("distortion", "Monte-Carlo embedding distortion", distortion_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    for (auto& [sub, fn] : commands)
      if (sub->parsed()) return fn();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIoOrFormat;
  }
  return kUsage;
}

}  // namespace rqim::cli
