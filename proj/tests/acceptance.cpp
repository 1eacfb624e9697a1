// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli_fixture.hpp"
#include "oracles.hpp"
#include "rqim/errors.hpp"
#include "rqim/hs.hpp"
#include "rqim/keying.hpp"
#include "rqim/model_io.hpp"
#include "rqim/qim.hpp"
#include "rqim/schemes.hpp"
#include "rqim/stats.hpp"

using namespace rqim;
using fixture::report_value;
using fixture::run_cli;

namespace {

constexpr double kAlpha = 0.8675;
constexpr double kDelta = 1.0;
constexpr std::size_t kPayloadBits = 4264;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

WeightTensor gaussian(std::mt19937_64& rng, std::size_t n, double sd) {
  std::normal_distribution<double> dist(0.0, sd);
  WeightTensor w{std::vector<double>(n), Precision::binary64};
  for (auto& v : w.elements) v = dist(rng);
  return w;
}

std::vector<std::uint8_t> random_bits(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::uint8_t> b(n);
  for (auto& x : b) x = static_cast<std::uint8_t>(rng() & 1);
  return b;
}

// Text whose UTF-8 encoding is exactly the given bits (a multiple of 8).
std::string bits_to_text(const std::vector<std::uint8_t>& bits) {
  std::string text(bits.size() / 8, '\0');
  for (std::size_t i = 0; i < bits.size(); ++i)
    text[i / 8] = static_cast<char>(text[i / 8] | (bits[i] << (7 - i % 8)));
  return text;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(fixture::slurp(path));
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream row(line);
    for (std::string c; std::getline(row, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

std::string csv_value(const std::string& path, const std::string& key) {
  for (const auto& r : read_csv(path))
    if (r.size() == 2 && r[0] == key) return r[1];
  return {};
}

// Independent digit-pair value: the decimal digits printed by %.*e.
int oracle_pair(double w, int q, int c) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", q - 1, std::fabs(w));
  std::string digits;
  for (const char* p = buf; *p && *p != 'e'; ++p)
    if (*p >= '0' && *p <= '9') digits.push_back(*p);
  const int v = 10 * (digits[c - 1] - '0') + (digits[c] - '0');
  return w < 0 ? -v : v;
}

// Least-squares R^2 computed without the library.
double oracle_r2(const std::vector<std::vector<std::string>>& rows) {
  long double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const long double x = std::stold(rows[i][0]), y = std::stold(rows[i][1]);
    sx += x, sy += y, sxx += x * x, syy += y * y, sxy += x * y;
    ++n;
  }
  const long double cov = sxy - sx * sy / n, vx = sxx - sx * sx / n, vy = syy - sy * sy / n;
  return static_cast<double>(cov * cov / (vx * vy));
}

// 1. Reversibility at the experiment parameters.
Outcome reversibility() {
  Outcome o;
  fixture::ScratchDir dir("ac1");
  std::mt19937_64 rng(101);
  const auto cover = gaussian(rng, 100000, 0.05);
  const auto bits = random_bits(rng, kPayloadBits);
  io::save_tensor(dir / "w.rqwt", cover);
  io::write_text_file(dir / "msg.txt", bits_to_text(bits));

  const auto start = std::chrono::steady_clock::now();
  const auto marked = run_cli({"mark", "--model", dir / "w.rqwt", "--message-file", dir / "msg.txt", "--delta",
                               "1", "--alpha", "0.8675", "--k", "0", "--out", dir / "wm.rqwt", "--key-out",
                               dir / "key.txt", "--alpha-out", dir / "alpha.txt", "--info-out", dir / "info.txt"});
  const auto extracted = run_cli({"extract", "--model", dir / "wm.rqwt", "--key", dir / "key.txt", "--info",
                                  dir / "info.txt", "--out", dir / "got.txt", "--bits-out", dir / "bits.txt"});
  const auto restored = run_cli({"restore", "--model", dir / "wm.rqwt", "--key", dir / "key.txt", "--info",
                                 dir / "info.txt", "--alpha-file", dir / "alpha.txt", "--out", dir / "back.rqwt"});
  const auto verified = run_cli({"verify", "--model", dir / "wm.rqwt", "--original", dir / "w.rqwt", "--key",
                                 dir / "key.txt", "--info", dir / "info.txt", "--alpha-file", dir / "alpha.txt"});
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  o.require(marked.code == 0 && extracted.code == 0 && restored.code == 0 && verified.code == 0, "commands");
  std::string dump = fixture::slurp(dir / "bits.txt");
  if (!dump.empty() && dump.back() == '\n') dump.pop_back();
  std::vector<std::uint8_t> got;
  for (char c : dump) got.push_back(static_cast<std::uint8_t>(c == '1'));
  const double ber = got.size() == bits.size() ? stats::ber(bits, got) : 1.0;
  const auto back = io::load_tensor(dir / "back.rqwt");
  double max_rel = 0.0;
  for (std::size_t i = 0; i < cover.size(); ++i)
    max_rel = std::max(max_rel, std::fabs(back.elements[i] - cover.elements[i]) /
                                    std::max(1.0, std::fabs(cover.elements[i])));
  const std::string b = report_value(verified.out, "b");

  o.require(ber == 0.0, "BER 0");
  o.require(max_rel <= 1e-12, "max relative error");
  o.require(b == "0", "verify b = 0");
  o.require(seconds < 2.0, "runtime");
  o.detail << " BER=" << ber << " max_rel_err=" << num(max_rel) << " b=" << b << " runtime_s=" << num(seconds);
  return o;
}

// 2. Distortion geometry and the MSE formula arbitration.
Outcome distortion() {
  Outcome o;
  const std::size_t grid = 1000000;
  for (double alpha : {0.5, kAlpha}) {
    const QimParams p(kDelta, 2, alpha, 0.0);
    double max_err = 0.0;
    for (std::size_t i = 0; i < grid; ++i) {
      const double s = kDelta * static_cast<double>(i) / grid;
      for (Symbol m = 0; m < 2; ++m)
        max_err = std::max(max_err, std::fabs(rqim_embed(s, m, p).watermarked - s));
    }
    const double bound = alpha * kDelta / 2;
    o.require(std::fabs(max_err - bound) <= 0.005 * bound, "max error alpha*delta/2");
    o.detail << " max_err(alpha=" << alpha << ")=" << num(max_err);
  }

  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> u(0.0, kDelta);
  const QimParams qim(kDelta, 2, 1.0, 0.0);
  std::vector<double> d(1000000);
  for (auto& x : d) {
    const double s = u(rng);
    x = rqim_embed(s, static_cast<Symbol>(rng() & 1), qim).watermarked - s;
  }
  const double mse = oracle::mean_square(d);
  o.require(std::fabs(mse - 1.0 / 12) <= 0.02 / 12, "alpha=1 MSE");
  o.detail << " mse(alpha=1)=" << num(mse);

  fixture::ScratchDir dir("ac2");
  const auto r = run_cli({"distortion", "--alpha", "0.8", "--samples", "1000000", "--out-csv", dir / "d.csv"});
  const std::string measured = csv_value(dir / "d.csv", "measured_mse");
  const std::string supported = csv_value(dir / "d.csv", "supported_formula");
  o.require(r.code == 0 && !measured.empty(), "distortion command");
  o.require(!csv_value(dir / "d.csv", "linear_alpha_mse").empty() &&
                !csv_value(dir / "d.csv", "squared_alpha_mse").empty(),
            "both formulas reported");
  o.require(supported == "alpha^2*delta^2/12", "Monte-Carlo arbitration");
  o.detail << " mse(alpha=0.8)=" << (measured.empty() ? "?" : num(std::stod(measured))) << " supports "
           << supported;
  return o;
}

// 3. Noise law within the decision margin.
Outcome noise_law() {
  Outcome o;
  std::mt19937_64 rng(303);
  std::normal_distribution<double> host(0.0, 1.0);
  std::size_t correct = 0, within = 0, trials = 0;
  double worst = 0.0;
  for (std::uint32_t m_card : {2u, 4u}) {
    const double alpha = m_card == 2 ? kAlpha : 0.9;
    const QimParams p(kDelta, m_card, alpha, 0.0);
    const double margin = decision_margin(p);
    std::uniform_real_distribution<double> noise(-margin, margin);
    for (int t = 0; t < 5000; ++t, ++trials) {
      const double s = host(rng);
      const auto m = static_cast<Symbol>(rng() % m_card);
      double n = noise(rng);
      while (std::fabs(n) >= margin) n = noise(rng);
      const double y = rqim_embed(s, m, p).watermarked + n;
      if (rqim_extract(y, p) == m) ++correct;
      const double err = std::fabs((rqim_recover(y, p) - s) - n / (1 - alpha));
      worst = std::max(worst, err);
      if (err <= 1e-12) ++within;
    }
  }
  o.require(correct == trials, "extraction");
  o.require(within == trials, "residual n/(1-alpha)");
  o.detail << " trials=" << trials << " correct=" << correct << " worst_residual_dev=" << num(worst);
  return o;
}

// 4. SWR comparison theorem and its closed-form powers.
Outcome theorem() {
  Outcome o;
  const int n = 100;
  std::size_t positive = 0, total = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l, ++total) {
        const double alpha = 0.5 + 0.5 * (i + 0.5) / n;
        const double delta = std::sqrt(3.0) * (j + 1) / n;
        const double p = 0.5 * (l + 0.5) / n;
        if (stats::swr_gap(alpha, delta, p) > 0) ++positive;
      }
  o.require(positive == total, "gap positive on grid");
  const double reversed = stats::swr_gap(kAlpha, 5.0, 0.01);
  o.require(reversed < 0, "gap negative for delta = 5");
  o.detail << " grid_positive=" << positive << "/" << total << " gap(0.8675,5,0.01)=" << num(reversed);

  // Region model: below / at / above the peak with probabilities (p, 1-2p, p).
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> weight(0.0, 1.0);
  const QimParams params(kDelta, 2, kAlpha, 0.0);
  const std::size_t samples = 1000000;
  for (double p : {0.1, 0.25, 0.4}) {
    std::vector<double> hs_mod(samples), rq_mod(samples);
    for (std::size_t i = 0; i < samples; ++i) {
      const double r = u(rng);
      const int region = r < p ? 1 : (r < 1 - p ? 2 : 3);
      const auto bit = static_cast<Symbol>(rng() & 1);
      hs_mod[i] = region == 2 ? bit : (region == 3 ? 1.0 : 0.0);
      const double s = weight(rng);
      rq_mod[i] = region == 2 ? rqim_embed(s, bit, params).watermarked - s : 0.0;
    }
    const double hs_measured = oracle::mean_square(hs_mod);
    const double rq_measured = oracle::mean_square(rq_mod);
    const double hs_closed = stats::hs_watermark_power(p);
    const double rq_closed = stats::rqim_watermark_power(kAlpha, kDelta, p);
    o.require(std::fabs(hs_measured - hs_closed) <= 0.03 * hs_closed, "HS power p=" + num(p));
    o.require(std::fabs(rq_measured - rq_closed) <= 0.03 * rq_closed, "R-QIM power p=" + num(p));
    o.detail << " p=" << p << ":HS " << num(hs_measured) << " vs " << num(hs_closed) << ", R-QIM "
             << num(rq_measured) << " vs " << num(rq_closed);
  }
  return o;
}

// 5. Capacity of both methods.
Outcome capacity() {
  Outcome o;
  fixture::ScratchDir dir("ac5");
  std::mt19937_64 rng(505);
  const std::size_t n = 198656;
  // Positive weights in [0.1, 0.5) leave the pair values 50..99 free, so the
  // HS host has a valley and the comparison can run at full length.
  std::uniform_real_distribution<double> u(0.1, 0.5);
  WeightTensor host{std::vector<double>(n), Precision::binary64};
  for (auto& v : host.elements) v = hs::compose_weight(hs::decompose_weight(u(rng), 8));
  io::save_tensor(dir / "w.rqwt", host);
  const auto r = run_cli({"compare", "--model", dir / "w.rqwt", "--fractions", "20,100", "--out-csv", dir / "c.csv"});
  o.require(r.code == 0, "compare command");
  const auto rows = read_csv(dir / "c.csv");
  std::map<std::string, std::vector<std::string>> by_fraction;
  for (std::size_t i = 1; i < rows.size(); ++i) by_fraction[rows[i][0]] = rows[i];
  const bool have = by_fraction.count("100") && by_fraction.count("20");
  o.require(have, "rows");
  if (have) {
    o.require(by_fraction["100"][2] == std::to_string(n), "C_RQIM = N");
    o.require(by_fraction["20"][2] == std::to_string(n / 5), "C_RQIM at 20%");
    const auto c = hs::prepare_host(host.elements, 8).host.pair_index;
    std::vector<int> pairs;
    for (double w : host.elements) pairs.push_back(oracle_pair(w, 8, c));
    o.require(by_fraction["100"][3] == std::to_string(oracle::max_count(pairs)), "C_HS recount (full host)");
    o.detail << " C_RQIM=" << by_fraction["100"][2] << " C_HS=" << by_fraction["100"][3];
  }

  int agree = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t len = 500 + rng() % 20000;
    std::vector<double> w(len);
    std::normal_distribution<double> g(0.0, 0.01 + 0.2 * u(rng));
    for (auto& v : w) {
      do v = g(rng);
      while (std::fabs(v) >= 0.99);
    }
    const auto pre = hs::preprocess(w, 8, 0);
    std::vector<int> pairs;
    for (double v : w) pairs.push_back(oracle_pair(v, 8, pre.pair_index));
    if (hs::hs_capacity(pre.host_values) == oracle::max_count(pairs)) ++agree;
  }
  o.require(agree == 50, "C_HS recount on random hosts");
  o.detail << " recount_agree=" << agree << "/50";

  std::uniform_int_distribution<int> uniform_int(-99, 99);
  std::vector<int> flat(199000);
  for (auto& v : flat) v = uniform_int(rng);
  const double ratio = static_cast<double>(hs::hs_capacity(flat)) / flat.size() * 199.0;
  o.require(std::fabs(ratio - 1.0) <= 0.2, "uniform host C_HS/N ~ 1/199");
  o.detail << " uniform_ratio_x199=" << num(ratio);
  return o;
}

// 6. HS pipeline reversibility.
Outcome hs_end_to_end() {
  Outcome o;
  std::mt19937_64 rng(606);
  int exact_hosts = 0, refused = 0, other_errors = 0;
  const int hosts = 1000;
  for (int t = 0; t < hosts; ++t) {
    const std::size_t len = 100 + rng() % 900;
    std::normal_distribution<double> g(0.0, 0.01 + 0.1 * (rng() % 1000) / 1000.0);
    std::vector<double> w(len);
    for (auto& v : w) {
      do v = g(rng);
      while (std::fabs(v) >= 0.99);
      v = hs::compose_weight(hs::decompose_weight(v, 8));
    }
    try {
      const auto prepared = hs::prepare_host(w, 8);
      const auto bits = random_bits(rng, hs::hs_capacity(prepared.host.host_values));
      const auto marked = hs::hs_embed(prepared.host.host_values, bits, prepared.params);
      auto got = hs::hs_extract(marked, prepared.params);
      got.resize(bits.size());
      const auto back = hs::deprocess(prepared.host, hs::hs_recover(marked, prepared.params));
      bool same = got == bits && back.size() == w.size();
      for (std::size_t i = 0; same && i < w.size(); ++i)
        same = std::bit_cast<std::uint64_t>(back[i]) == std::bit_cast<std::uint64_t>(w[i]);
      if (same) ++exact_hosts;
    } catch (const CapacityError&) {
      ++refused;
    } catch (const Error&) {
      ++other_errors;
    }
  }
  o.require(exact_hosts == hosts, "every host exact");
  o.detail << " exact=" << exact_hosts << "/" << hosts << " refused_no_valley=" << refused
           << " other_errors=" << other_errors;
  return o;
}

// 7. Usability study of the digit-pair preprocessing.
Outcome usability() {
  Outcome o;
  fixture::ScratchDir dir("ac7");
  std::mt19937_64 rng(707);
  int kurt_ok = 0, ks_reject = 0, r2_ok = 0, runs_ok = 0;
  double kurt_min = 1e9, kurt_max = -1e9, r2_min = 1.0;
  for (int t = 0; t < 100; ++t) {
    io::save_tensor(dir / "g.rqwt", gaussian(rng, 10000, 1.0));
    const auto r = run_cli({"analyze", "--model", dir / "g.rqwt", "--qq", "uniform", "--out-csv", dir / "s.csv",
                            "--qq-csv", dir / "q.csv"});
    if (r.code != 0) continue;
    ++runs_ok;
    const double k = std::stod(csv_value(dir / "s.csv", "preprocessed_kurtosis"));
    const double ks_p = std::stod(csv_value(dir / "s.csv", "preprocessed_ks_p"));
    const double r2 = oracle_r2(read_csv(dir / "q.csv"));
    kurt_min = std::min(kurt_min, k);
    kurt_max = std::max(kurt_max, k);
    r2_min = std::min(r2_min, r2);
    if (k >= 1.7 && k <= 1.95) ++kurt_ok;
    if (ks_p <= 0.05) ++ks_reject;
    if (r2 >= 0.99) ++r2_ok;
  }
  o.require(runs_ok == 100, "analyze runs");
  o.require(kurt_ok == 100, "kurtosis range");
  o.require(ks_reject >= 95, "K-S rejections");
  o.require(r2_ok == 100, "Q-Q R^2");
  o.detail << " kurtosis=[" << num(kurt_min) << "," << num(kurt_max) << "] ks_rejections=" << ks_reject
           << "/100 min_qq_r2=" << num(r2_min);
  return o;
}

// 8. The watermark is gone after restoration.
Outcome removal() {
  Outcome o;
  std::mt19937_64 rng(808);
  const auto cover = gaussian(rng, 20000, 0.05);
  const QimParams params(kDelta, 2, kAlpha, 0.0);
  double lo = 1.0, hi = 0.0;
  int in_range = 0;
  for (int t = 0; t < 100; ++t) {
    const auto msg = WatermarkMessage::from_bits(random_bits(rng, kPayloadBits), 2);
    const auto res = mark(cover, msg, params, rng());
    const auto back = restore(res.watermarked, res.info, res.key, kAlpha);
    const double ber = infringement_check(back, res.info, res.key, msg).ber;
    lo = std::min(lo, ber);
    hi = std::max(hi, ber);
    if (ber >= 0.4 && ber <= 0.6) ++in_range;
  }
  o.require(in_range == 100, "restored BER in [0.4, 0.6]");

  fixture::ScratchDir dir("ac8");
  io::save_tensor(dir / "w.rqwt", cover);
  io::write_text_file(dir / "msg.txt", bits_to_text(random_bits(rng, kPayloadBits)));
  const auto m = run_cli({"mark", "--model", dir / "w.rqwt", "--message-file", dir / "msg.txt", "--out",
                          dir / "wm.rqwt", "--key-out", dir / "key.txt", "--alpha-out", dir / "alpha.txt",
                          "--info-out", dir / "info.txt"});
  const auto rs = run_cli({"restore", "--model", dir / "wm.rqwt", "--key", dir / "key.txt", "--info",
                           dir / "info.txt", "--alpha-file", dir / "alpha.txt", "--out", dir / "back.rqwt"});
  o.require(m.code == 0 && rs.code == 0, "mark/restore commands");
  auto infringe = [&](const std::string& model) {
    return run_cli({"infringe", "--model", model, "--key", dir / "key.txt", "--info", dir / "info.txt",
                    "--message-file", dir / "msg.txt", "--threshold", "0.1"});
  };
  const auto on_marked = infringe(dir / "wm.rqwt");
  const auto on_back = infringe(dir / "back.rqwt");
  o.require(report_value(on_marked.out, "detected") == "yes", "detected on marked");
  o.require(report_value(on_back.out, "detected") == "no", "not detected on restored");
  o.detail << " restored_BER=[" << num(lo) << "," << num(hi) << "] in_range=" << in_range
           << "/100 marked_BER=" << report_value(on_marked.out, "BER")
           << " restored_cli_BER=" << report_value(on_back.out, "BER");
  return o;
}

// 9. Tamper sensitivity and the noisy-channel allowance.
Outcome tamper() {
  Outcome o;
  fixture::ScratchDir dir("ac9");
  std::mt19937_64 rng(909);
  const auto cover = gaussian(rng, 5000, 0.05);
  io::save_tensor(dir / "w.rqwt", cover);
  io::write_text_file(dir / "msg.txt", bits_to_text(random_bits(rng, 2000)));
  const auto m = run_cli({"mark", "--model", dir / "w.rqwt", "--message-file", dir / "msg.txt", "--out",
                          dir / "wm.rqwt", "--key-out", dir / "key.txt", "--alpha-out", dir / "alpha.txt",
                          "--info-out", dir / "info.txt"});
  o.require(m.code == 0, "mark");
  const auto marked = io::load_tensor(dir / "wm.rqwt");
  const double tol = default_tolerance(Precision::binary64);

  auto verify = [&](const std::vector<std::string>& extra) {
    std::vector<std::string> args{"verify", "--model", dir / "t.rqwt", "--original", dir / "w.rqwt", "--key",
                                  dir / "key.txt", "--info", dir / "info.txt", "--alpha-file", dir / "alpha.txt",
                                  "--strict-exit"};
    args.insert(args.end(), extra.begin(), extra.end());
    return run_cli(args);
  };

  int caught = 0;
  for (int t = 0; t < 1000; ++t) {
    auto t_tensor = marked;
    const std::size_t i = rng() % t_tensor.size();
    const double a = t_tensor.elements[i];
    // Mantissa bits whose flip moves the value by at least 10x the tolerance.
    std::vector<int> bits;
    for (int bit = 0; bit < 52; ++bit) {
      const double flipped = std::bit_cast<double>(std::bit_cast<std::uint64_t>(a) ^ (std::uint64_t{1} << bit));
      if (std::fabs(flipped - a) >= 10 * tol * std::max(1.0, std::fabs(a))) bits.push_back(bit);
    }
    const int bit = bits[rng() % bits.size()];
    t_tensor.elements[i] = std::bit_cast<double>(std::bit_cast<std::uint64_t>(a) ^ (std::uint64_t{1} << bit));
    io::save_tensor(dir / "t.rqwt", t_tensor);
    const auto r = verify({});
    if (r.code == 4 && report_value(r.out, "tampered") == "yes") ++caught;
  }
  o.require(caught == 1000, "bit flips caught");

  const QimParams params(kDelta, 2, kAlpha, 0.0);
  const double beta = decision_margin(params) / 2;
  std::uniform_real_distribution<double> noise(-beta, beta);
  int clean = 0;
  for (int t = 0; t < 1000; ++t) {
    auto t_tensor = marked;
    for (auto& v : t_tensor.elements) v += noise(rng);
    io::save_tensor(dir / "t.rqwt", t_tensor);
    const auto r = verify({"--noise-bound", exact(beta)});
    if (r.code == 0 && report_value(r.out, "tampered") == "no") ++clean;
  }
  o.require(clean == 1000, "noisy channel untampered");
  o.detail << " bit_flips_caught=" << caught << "/1000 noisy_clean=" << clean << "/1000 beta=" << num(beta);
  return o;
}

// 10. Byte-identical outputs across runs and worker counts.
Outcome determinism() {
  Outcome o;
  fixture::ScratchDir dir("ac10");
  std::mt19937_64 rng(1010);
  io::save_tensor(dir / "w.rqwt", gaussian(rng, 50000, 0.05));
  io::write_text_file(dir / "msg.txt", bits_to_text(random_bits(rng, kPayloadBits)));
  WeightTensor hs_host{std::vector<double>(2000), Precision::binary64};
  std::uniform_real_distribution<double> u(0.1, 0.5);
  for (auto& v : hs_host.elements) v = hs::compose_weight(hs::decompose_weight(u(rng), 8));
  io::save_tensor(dir / "h.rqwt", hs_host);

  auto outputs = [&](const std::string& tag, const std::string& threads) {
    const std::string p = dir / tag;
    int codes = 0;
    codes += run_cli({"mark", "--model", dir / "w.rqwt", "--message-file", dir / "msg.txt", "--m-card", "4",
                      "--alpha", "0.9", "--clue", "77", "--out", p + "wm.rqwt", "--key-out", p + "key.txt",
                      "--alpha-out", p + "alpha.txt", "--info-out", p + "info.txt", "--threads", threads})
                 .code;
    codes += run_cli({"restore", "--model", p + "wm.rqwt", "--key", p + "key.txt", "--info", p + "info.txt",
                      "--alpha-file", p + "alpha.txt", "--out", p + "back.rqwt", "--threads", threads})
                 .code;
    codes += run_cli({"compare", "--model", dir / "h.rqwt", "--out-csv", p + "compare.csv", "--threads", threads})
                 .code;
    codes += run_cli({"analyze", "--model", dir / "w.rqwt", "--out-csv", p + "analyze.csv", "--qq-csv",
                      p + "qq.csv"})
                 .code;
    codes += run_cli({"distortion", "--samples", "100000", "--out-csv", p + "distortion.csv"}).code;
    std::vector<std::string> blobs;
    for (const char* f : {"wm.rqwt", "key.txt", "alpha.txt", "info.txt", "back.rqwt", "compare.csv", "analyze.csv",
                          "qq.csv", "distortion.csv"})
      blobs.push_back(fixture::slurp(p + f));
    return std::make_pair(codes, blobs);
  };
  const auto a = outputs("a_", "1");
  const auto b = outputs("b_", "1");
  const auto c = outputs("c_", "8");
  o.require(a.first == 0 && b.first == 0 && c.first == 0, "commands");
  o.require(a.second == b.second, "two runs identical");
  o.require(a.second == c.second, "1 vs 8 workers identical");
  o.detail << " files_compared=" << a.second.size() << " runs=3";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 reversibility", reversibility}, {"AC2 distortion geometry", distortion},
      {"AC3 noise law", noise_law},         {"AC4 SWR theorem", theorem},
      {"AC5 capacity", capacity},           {"AC6 HS end-to-end", hs_end_to_end},
      {"AC7 usability study", usability},   {"AC8 watermark removal", removal},
      {"AC9 tamper sensitivity", tamper},   {"AC10 determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ":" << o.detail.str() << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
