#include "rqim/keying.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>

#include "rqim/errors.hpp"

namespace rqim::keying {

std::uint64_t SplitMix64::next() noexcept {
  state_ += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double SplitMix64::next_unit() noexcept {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::vector<std::size_t> construct_locations(std::uint64_t clue, std::size_t length,
                                             std::size_t count) {
  if (length > count)
    throw CapacityError("cannot select " + std::to_string(length) + " locations from " +
                        std::to_string(count) + " weights");
  std::vector<std::size_t> pool(count);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  SplitMix64 rng(clue);
  for (std::size_t i = 0; i < length; ++i) {
    const std::uint64_t remaining = count - i;
    const std::size_t j = static_cast<std::size_t>(rng.next() % remaining) + i;
    std::swap(pool[i], pool[j]);
  }
  pool.resize(length);
  return pool;
}

std::string hex_double(double value) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%a", value);
  return buf.data();
}

namespace {

using Fields = std::map<std::string, std::pair<std::string, int>>;  // name -> (value, line)

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

Fields parse_fields(std::string_view text, const char* kind, const std::set<std::string>& allowed) {
  Fields fields;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw FormatError(std::string(kind) + " file line " + std::to_string(line_no) +
                        ": expected 'name = value'");
    const std::string name(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!allowed.count(name))
      throw FormatError(std::string(kind) + " file line " + std::to_string(line_no) +
                        ": unknown field '" + name + "'");
    if (fields.count(name))
      throw FormatError(std::string(kind) + " file line " + std::to_string(line_no) +
                        ": duplicate field '" + name + "'");
    fields[name] = {value, line_no};
  }
  return fields;
}

const std::pair<std::string, int>& require(const Fields& fields, const char* kind,
                                           const std::string& name) {
  const auto it = fields.find(name);
  if (it == fields.end())
    throw FormatError(std::string(kind) + " file: missing field '" + name + "'");
  return it->second;
}

[[noreturn]] void bad_value(const char* kind, const std::string& name, int line) {
  throw FormatError(std::string(kind) + " file line " + std::to_string(line) +
                    ": invalid value for '" + name + "'");
}

double read_double(const Fields& fields, const char* kind, const std::string& name) {
  const auto& [value, line] = require(fields, kind, name);
  if (value.empty()) bad_value(kind, name, line);
  char* end = nullptr;
  const double out = std::strtod(value.c_str(), &end);
  if (end != value.c_str() + value.size() || !std::isfinite(out)) bad_value(kind, name, line);
  return out;
}

template <typename Int>
Int read_int(const Fields& fields, const char* kind, const std::string& name) {
  const auto& [value, line] = require(fields, kind, name);
  Int out{};
  const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) bad_value(kind, name, line);
  return out;
}

void check_version(const Fields& fields, const char* kind) {
  if (read_int<int>(fields, kind, "version") != 1)
    throw FormatError(std::string(kind) + " file: unsupported version");
}

}  // namespace

std::string serialize_key(const SecretKey& key) {
  return "version = 1\nk = " + hex_double(key.k) + "\ncl = " + std::to_string(key.clue) +
         "\ndelta = " + hex_double(key.delta) + "\n";
}

std::string serialize_info(const WatermarkInfo& info) {
  return "version = 1\nlength = " + std::to_string(info.length) +
         "\nm_card = " + std::to_string(info.m_card) + "\n";
}

std::string serialize_alpha(double alpha) { return "version = 1\nalpha = " + hex_double(alpha) + "\n"; }

std::string serialize_hs_key(const HsKey& key) {
  return "version = 1\nmethod = hs\nq = " + std::to_string(key.digit_count) +
         "\nc = " + std::to_string(key.pair_index) + "\nv = " + std::to_string(key.shift) +
         "\npeak = " + std::to_string(key.peak) + "\nvalley = " + std::to_string(key.valley) + "\n";
}

SecretKey parse_key(std::string_view text) {
  constexpr const char* kind = "key";
  const Fields f = parse_fields(text, kind, {"version", "k", "cl", "delta"});
  check_version(f, kind);
  SecretKey key;
  key.k = read_double(f, kind, "k");
  key.clue = read_int<std::uint64_t>(f, kind, "cl");
  key.delta = read_double(f, kind, "delta");
  if (!(key.delta > 0.0)) bad_value(kind, "delta", require(f, kind, "delta").second);
  return key;
}

WatermarkInfo parse_info(std::string_view text) {
  constexpr const char* kind = "info";
  const Fields f = parse_fields(text, kind, {"version", "length", "m_card"});
  check_version(f, kind);
  WatermarkInfo info;
  info.length = read_int<std::size_t>(f, kind, "length");
  info.m_card = read_int<std::uint32_t>(f, kind, "m_card");
  if (info.m_card < 2) bad_value(kind, "m_card", require(f, kind, "m_card").second);
  return info;
}

double parse_alpha(std::string_view text) {
  constexpr const char* kind = "alpha";
  const Fields f = parse_fields(text, kind, {"version", "alpha"});
  check_version(f, kind);
  const double alpha = read_double(f, kind, "alpha");
  if (!(alpha > 0.0 && alpha <= 1.0)) bad_value(kind, "alpha", require(f, kind, "alpha").second);
  return alpha;
}

HsKey parse_hs_key(std::string_view text) {
  constexpr const char* kind = "hs key";
  const Fields f =
      parse_fields(text, kind, {"version", "method", "q", "c", "v", "peak", "valley"});
  check_version(f, kind);
  if (require(f, kind, "method").first != "hs") bad_value(kind, "method", require(f, kind, "method").second);
  HsKey key;
  key.digit_count = read_int<int>(f, kind, "q");
  key.pair_index = read_int<int>(f, kind, "c");
  key.shift = read_int<int>(f, kind, "v");
  key.peak = read_int<int>(f, kind, "peak");
  key.valley = read_int<int>(f, kind, "valley");
  if (key.valley <= key.peak) bad_value(kind, "valley", require(f, kind, "valley").second);
  return key;
}

bool is_hs_key(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view line = trim(text.substr(pos, nl - pos));
    const auto eq = line.find('=');
    if (eq != std::string_view::npos && trim(line.substr(0, eq)) == "method")
      return trim(line.substr(eq + 1)) == "hs";
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return false;
}

}  // namespace rqim::keying
