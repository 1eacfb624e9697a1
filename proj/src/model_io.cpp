#include "rqim/model_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "rqim/errors.hpp"

namespace rqim::io {

namespace {

constexpr std::array<std::uint8_t, 4> kMagic{'R', 'Q', 'W', 'T'};
constexpr std::uint8_t kVersion = 1;

template <typename UInt>
void put_le(std::vector<std::uint8_t>& out, UInt v) {
  for (std::size_t i = 0; i < sizeof(UInt); ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

template <typename UInt>
UInt get_le(const std::uint8_t* p) {
  UInt v = 0;
  for (std::size_t i = 0; i < sizeof(UInt); ++i) v |= static_cast<UInt>(p[i]) << (8 * i);
  return v;
}

std::size_t element_size(Precision p) { return p == Precision::binary32 ? 4 : 8; }

std::vector<double> decode_elements(const std::uint8_t* p, Precision precision, std::size_t count) {
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    double v;
    if (precision == Precision::binary32) {
      v = std::bit_cast<float>(get_le<std::uint32_t>(p + 4 * i));
    } else {
      v = std::bit_cast<double>(get_le<std::uint64_t>(p + 8 * i));
    }
    if (!std::isfinite(v))
      throw FormatError("non-finite element at index " + std::to_string(i));
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<std::uint8_t> write_tensor(const WeightTensor& tensor) {
  std::vector<std::uint8_t> out(kMagic.begin(), kMagic.end());
  out.reserve(kHeaderSize + tensor.size() * element_size(tensor.precision));
  out.push_back(kVersion);
  out.push_back(static_cast<std::uint8_t>(tensor.precision));
  put_le<std::uint64_t>(out, tensor.size());
  for (double v : tensor.elements) {
    if (!std::isfinite(v)) throw FormatError("cannot store a non-finite element");
    if (tensor.precision == Precision::binary32)
      put_le(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
    else
      put_le(out, std::bit_cast<std::uint64_t>(v));
  }
  return out;
}

WeightTensor read_tensor(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize) throw FormatError("tensor file shorter than its header");
  if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) throw FormatError("bad tensor magic");
  if (bytes[4] != kVersion) throw FormatError("unsupported tensor version " + std::to_string(bytes[4]));
  const std::uint8_t dtype = bytes[5];
  if (dtype != 1 && dtype != 2) throw FormatError("unknown tensor dtype " + std::to_string(dtype));
  WeightTensor t;
  t.precision = static_cast<Precision>(dtype);
  const std::uint64_t count = get_le<std::uint64_t>(bytes.data() + 6);
  const std::size_t esize = element_size(t.precision);
  if (count > (bytes.size() - kHeaderSize) / esize) throw FormatError("truncated tensor payload");
  if (bytes.size() != kHeaderSize + count * esize) throw FormatError("trailing bytes after tensor payload");
  t.elements = decode_elements(bytes.data() + kHeaderSize, t.precision, static_cast<std::size_t>(count));
  return t;
}

WeightTensor read_raw(std::span<const std::uint8_t> bytes, Precision precision, std::size_t count) {
  const std::size_t esize = element_size(precision);
  if (bytes.size() != count * esize)
    throw FormatError("raw dump holds " + std::to_string(bytes.size()) + " bytes, expected " +
                      std::to_string(count * esize));
  return {decode_elements(bytes.data(), precision, count), precision};
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  return {bytes.begin(), bytes.end()};
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  write_file(path, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

WeightTensor load_tensor(const std::filesystem::path& path) { return read_tensor(read_file(path)); }

void save_tensor(const std::filesystem::path& path, const WeightTensor& tensor) {
  write_file(path, write_tensor(tensor));
}

WatermarkMessage encode_message(std::string_view text, std::uint32_t m_card) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size() * 8);
  for (unsigned char ch : text)
    for (int j = 7; j >= 0; --j) bits.push_back(static_cast<std::uint8_t>((ch >> j) & 1));
  return WatermarkMessage::from_bits(std::move(bits), m_card);
}

DecodedText decode_message(const WatermarkMessage& message) {
  const unsigned b = bits_per_symbol(message.m_card);
  std::vector<std::uint8_t> bits;
  bits.reserve(message.symbols.size() * b);
  for (Symbol s : message.symbols)
    for (unsigned j = b; j-- > 0;) bits.push_back(static_cast<std::uint8_t>((s >> j) & 1u));
  DecodedText out;
  const std::size_t whole = bits.size() / 8 * 8;
  for (std::size_t i = whole; i < bits.size(); ++i) out.padding_nonzero |= bits[i] != 0;
  out.text.reserve(whole / 8);
  for (std::size_t i = 0; i < whole; i += 8) {
    unsigned char ch = 0;
    for (std::size_t j = 0; j < 8; ++j) ch = static_cast<unsigned char>((ch << 1) | bits[i + j]);
    out.text.push_back(static_cast<char>(ch));
  }
  return out;
}

std::string bits_to_string(std::span<const std::uint8_t> bits) {
  std::string out;
  out.reserve(bits.size() + 1);
  for (auto b : bits) out.push_back(b ? '1' : '0');
  out.push_back('\n');
  return out;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return {buf.data(), res.ptr};
}

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string cell_text(const CsvCell& cell) {
  if (const auto* s = std::get_if<std::string>(&cell)) return quote(*s);
  if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
  return std::to_string(std::get<std::int64_t>(cell));
}

}  // namespace

std::string write_csv(const std::vector<std::string>& header, const std::vector<CsvRow>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out.push_back(',');
    out += quote(header[i]);
  }
  if (!header.empty()) out.push_back('\n');
  const std::size_t width = header.empty() ? (rows.empty() ? 0 : rows.front().size()) : header.size();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width)
      throw FormatError("CSV row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                        " cells, expected " + std::to_string(width));
    for (std::size_t i = 0; i < rows[r].size(); ++i) {
      if (i) out.push_back(',');
      out += cell_text(rows[r][i]);
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace rqim::io
