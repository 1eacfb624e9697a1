#pragma once

// Tensor container ("RQWT"), raw little-endian import, text payload codec and
// CSV emission.
//
// Container layout, all integers little-endian:
//   magic "RQWT" | version u8 = 1 | dtype u8 (1 binary32, 2 binary64) |
//   count u64 | count elements

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rqim/types.hpp"

namespace rqim::io {

inline constexpr std::size_t kHeaderSize = 14;

std::vector<std::uint8_t> write_tensor(const WeightTensor& tensor);
/// Throws FormatError on bad magic/version/dtype, truncation, trailing bytes
/// or non-finite elements.
WeightTensor read_tensor(std::span<const std::uint8_t> bytes);

/// Headerless little-endian dump of count elements.
WeightTensor read_raw(std::span<const std::uint8_t> bytes, Precision precision, std::size_t count);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

WeightTensor load_tensor(const std::filesystem::path& path);
void save_tensor(const std::filesystem::path& path, const WeightTensor& tensor);

/// UTF-8 bytes, most significant bit first.
WatermarkMessage encode_message(std::string_view text, std::uint32_t m_card);

struct DecodedText {
  std::string text;
  bool padding_nonzero = false;  // possible corruption
};
DecodedText decode_message(const WatermarkMessage& message);

/// '0'/'1' characters, one line.
std::string bits_to_string(std::span<const std::uint8_t> bits);

using CsvCell = std::variant<std::string, double, std::int64_t>;
using CsvRow = std::vector<CsvCell>;

/// RFC 4180 quoting, shortest round-trip decimal floats, "\n" line ends.
/// Throws FormatError on ragged rows.
std::string write_csv(const std::vector<std::string>& header, const std::vector<CsvRow>& rows);

/// Shortest decimal that parses back to exactly v.
std::string format_double(double v);

}  // namespace rqim::io
