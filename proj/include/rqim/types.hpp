#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rqim/qim.hpp"

namespace rqim {

enum class Precision : std::uint8_t { binary32 = 1, binary64 = 2 };

/// Flat weight array. Elements are held widened to binary64; a binary32
/// tensor only ever holds values exactly representable in binary32.
struct WeightTensor {
  std::vector<double> elements;
  Precision precision = Precision::binary64;

  std::size_t size() const noexcept { return elements.size(); }
  bool operator==(const WeightTensor&) const = default;
};

/// Rounds v to the storage precision.
inline double narrow(double v, Precision p) {
  return p == Precision::binary32 ? static_cast<double>(static_cast<float>(v)) : v;
}

/// Payload as a bit sequence plus its |M|-ary symbol view. Bits are grouped
/// most-significant first, log2|M| per symbol; the last symbol is padded with
/// pad_bits zero bits.
struct WatermarkMessage {
  std::vector<std::uint8_t> bits;
  std::vector<Symbol> symbols;
  std::uint32_t m_card = 2;
  std::size_t pad_bits = 0;

  std::size_t length() const noexcept { return symbols.size(); }

  /// Throws DomainError unless m_card is a power of two in [2, 256].
  static WatermarkMessage from_bits(std::vector<std::uint8_t> bits, std::uint32_t m_card);
  /// Bits are the unpacked symbols with trailing padding removed so that the
  /// bit count is a multiple of eight.
  static WatermarkMessage from_symbols(std::vector<Symbol> symbols, std::uint32_t m_card);
};

/// log2 of a power-of-two alphabet size in [2, 256]; throws DomainError otherwise.
unsigned bits_per_symbol(std::uint32_t m_card);

}  // namespace rqim
