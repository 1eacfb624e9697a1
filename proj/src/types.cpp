#include "rqim/types.hpp"

#include <bit>
#include <string>

#include "rqim/errors.hpp"

namespace rqim {

unsigned bits_per_symbol(std::uint32_t m_card) {
  if (m_card < 2 || m_card > 256 || !std::has_single_bit(m_card))
    throw DomainError("alphabet size " + std::to_string(m_card) +
                      " must be a power of two in [2, 256]");
  return static_cast<unsigned>(std::countr_zero(m_card));
}

WatermarkMessage WatermarkMessage::from_bits(std::vector<std::uint8_t> bits, std::uint32_t m_card) {
  const unsigned b = bits_per_symbol(m_card);
  WatermarkMessage msg;
  msg.m_card = m_card;
  msg.pad_bits = (b - bits.size() % b) % b;
  msg.symbols.reserve((bits.size() + b - 1) / b);
  for (std::size_t i = 0; i < bits.size(); i += b) {
    Symbol s = 0;
    for (unsigned j = 0; j < b; ++j) {
      const std::size_t idx = i + j;
      s = (s << 1) | (idx < bits.size() && bits[idx] ? 1u : 0u);
    }
    msg.symbols.push_back(s);
  }
  msg.bits = std::move(bits);
  return msg;
}

WatermarkMessage WatermarkMessage::from_symbols(std::vector<Symbol> symbols, std::uint32_t m_card) {
  const unsigned b = bits_per_symbol(m_card);
  WatermarkMessage msg;
  msg.m_card = m_card;
  msg.bits.reserve(symbols.size() * b);
  for (Symbol s : symbols) {
    if (s >= m_card) throw DomainError("symbol outside alphabet");
    for (unsigned j = b; j-- > 0;) msg.bits.push_back(static_cast<std::uint8_t>((s >> j) & 1u));
  }
  msg.pad_bits = msg.bits.size() % 8;
  msg.bits.resize(msg.bits.size() - msg.pad_bits);
  msg.symbols = std::move(symbols);
  return msg;
}

}  // namespace rqim
