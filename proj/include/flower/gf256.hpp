#pragma once

#include <array>
#include <cstdint>

#include "flower/errors.hpp"

namespace flower::gf256 {

// Arithmetic in GF(2^8) with reduction polynomial
// x^8 + x^4 + x^3 + x^2 + 1 (0x11d). 0x02 generates the multiplicative
// group, so log/exp tables cover every nonzero element.

inline constexpr unsigned kReductionPoly = 0x11d;

namespace detail {

consteval std::array<std::uint8_t, 512> build_exp() {
  std::array<std::uint8_t, 512> exp{};
  unsigned x = 1;
  for (int i = 0; i < 255; ++i) {
    exp[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(x);
    exp[static_cast<std::size_t>(i) + 255] = static_cast<std::uint8_t>(x);
    x <<= 1;
    if (x & 0x100) x ^= kReductionPoly;
  }
  if (x != 1) throw "0x02 does not generate the multiplicative group";
  return exp;
}

consteval std::array<std::uint16_t, 256> build_log() {
  std::array<std::uint16_t, 256> log{};
  const auto exp = build_exp();
  for (int i = 0; i < 255; ++i) log[exp[static_cast<std::size_t>(i)]] =
      static_cast<std::uint16_t>(i);
  return log;  // log[0] stays 0 and is never consulted
}

inline constexpr auto kExp = build_exp();
inline constexpr auto kLog = build_log();

}  // namespace detail

constexpr std::uint8_t add(std::uint8_t a, std::uint8_t b) { return a ^ b; }
constexpr std::uint8_t sub(std::uint8_t a, std::uint8_t b) { return a ^ b; }

constexpr std::uint8_t mul(std::uint8_t a, std::uint8_t b) {
  if (a == 0 || b == 0) return 0;
  return detail::kExp[static_cast<std::size_t>(detail::kLog[a]) +
                      detail::kLog[b]];
}

inline std::uint8_t inv(std::uint8_t a) {
  if (a == 0) throw SpecError("inverse of 0 in GF(256)");
  return detail::kExp[255 - static_cast<std::size_t>(detail::kLog[a])];
}

inline std::uint8_t div(std::uint8_t a, std::uint8_t b) {
  if (b == 0) throw SpecError("division by 0 in GF(256)");
  if (a == 0) return 0;
  return mul(a, inv(b));
}

}  // namespace flower::gf256
