#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flower/gf256.hpp"

namespace flower {

/// Systematic MDS code of length theta and dimension B over GF(256).
/// The message is read as the values of a degree-< B polynomial at the field
/// points 0..B-1; coded symbol j is the value at point j-1. The first B
/// symbols therefore equal the message, and any B coded symbols determine
/// it. theta is capped at 256 by the number of distinct field points.
class MdsCode {
 public:
  MdsCode(int theta, int dimension) : theta_(theta), b_(dimension) {
    if (theta_ < 1 || theta_ > 256)
      throw SpecError("codeword length must be in 1..256 (field size)");
    if (b_ < 1 || b_ > theta_)
      throw SpecError("dimension must be in 1..theta");
    parity_.reserve(static_cast<std::size_t>(theta_ - b_) * b_);
    for (int j = b_ + 1; j <= theta_; ++j)
      for (int i = 1; i <= b_; ++i)
        parity_.push_back(lagrange_basis_at(point(j), i));
  }

  int length() const { return theta_; }
  int dimension() const { return b_; }

  /// Encodes one stripe of B message symbols into theta coded symbols.
  std::vector<std::uint8_t> encode(std::span<const std::uint8_t> message)
      const {
    if (static_cast<int>(message.size()) != b_)
      throw SpecError("stripe must hold exactly B message symbols");
    std::vector<std::uint8_t> out(static_cast<std::size_t>(theta_));
    std::copy(message.begin(), message.end(), out.begin());
    const std::uint8_t* row = parity_.data();
    for (int j = b_ + 1; j <= theta_; ++j) {
      std::uint8_t acc = 0;
      for (int i = 0; i < b_; ++i)
        acc = gf256::add(acc, gf256::mul(row[i], message[static_cast<std::size_t>(i)]));
      out[static_cast<std::size_t>(j) - 1] = acc;
      row += b_;
    }
    return out;
  }

  /// Recovers the message from shares (packet index 1..theta, symbol).
  /// Needs at least B distinct indices; every redundant share must agree
  /// with the interpolated polynomial.
  std::vector<std::uint8_t> decode(
      std::vector<std::pair<int, std::uint8_t>> shares) const {
    for (const auto& [index, value] : shares) {
      (void)value;
      if (index < 1 || index > theta_)
        throw SpecError("share index " + std::to_string(index) +
                        " is outside 1.." + std::to_string(theta_));
    }
    std::sort(shares.begin(), shares.end());
    std::vector<std::pair<int, std::uint8_t>> distinct;
    for (const auto& share : shares) {
      if (!distinct.empty() && distinct.back().first == share.first) {
        if (distinct.back().second != share.second)
          throw IntegrityError("conflicting copies of packet " +
                               std::to_string(share.first));
        continue;
      }
      distinct.push_back(share);
    }
    if (static_cast<int>(distinct.size()) < b_)
      throw InsufficientDataError(
          "reconstruction needs " + std::to_string(b_) +
              " distinct packets, got " + std::to_string(distinct.size()),
          static_cast<int>(distinct.size()), b_);

    // Interpolate through the first B shares, then check the rest against
    // the re-encoded codeword.
    std::vector<std::uint8_t> xs(static_cast<std::size_t>(b_));
    std::vector<std::uint8_t> ys(static_cast<std::size_t>(b_));
    for (int k = 0; k < b_; ++k) {
      xs[static_cast<std::size_t>(k)] = point(distinct[static_cast<std::size_t>(k)].first);
      ys[static_cast<std::size_t>(k)] = distinct[static_cast<std::size_t>(k)].second;
    }
    std::vector<std::uint8_t> message(static_cast<std::size_t>(b_));
    for (int i = 1; i <= b_; ++i)
      message[static_cast<std::size_t>(i) - 1] =
          interpolate_at(xs, ys, point(i));
    const std::vector<std::uint8_t> codeword = encode(message);
    for (const auto& [index, value] : distinct) {
      if (codeword[static_cast<std::size_t>(index) - 1] != value)
        throw IntegrityError("packet " + std::to_string(index) +
                             " is inconsistent with the other shares");
    }
    return message;
  }

 private:
  static std::uint8_t point(int j) { return static_cast<std::uint8_t>(j - 1); }

  /// L_i(x) over the message points 0..B-1.
  std::uint8_t lagrange_basis_at(std::uint8_t x, int i) const {
    std::uint8_t num = 1, den = 1;
    const std::uint8_t xi = point(i);
    for (int k = 1; k <= b_; ++k) {
      if (k == i) continue;
      num = gf256::mul(num, gf256::sub(x, point(k)));
      den = gf256::mul(den, gf256::sub(xi, point(k)));
    }
    return gf256::div(num, den);
  }

  static std::uint8_t interpolate_at(const std::vector<std::uint8_t>& xs,
                                     const std::vector<std::uint8_t>& ys,
                                     std::uint8_t x) {
    std::uint8_t acc = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      std::uint8_t num = 1, den = 1;
      for (std::size_t l = 0; l < xs.size(); ++l) {
        if (l == k) continue;
        num = gf256::mul(num, gf256::sub(x, xs[l]));
        den = gf256::mul(den, gf256::sub(xs[k], xs[l]));
      }
      acc = gf256::add(acc, gf256::mul(ys[k], gf256::div(num, den)));
    }
    return acc;
  }

  int theta_, b_;
  std::vector<std::uint8_t> parity_;  // (theta - B) x B generator rows
};

}  // namespace flower
