#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "flower/fr_code.hpp"

namespace flower {

// Three sequence encodings of an FR code.
//
// A dropping sequence walks ring positions 1, 2, 3, ... where position m
// belongs to node m mod n (0 -> n). A one at position m drops a packet
// there; the k-th one overall drops packet k mod theta (0 -> theta). A node
// sequence lists, for the 1st, 2nd, ... dropped packet, the node receiving
// it; the i-th drop is packet i mod theta. A chi sequence is an arbitrary
// binary characteristic sequence: a one at position m drops packet
// m mod theta on node m mod n directly, with no weight bookkeeping.

struct DroppingSequence {
  int n = 0;
  int theta = 0;
  std::vector<std::uint8_t> bits;  // bits[k] is d(k+1)

  int length() const { return static_cast<int>(bits.size()); }
  int weight() const {
    int w = 0;
    for (auto b : bits) w += b;
    return w;
  }
  bool operator==(const DroppingSequence&) const = default;
};

struct NodeSequence {
  int n = 0;
  int theta = 0;
  std::vector<int> terms;  // terms[k] is s_{k+1}, each in 1..n

  int length() const { return static_cast<int>(terms.size()); }
  bool operator==(const NodeSequence&) const = default;
};

struct ChiSequence {
  int n = 0;
  int theta = 0;
  std::vector<std::uint8_t> bits;

  int length() const { return static_cast<int>(bits.size()); }
  int weight() const {
    int w = 0;
    for (auto b : bits) w += b;
    return w;
  }
  bool operator==(const ChiSequence&) const = default;
};

namespace detail {

inline void check_params(int n, int theta, const char* what) {
  if (n < 1 || theta < 1)
    throw SpecError(std::string(what) + ": n and theta must be >= 1");
}

inline void check_bits(const std::vector<std::uint8_t>& bits,
                       const char* what) {
  for (auto b : bits)
    if (b > 1) throw SpecError(std::string(what) + ": entries must be 0 or 1");
}

}  // namespace detail

inline void check_valid(const DroppingSequence& d) {
  detail::check_params(d.n, d.theta, "dropping sequence");
  detail::check_bits(d.bits, "dropping sequence");
  if (d.weight() == 0)
    throw SpecError("dropping sequence has weight 0: no code to decode");
  if (d.bits.back() != 1)
    throw SpecError("dropping sequence must end with a 1");
}

inline void check_valid(const NodeSequence& s) {
  detail::check_params(s.n, s.theta, "node sequence");
  if (s.terms.empty()) throw SpecError("node sequence is empty");
  for (int t : s.terms) {
    if (t < 1 || t > s.n)
      throw SpecError("node sequence term " + std::to_string(t) +
                      " is outside 1.." + std::to_string(s.n));
  }
}

inline void check_valid(const ChiSequence& x) {
  detail::check_params(x.n, x.theta, "characteristic sequence");
  detail::check_bits(x.bits, "characteristic sequence");
}

/// True when the sequence can encode an FR code with every packet dropped
/// the same number of times (weight a positive multiple of theta).
inline bool encodes_fr_code(const DroppingSequence& d) {
  const int w = d.weight();
  return w > 0 && w % d.theta == 0;
}

inline bool encodes_fr_code(const NodeSequence& s) {
  return !s.terms.empty() && s.length() % s.theta == 0;
}

/// Decodes a dropping sequence: position r with d(r) = 1 puts the packet
/// indexed by the prefix weight (mod theta) onto node r mod n.
inline FrCode decode_dropping(const DroppingSequence& d) {
  check_valid(d);
  std::vector<std::vector<int>> nodes(static_cast<std::size_t>(d.n));
  long long w = 0;
  for (std::size_t k = 0; k < d.bits.size(); ++k) {
    if (!d.bits[k]) continue;
    ++w;
    const int node = wrap_index(static_cast<long long>(k) + 1, d.n);
    nodes[static_cast<std::size_t>(node) - 1].push_back(
        wrap_index(w, d.theta));
  }
  return FrCode(std::move(nodes), d.theta);
}

/// Removes runs of n consecutive zeros until no run of length >= n remains.
/// Removal works leftmost-first, which amounts to reducing every maximal
/// zero run mod n. Dropping n zeros shifts later positions by exactly one
/// full ring turn, so the decoded code is unchanged.
inline DroppingSequence canonicalize_dropping(const DroppingSequence& d) {
  check_valid(d);
  DroppingSequence out{d.n, d.theta, {}};
  out.bits.reserve(d.bits.size());
  std::size_t k = 0;
  while (k < d.bits.size()) {
    if (d.bits[k]) {
      out.bits.push_back(1);
      ++k;
      continue;
    }
    std::size_t run = 0;
    while (k < d.bits.size() && !d.bits[k]) {
      ++run;
      ++k;
    }
    for (std::size_t z = 0; z < run % static_cast<std::size_t>(d.n); ++z)
      out.bits.push_back(0);
  }
  return out;
}

/// Reads the node sequence off a dropping sequence: the i-th one, sitting at
/// ring position t, contributes s_i = t mod n.
inline NodeSequence dropping_to_node(const DroppingSequence& d) {
  check_valid(d);
  NodeSequence s{d.n, d.theta, {}};
  s.terms.reserve(static_cast<std::size_t>(d.weight()));
  for (std::size_t k = 0; k < d.bits.size(); ++k)
    if (d.bits[k])
      s.terms.push_back(wrap_index(static_cast<long long>(k) + 1, d.n));
  return s;
}

/// Rebuilds a dropping sequence from a node sequence. The i-th one lands at
/// position sum of steps (s_j - s_{j-1}) mod n with s_0 = 0; a zero residue
/// (the same node twice in a row) means a full ring turn, step n.
inline DroppingSequence node_to_dropping(const NodeSequence& s) {
  check_valid(s);
  DroppingSequence d{s.n, s.theta, {}};
  int prev = 0;
  for (int term : s.terms) {
    int step = (term - prev) % s.n;
    if (step < 0) step += s.n;
    if (step == 0) step = s.n;
    for (int z = 1; z < step; ++z) d.bits.push_back(0);
    d.bits.push_back(1);
    prev = term;
  }
  return d;
}

/// Decodes a node sequence: the i-th term receives packet i mod theta.
inline FrCode decode_node(const NodeSequence& s) {
  check_valid(s);
  std::vector<std::vector<int>> nodes(static_cast<std::size_t>(s.n));
  for (std::size_t k = 0; k < s.terms.size(); ++k) {
    const int packet = wrap_index(static_cast<long long>(k) + 1, s.theta);
    nodes[static_cast<std::size_t>(s.terms[k]) - 1].push_back(packet);
  }
  return FrCode(std::move(nodes), s.theta);
}

/// Accumulates the incidence matrix directly from a dropping sequence,
/// entry by entry: every one at position t bumps a_ij with i = t mod n and
/// j = prefix weight mod theta. Handles non-binary outcomes.
inline IncidenceMatrix incidence_from_dropping(const DroppingSequence& d) {
  check_valid(d);
  std::vector<int> a(static_cast<std::size_t>(d.n) * d.theta, 0);
  long long w = 0;
  for (std::size_t k = 0; k < d.bits.size(); ++k) {
    if (!d.bits[k]) continue;
    ++w;
    const int i = wrap_index(static_cast<long long>(k) + 1, d.n);
    const int j = wrap_index(w, d.theta);
    ++a[static_cast<std::size_t>(i - 1) * d.theta + (j - 1)];
  }
  return IncidenceMatrix(d.n, d.theta, std::move(a));
}

/// Decodes an arbitrary characteristic sequence: a one at position m drops
/// packet m mod theta on node m mod n. Per-packet replication may come out
/// non-uniform, including zero.
inline FrCode decode_chi(const ChiSequence& x) {
  check_valid(x);
  std::vector<std::vector<int>> nodes(static_cast<std::size_t>(x.n));
  for (std::size_t k = 0; k < x.bits.size(); ++k) {
    if (!x.bits[k]) continue;
    const long long m = static_cast<long long>(k) + 1;
    nodes[static_cast<std::size_t>(wrap_index(m, x.n)) - 1].push_back(
        wrap_index(m, x.theta));
  }
  return FrCode(std::move(nodes), x.theta);
}

/// Storage profiles straight from the characteristic sequence, without
/// decoding: alpha_i sums chi over positions congruent to i mod n, rho_j
/// over positions congruent to j mod theta.
inline std::pair<std::vector<int>, std::vector<int>> chi_profiles(
    const ChiSequence& x) {
  check_valid(x);
  const long long len = x.length();
  std::vector<int> alpha(static_cast<std::size_t>(x.n), 0);
  std::vector<int> rho(static_cast<std::size_t>(x.theta), 0);
  for (int i = 1; i <= x.n; ++i)
    for (long long m = i; m <= len; m += x.n)
      alpha[static_cast<std::size_t>(i) - 1] +=
          x.bits[static_cast<std::size_t>(m) - 1];
  for (int j = 1; j <= x.theta; ++j)
    for (long long m = j; m <= len; m += x.theta)
      rho[static_cast<std::size_t>(j) - 1] +=
          x.bits[static_cast<std::size_t>(m) - 1];
  return {std::move(alpha), std::move(rho)};
}

}  // namespace flower
