#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "flower/errors.hpp"

namespace flower {

// Nodes and packets are 1-based throughout, over the index sets {1..n} and
// {1..theta}. Wherever a ring position or a prefix weight is reduced mod m
// back onto such a set, residue 0 stands for m. Every reduction of that kind
// goes through this helper so the convention lives in exactly one place.
inline int wrap_index(long long value, int modulus) {
  const int r = static_cast<int>(value % modulus);
  return r == 0 ? modulus : r;
}

/// A fractional repetition code: theta packets replicated across n storage
/// nodes. Node contents are multisets of packet indices, kept in insertion
/// order; a packet may appear on one node more than once. Values are
/// immutable after construction.
class FrCode {
 public:
  /// Builds a code from per-node packet lists. With `strict` set, every
  /// packet must be stored at least once (replication rho_j >= 1).
  FrCode(std::vector<std::vector<int>> node_lists, int theta,
         bool strict = false)
      : theta_(theta), nodes_(std::move(node_lists)) {
    if (theta_ < 1) throw SpecError("packet count must be >= 1");
    if (nodes_.empty()) throw SpecError("an FR code needs at least one node");
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      for (int p : nodes_[i]) {
        if (p < 1 || p > theta_) {
          throw SpecError("packet index " + std::to_string(p) + " on node " +
                          std::to_string(i + 1) + " is outside 1.." +
                          std::to_string(theta_));
        }
      }
    }
    if (strict) {
      std::vector<int> rho(static_cast<std::size_t>(theta_), 0);
      for (const auto& u : nodes_)
        for (int p : u) ++rho[static_cast<std::size_t>(p) - 1];
      for (int j = 1; j <= theta_; ++j) {
        if (rho[static_cast<std::size_t>(j) - 1] == 0) {
          throw SpecError("strict mode: packet " + std::to_string(j) +
                          " is never stored (rho = 0)");
        }
      }
    }
  }

  int node_count() const { return static_cast<int>(nodes_.size()); }
  int packet_count() const { return theta_; }

  /// Contents of node i (1-based), in insertion order.
  const std::vector<int>& node(int i) const {
    if (i < 1 || i > node_count())
      throw SpecError("node index " + std::to_string(i) + " is outside 1.." +
                      std::to_string(node_count()));
    return nodes_[static_cast<std::size_t>(i) - 1];
  }

  const std::vector<std::vector<int>>& nodes() const { return nodes_; }

  /// True when no packet appears more than once on any single node.
  bool binary() const {
    for (const auto& u : nodes_) {
      std::vector<int> s(u);
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) != s.end()) return false;
    }
    return true;
  }

  bool operator==(const FrCode&) const = default;

 private:
  int theta_;
  std::vector<std::vector<int>> nodes_;
};

inline FrCode build_code(std::vector<std::vector<int>> node_lists, int theta,
                         bool strict = false) {
  return FrCode(std::move(node_lists), theta, strict);
}

/// Equality up to reordering within each node (node contents are multisets).
inline bool same_distribution(const FrCode& a, const FrCode& b) {
  if (a.node_count() != b.node_count() ||
      a.packet_count() != b.packet_count())
    return false;
  for (int i = 1; i <= a.node_count(); ++i) {
    std::vector<int> x(a.node(i)), y(b.node(i));
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x != y) return false;
  }
  return true;
}

/// Node-packet distribution incidence matrix: entry (i, j) is the number of
/// times packet j is stored on node i.
class IncidenceMatrix {
 public:
  IncidenceMatrix(int rows, int cols, std::vector<int> entries)
      : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (rows_ < 1 || cols_ < 1)
      throw SpecError("incidence matrix must have positive dimensions");
    if (a_.size() != static_cast<std::size_t>(rows_) * cols_)
      throw SpecError("incidence matrix entry count does not match shape");
    for (int v : a_)
      if (v < 0) throw SpecError("incidence matrix entries must be >= 0");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  /// 1-based access.
  int at(int i, int j) const {
    if (i < 1 || i > rows_ || j < 1 || j > cols_)
      throw SpecError("incidence matrix index out of range");
    return a_[static_cast<std::size_t>(i - 1) * cols_ + (j - 1)];
  }

  int row_sum(int i) const {
    int s = 0;
    for (int j = 1; j <= cols_; ++j) s += at(i, j);
    return s;
  }

  int col_sum(int j) const {
    int s = 0;
    for (int i = 1; i <= rows_; ++i) s += at(i, j);
    return s;
  }

  int total() const { return std::accumulate(a_.begin(), a_.end(), 0); }

  bool binary() const {
    return std::all_of(a_.begin(), a_.end(), [](int v) { return v <= 1; });
  }

  bool operator==(const IncidenceMatrix&) const = default;

 private:
  int rows_, cols_;
  std::vector<int> a_;  // row-major
};

inline IncidenceMatrix incidence_matrix(const FrCode& code) {
  const int n = code.node_count(), theta = code.packet_count();
  std::vector<int> a(static_cast<std::size_t>(n) * theta, 0);
  for (int i = 1; i <= n; ++i)
    for (int p : code.node(i))
      ++a[static_cast<std::size_t>(i - 1) * theta + (p - 1)];
  return IncidenceMatrix(n, theta, std::move(a));
}

/// Storage profile of a code: per-node capacities alpha_i, per-packet
/// replications rho_j, and their maxima alpha and rho.
struct Profiles {
  std::vector<int> alpha_vec;
  std::vector<int> rho_vec;
  int alpha = 0;
  int rho = 0;

  bool uniform_replication() const {
    return std::all_of(rho_vec.begin(), rho_vec.end(),
                       [&](int r) { return r == rho_vec.front(); });
  }
};

inline Profiles profiles(const FrCode& code) {
  Profiles p;
  p.alpha_vec.reserve(static_cast<std::size_t>(code.node_count()));
  p.rho_vec.assign(static_cast<std::size_t>(code.packet_count()), 0);
  for (const auto& u : code.nodes()) {
    p.alpha_vec.push_back(static_cast<int>(u.size()));
    for (int q : u) ++p.rho_vec[static_cast<std::size_t>(q) - 1];
  }
  p.alpha = *std::max_element(p.alpha_vec.begin(), p.alpha_vec.end());
  p.rho = *std::max_element(p.rho_vec.begin(), p.rho_vec.end());
  // Counting identity: total stored packets tallied per node and per packet.
  const long long by_node =
      std::accumulate(p.alpha_vec.begin(), p.alpha_vec.end(), 0LL);
  const long long by_packet =
      std::accumulate(p.rho_vec.begin(), p.rho_vec.end(), 0LL);
  if (by_node != by_packet)
    throw Error("profile counting identity violated");
  return p;
}

struct Violation {
  enum class Kind { ZeroReplication, EmptyNode, IdentityMismatch };
  Kind kind;
  int index = 0;  // packet or node index, 0 when not applicable
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Report-style validation. Non-strict mode checks only the counting
/// identity; strict mode additionally requires rho_j >= 1 for every packet
/// and alpha_i >= 1 for every node.
inline ValidationReport validate(const FrCode& code, bool strict = true) {
  ValidationReport report;
  const Profiles p = profiles(code);
  if (strict) {
    for (int j = 1; j <= code.packet_count(); ++j) {
      if (p.rho_vec[static_cast<std::size_t>(j) - 1] == 0) {
        report.violations.push_back({Violation::Kind::ZeroReplication, j,
                                     "rho_" + std::to_string(j) + " = 0"});
      }
    }
    for (int i = 1; i <= code.node_count(); ++i) {
      if (p.alpha_vec[static_cast<std::size_t>(i) - 1] == 0) {
        report.violations.push_back({Violation::Kind::EmptyNode, i,
                                     "node " + std::to_string(i) +
                                         " stores no packets"});
      }
    }
  }
  const long long by_node =
      std::accumulate(p.alpha_vec.begin(), p.alpha_vec.end(), 0LL);
  const long long by_packet =
      std::accumulate(p.rho_vec.begin(), p.rho_vec.end(), 0LL);
  if (by_node != by_packet) {
    report.violations.push_back({Violation::Kind::IdentityMismatch, 0,
                                 "sum of alpha_i differs from sum of rho_j"});
  }
  return report;
}

/// Cross-checks a (possibly deserialized) matrix against the matrix the code
/// itself induces. Any divergence, including forged row or column sums, is
/// reported as an identity mismatch.
inline ValidationReport check_consistent(const FrCode& code,
                                         const IncidenceMatrix& m) {
  ValidationReport report;
  const IncidenceMatrix expected = incidence_matrix(code);
  if (m.rows() != expected.rows() || m.cols() != expected.cols()) {
    report.violations.push_back({Violation::Kind::IdentityMismatch, 0,
                                 "matrix shape does not match code"});
    return report;
  }
  for (int i = 1; i <= m.rows(); ++i) {
    for (int j = 1; j <= m.cols(); ++j) {
      if (m.at(i, j) != expected.at(i, j)) {
        report.violations.push_back(
            {Violation::Kind::IdentityMismatch, i,
             "matrix entry (" + std::to_string(i) + "," + std::to_string(j) +
                 ") = " + std::to_string(m.at(i, j)) + ", code stores " +
                 std::to_string(expected.at(i, j))});
      }
    }
  }
  return report;
}

}  // namespace flower
