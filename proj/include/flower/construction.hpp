#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flower/fr_code.hpp"
#include "flower/sequences.hpp"

namespace flower {

// Flower code constructors. Either a single ring whose cycles are restricted
// to node subsets A_1..A_rho, or multiple rings driven by internal/external
// jump functions.

/// Parameters for the single-ring construction: cycle m drops packets
/// 1..theta round-robin over the nodes of A_m in ascending index order.
struct SubsetJumpPlan {
  int n = 0;
  int theta = 0;
  std::vector<std::vector<int>> subsets;  // A_1..A_rho, subsets of {1..n}

  int rho() const { return static_cast<int>(subsets.size()); }
};

/// Number of packets a cycle over subset A places on the node holding the
/// t-th smallest index of A: ceil(theta/|A|) for the first theta mod |A|
/// positions, floor(theta/|A|) for the rest.
inline int subset_packet_count(int theta, int subset_size, int t) {
  if (theta < 1) throw SpecError("theta must be >= 1");
  if (subset_size < 1) throw SpecError("subset must be nonempty");
  if (t < 1 || t > subset_size)
    throw SpecError("position " + std::to_string(t) + " is outside 1.." +
                    std::to_string(subset_size));
  const int q = theta / subset_size;
  const int r = theta % subset_size;
  return t <= r ? q + 1 : q;
}

struct CycleDrop {
  int packet = 0;
  int node = 0;
  bool operator==(const CycleDrop&) const = default;
};

/// Per-cycle assignments in drop order; each cycle covers packets 1..theta
/// exactly once.
using CycleTrace = std::vector<std::vector<CycleDrop>>;

struct SingleRingCode {
  FrCode code;
  CycleTrace trace;
};

namespace detail {

inline std::vector<int> normalized_subset(const std::vector<int>& subset,
                                          int n, int m) {
  if (subset.empty())
    throw SpecError("subset A_" + std::to_string(m) + " is empty");
  std::vector<int> s(subset);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (int v : s) {
    if (v < 1 || v > n)
      throw SpecError("subset A_" + std::to_string(m) + " contains node " +
                      std::to_string(v) + " outside 1.." + std::to_string(n));
  }
  return s;
}

}  // namespace detail

/// Single-ring Flower code with subset-type jumps.
inline SingleRingCode single_ring(const SubsetJumpPlan& plan) {
  if (plan.n < 1 || plan.theta < 1)
    throw SpecError("single ring: n and theta must be >= 1");
  if (plan.subsets.empty())
    throw SpecError("single ring: at least one cycle subset is required");
  std::vector<std::vector<int>> nodes(static_cast<std::size_t>(plan.n));
  CycleTrace trace(plan.subsets.size());
  for (int m = 1; m <= plan.rho(); ++m) {
    const std::vector<int> ring = detail::normalized_subset(
        plan.subsets[static_cast<std::size_t>(m) - 1], plan.n, m);
    auto& cycle = trace[static_cast<std::size_t>(m) - 1];
    cycle.reserve(static_cast<std::size_t>(plan.theta));
    for (int p = 1; p <= plan.theta; ++p) {
      const int node =
          ring[static_cast<std::size_t>((p - 1) % static_cast<int>(ring.size()))];
      nodes[static_cast<std::size_t>(node) - 1].push_back(p);
      cycle.push_back({p, node});
    }
  }
  return {FrCode(std::move(nodes), plan.theta), std::move(trace)};
}

/// A jump function: either a constant or an explicit table. Values are
/// nonnegative skip counts; reductions mod n never happen here, only at
/// node-index evaluation time.
class JumpFn {
 public:
  static JumpFn constant(int value) {
    if (value < 0) throw SpecError("jump values must be >= 0");
    JumpFn f;
    f.const_ = value;
    return f;
  }

  static JumpFn table(std::map<long long, int> values) {
    for (const auto& [point, value] : values) {
      if (point < 1)
        throw SpecError("jump table points must be >= 1");
      if (value < 0) throw SpecError("jump values must be >= 0");
    }
    JumpFn f;
    f.table_ = std::move(values);
    return f;
  }

  int operator()(long long point) const {
    if (const_) return *const_;
    const auto it = table_.find(point);
    if (it == table_.end())
      throw SpecError("jump function undefined at required point " +
                      std::to_string(point));
    return it->second;
  }

  bool is_constant() const { return const_.has_value(); }
  int constant_value() const { return *const_; }
  const std::map<long long, int>& table_values() const { return table_; }

 private:
  JumpFn() = default;
  std::optional<int> const_;
  std::map<long long, int> table_;
};

/// Internal jumps apply within a cycle (domain {1..rho*theta} minus the
/// multiples of theta); external jumps apply between consecutive cycles
/// (domain {1..rho}).
struct JumpFunctions {
  JumpFn internal = JumpFn::constant(0);
  JumpFn external = JumpFn::constant(0);
};

enum class EvalMethod { Recursive, Closed };

/// Node sequence of a multiple-ring Flower code, by either route:
///
///   Recursive:  s_1 = 1;  s_m = s_{m-1} + f + 1  (mod n, 0 -> n)
///               where f = f_ex((m-1)/theta) when theta | m-1,
///                     f = f_in(m-1) otherwise.
///   Closed:     s_m = m + sum of all f_in(i), i < m not divisible by theta,
///                       + sum of all f_ex(i/theta), i < m divisible by theta
///               (mod n, 0 -> n).
///
/// The closed form's i = 0 terms fall outside both declared domains and
/// contribute nothing. Both routes agree term by term.
inline NodeSequence multi_ring_node_seq(int n, int theta, int rho,
                                        const JumpFunctions& jumps,
                                        EvalMethod method =
                                            EvalMethod::Recursive) {
  if (n < 1 || theta < 1 || rho < 1)
    throw SpecError("multi ring: n, theta and rho must be >= 1");
  const long long len = static_cast<long long>(rho) * theta;
  NodeSequence s{n, theta, {}};
  s.terms.resize(static_cast<std::size_t>(len));
  if (method == EvalMethod::Recursive) {
    long long prev = 1;
    s.terms[0] = 1;
    for (long long m = 2; m <= len; ++m) {
      const long long p = m - 1;
      const int jump =
          (p % theta == 0) ? jumps.external(p / theta) : jumps.internal(p);
      prev = wrap_index(prev + jump + 1, n);
      s.terms[static_cast<std::size_t>(m) - 1] = static_cast<int>(prev);
    }
  } else {
    long long internal_sum = 0, external_sum = 0;
    for (long long m = 1; m <= len; ++m) {
      s.terms[static_cast<std::size_t>(m) - 1] =
          wrap_index(m + internal_sum + external_sum, n);
      if (m < len) {
        if (m % theta == 0)
          external_sum += jumps.external(m / theta);
        else
          internal_sum += jumps.internal(m);
      }
    }
  }
  return s;
}

/// Multiple-ring Flower code: decode of its node sequence. The capacity
/// alpha_i of a node is its collective frequency of appearance across all
/// rho cycles.
inline FrCode multi_ring(int n, int theta, int rho,
                         const JumpFunctions& jumps) {
  return decode_node(multi_ring_node_seq(n, theta, rho, jumps));
}

}  // namespace flower
