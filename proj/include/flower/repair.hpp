#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flower/construction.hpp"
#include "flower/fr_code.hpp"

namespace flower {

// Repair-degree analysis. A failed node is rebuilt by copying replicas from
// helper nodes; the interesting quantity is which helper sets suffice and
// how small they can be. Exact enumeration is intended for desk scale
// (n <= 20); larger codes fall back to a greedy cover tagged approximate.

inline constexpr int kExactRepairNodeLimit = 20;

struct NodeRepair {
  int node = 0;
  /// All inclusion-minimal helper sets, each sorted, listed by (size, lex).
  std::vector<std::vector<int>> minimal_helper_sets;
  /// Distinct sizes of the minimal helper sets, ascending.
  std::vector<int> degree_set;
  int max_degree = 0;  // d_i
  /// Multiset size alpha_i when each stored packet copy can be fetched from
  /// its own distinct helper (one download per helper); absent otherwise.
  std::optional<int> sdr_degree;
  /// Distinct packets of this node with no replica on any other node.
  std::vector<int> unrepairable;
  bool approximate = false;
};

struct RepairReport {
  std::vector<NodeRepair> nodes;
  /// Max repair degree over nodes whose packets all have external replicas.
  int system_degree = 0;
  std::vector<std::string> warnings;
};

namespace detail {

// Splits the distinct packets of node i into those with at least one replica
// elsewhere (they drive the covering requirement) and orphans.
inline void split_required(const FrCode& code, int i,
                           std::vector<int>& required,
                           std::vector<int>& orphans) {
  std::vector<int> distinct(code.node(i));
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()),
                 distinct.end());
  required.clear();
  orphans.clear();
  for (int p : distinct) {
    bool external = false;
    for (int j = 1; j <= code.node_count() && !external; ++j) {
      if (j == i) continue;
      external = std::find(code.node(j).begin(), code.node(j).end(), p) !=
                 code.node(j).end();
    }
    (external ? required : orphans).push_back(p);
  }
}

inline std::uint64_t coverage_mask(const FrCode& code, int j,
                                   const std::vector<int>& required) {
  std::uint64_t mask = 0;
  for (std::size_t k = 0; k < required.size(); ++k) {
    if (std::find(code.node(j).begin(), code.node(j).end(), required[k]) !=
        code.node(j).end())
      mask |= std::uint64_t{1} << k;
  }
  return mask;
}

}  // namespace detail

/// Distinct-representative helper assignment for node i: one (packet copy,
/// helper) pair per stored copy, helpers pairwise distinct and each holding
/// the packet it serves. Pairs follow the node's own storage order. Absent
/// when no such assignment exists.
inline std::optional<std::vector<std::pair<int, int>>> sdr_assignment(
    const FrCode& code, int i) {
  if (i < 1 || i > code.node_count())
    throw SpecError("node index " + std::to_string(i) + " is outside 1.." +
                    std::to_string(code.node_count()));
  const auto& instances = code.node(i);
  std::vector<int> helpers;
  for (int j = 1; j <= code.node_count(); ++j)
    if (j != i) helpers.push_back(j);
  std::vector<std::vector<int>> adj(instances.size());
  for (std::size_t k = 0; k < instances.size(); ++k)
    for (std::size_t h = 0; h < helpers.size(); ++h)
      if (std::find(code.node(helpers[h]).begin(), code.node(helpers[h]).end(),
                    instances[k]) != code.node(helpers[h]).end())
        adj[k].push_back(static_cast<int>(h));
  std::vector<int> matched_to(helpers.size(), -1);
  std::vector<char> visited;
  auto augment = [&](auto&& self, int k) -> bool {
    for (int h : adj[static_cast<std::size_t>(k)]) {
      if (visited[static_cast<std::size_t>(h)]) continue;
      visited[static_cast<std::size_t>(h)] = 1;
      if (matched_to[static_cast<std::size_t>(h)] < 0 ||
          self(self, matched_to[static_cast<std::size_t>(h)])) {
        matched_to[static_cast<std::size_t>(h)] = k;
        return true;
      }
    }
    return false;
  };
  for (std::size_t k = 0; k < instances.size(); ++k) {
    visited.assign(helpers.size(), 0);
    if (!augment(augment, static_cast<int>(k))) return std::nullopt;
  }
  std::vector<std::pair<int, int>> assignment(instances.size());
  for (std::size_t h = 0; h < helpers.size(); ++h) {
    if (matched_to[h] >= 0) {
      const std::size_t k = static_cast<std::size_t>(matched_to[h]);
      assignment[k] = {instances[k], helpers[h]};
    }
  }
  return assignment;
}

/// Full analysis of one node: minimal helper sets, degree set, distinct-
/// representative degree, and orphan packets.
inline NodeRepair analyze_node(const FrCode& code, int i) {
  if (i < 1 || i > code.node_count())
    throw SpecError("node index " + std::to_string(i) + " is outside 1.." +
                    std::to_string(code.node_count()));
  NodeRepair result;
  result.node = i;

  std::vector<int> required;
  detail::split_required(code, i, required, result.unrepairable);

  // Candidate helpers: nodes holding at least one required packet.
  std::vector<int> candidates;
  std::vector<std::uint64_t> masks;
  if (required.size() <= 64) {
    const std::uint64_t full =
        required.empty() ? 0
                         : (required.size() == 64
                                ? ~std::uint64_t{0}
                                : (std::uint64_t{1} << required.size()) - 1);
    for (int j = 1; j <= code.node_count(); ++j) {
      if (j == i) continue;
      const std::uint64_t m = detail::coverage_mask(code, j, required);
      if (m) {
        candidates.push_back(j);
        masks.push_back(m);
      }
    }
    if (required.empty()) {
      result.minimal_helper_sets = {{}};
      result.degree_set = {0};
      result.max_degree = 0;
    } else if (code.node_count() <= kExactRepairNodeLimit) {
      const int c = static_cast<int>(candidates.size());
      for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << c); ++pick) {
        std::uint64_t covered = 0;
        for (int b = 0; b < c; ++b)
          if (pick & (std::uint64_t{1} << b)) covered |= masks[b];
        if (covered != full) continue;
        bool minimal = true;
        for (int b = 0; b < c && minimal; ++b) {
          if (!(pick & (std::uint64_t{1} << b))) continue;
          std::uint64_t without = 0;
          for (int o = 0; o < c; ++o)
            if (o != b && (pick & (std::uint64_t{1} << o)))
              without |= masks[o];
          if (without == full) minimal = false;
        }
        if (!minimal) continue;
        std::vector<int> set;
        for (int b = 0; b < c; ++b)
          if (pick & (std::uint64_t{1} << b)) set.push_back(candidates[b]);
        result.minimal_helper_sets.push_back(std::move(set));
      }
      std::sort(result.minimal_helper_sets.begin(),
                result.minimal_helper_sets.end(),
                [](const auto& a, const auto& b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return a < b;
                });
      for (const auto& set : result.minimal_helper_sets) {
        const int size = static_cast<int>(set.size());
        if (result.degree_set.empty() || result.degree_set.back() != size)
          result.degree_set.push_back(size);
        result.max_degree = std::max(result.max_degree, size);
      }
    }
  }

  if (result.minimal_helper_sets.empty()) {
    // Greedy fallback beyond desk scale: one cover, pruned to minimality.
    result.approximate = true;
    std::vector<int> remaining(required);
    std::vector<int> set;
    while (!remaining.empty()) {
      int best = 0, best_hits = 0;
      for (int j = 1; j <= code.node_count(); ++j) {
        if (j == i) continue;
        if (std::find(set.begin(), set.end(), j) != set.end()) continue;
        int hits = 0;
        for (int p : remaining)
          if (std::find(code.node(j).begin(), code.node(j).end(), p) !=
              code.node(j).end())
            ++hits;
        if (hits > best_hits) {
          best_hits = hits;
          best = j;
        }
      }
      set.push_back(best);
      std::erase_if(remaining, [&](int p) {
        return std::find(code.node(best).begin(), code.node(best).end(), p) !=
               code.node(best).end();
      });
    }
    // Drop members made redundant by later picks.
    for (auto it = set.begin(); it != set.end();) {
      std::vector<int> uncovered(required);
      for (int j : set) {
        if (j == *it) continue;
        std::erase_if(uncovered, [&](int p) {
          return std::find(code.node(j).begin(), code.node(j).end(), p) !=
                 code.node(j).end();
        });
      }
      it = uncovered.empty() ? set.erase(it) : it + 1;
    }
    std::sort(set.begin(), set.end());
    result.degree_set = {static_cast<int>(set.size())};
    result.max_degree = static_cast<int>(set.size());
    result.minimal_helper_sets.push_back(std::move(set));
  }

  // Distinct-representative repair: every stored copy from its own helper.
  if (const auto assignment = sdr_assignment(code, i))
    result.sdr_degree = static_cast<int>(assignment->size());

  return result;
}

inline std::vector<std::vector<int>> minimal_helper_sets(const FrCode& code,
                                                         int i) {
  return analyze_node(code, i).minimal_helper_sets;
}

inline std::vector<int> repair_degree_set(const FrCode& code, int i) {
  return analyze_node(code, i).degree_set;
}

inline std::optional<int> sdr_repair_degree(const FrCode& code, int i) {
  return analyze_node(code, i).sdr_degree;
}

/// Node-packet pairs where the packet has no replica on any other node.
inline std::vector<std::pair<int, int>> unrepairable_packets(
    const FrCode& code) {
  std::vector<std::pair<int, int>> out;
  std::vector<int> required, orphans;
  for (int i = 1; i <= code.node_count(); ++i) {
    detail::split_required(code, i, required, orphans);
    for (int p : orphans) out.emplace_back(i, p);
  }
  return out;
}

inline RepairReport analyze_repair(const FrCode& code) {
  RepairReport report;
  bool flagged = false;
  for (int i = 1; i <= code.node_count(); ++i) {
    report.nodes.push_back(analyze_node(code, i));
    const NodeRepair& nr = report.nodes.back();
    if (nr.unrepairable.empty())
      report.system_degree = std::max(report.system_degree, nr.max_degree);
    else
      flagged = true;
  }
  if (flagged)
    report.warnings.push_back(
        "some nodes hold packets with no external replica; the system repair "
        "degree covers fully repairable nodes only");
  return report;
}

inline int system_repair_degree(const FrCode& code) {
  return analyze_repair(code).system_degree;
}

struct BoundCheck {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct BoundCheckReport {
  std::vector<BoundCheck> checks;
  /// Nodes outside every cycle subset; the floor lower bound is not
  /// evaluated for them.
  std::vector<int> skipped_nodes;

  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const BoundCheck& c) { return c.pass; });
  }
};

/// Checks the capacity bounds a single-ring construction must satisfy
/// against a code it claims to have produced.
inline BoundCheckReport subset_bound_check(const FrCode& code,
                                           const SubsetJumpPlan& plan) {
  const SingleRingCode rebuilt = single_ring(plan);
  if (!same_distribution(code, rebuilt.code))
    throw SpecError("code does not match the single-ring plan");

  const Profiles prof = profiles(code);
  BoundCheckReport report;

  std::vector<std::vector<int>> subsets;
  for (int m = 1; m <= plan.rho(); ++m)
    subsets.push_back(detail::normalized_subset(
        plan.subsets[static_cast<std::size_t>(m) - 1], plan.n, m));

  std::size_t max_size = 0;
  int ceil_sum = 0;
  for (const auto& s : subsets) {
    max_size = std::max(max_size, s.size());
    ceil_sum += (plan.theta + static_cast<int>(s.size()) - 1) /
                static_cast<int>(s.size());
  }

  {
    BoundCheck c{"alpha_upper", prof.alpha <= ceil_sum,
                 "alpha = " + std::to_string(prof.alpha) +
                     ", sum of ceilings = " + std::to_string(ceil_sum)};
    report.checks.push_back(std::move(c));
  }

  {
    const int floor_bound = plan.theta / static_cast<int>(max_size);
    BoundCheck c{"alpha_lower_touched", true, ""};
    for (int i = 1; i <= plan.n; ++i) {
      const bool touched = std::any_of(
          subsets.begin(), subsets.end(), [&](const std::vector<int>& s) {
            return std::binary_search(s.begin(), s.end(), i);
          });
      if (!touched) {
        report.skipped_nodes.push_back(i);
        continue;
      }
      if (prof.alpha_vec[static_cast<std::size_t>(i) - 1] < floor_bound) {
        c.pass = false;
        c.detail += "node " + std::to_string(i) + " holds " +
                    std::to_string(prof.alpha_vec[static_cast<std::size_t>(i) - 1]) +
                    " < " + std::to_string(floor_bound) + "; ";
      }
    }
    if (c.pass)
      c.detail = "floor bound " + std::to_string(floor_bound) +
                 " holds for every node in some subset";
    report.checks.push_back(std::move(c));
  }

  {
    BoundCheck c{"intersection_maximal", true, ""};
    for (int i = 1; i <= plan.n; ++i) {
      const bool in_all = std::all_of(
          subsets.begin(), subsets.end(), [&](const std::vector<int>& s) {
            return std::binary_search(s.begin(), s.end(), i);
          });
      if (!in_all) continue;
      const int alpha_i = prof.alpha_vec[static_cast<std::size_t>(i) - 1];
      if (alpha_i != prof.alpha) {
        c.pass = false;
        c.detail += "node " + std::to_string(i) + " lies in every subset but "
                    "holds " + std::to_string(alpha_i) + " != alpha = " +
                    std::to_string(prof.alpha) + "; ";
      } else {
        c.detail += "node " + std::to_string(i) + " holds alpha = " +
                    std::to_string(prof.alpha) + "; ";
      }
    }
    if (c.detail.empty()) c.detail = "no node lies in every subset";
    report.checks.push_back(std::move(c));
  }

  {
    BoundCheck c{"exclusive_ceiling", true, ""};
    for (int i = 1; i <= plan.n; ++i) {
      int memberships = 0;
      std::size_t only = 0;
      for (std::size_t m = 0; m < subsets.size(); ++m) {
        if (std::binary_search(subsets[m].begin(), subsets[m].end(), i)) {
          ++memberships;
          only = m;
        }
      }
      if (memberships != 1) continue;
      const int bound = (plan.theta + static_cast<int>(subsets[only].size()) - 1) /
                        static_cast<int>(subsets[only].size());
      if (prof.alpha < bound) {
        c.pass = false;
        c.detail += "node " + std::to_string(i) + " exclusive to A_" +
                    std::to_string(only + 1) + " but alpha = " +
                    std::to_string(prof.alpha) + " < " +
                    std::to_string(bound) + "; ";
      }
    }
    if (c.pass) c.detail = "ceiling bound holds for every exclusive member";
    report.checks.push_back(std::move(c));
  }

  return report;
}

}  // namespace flower
