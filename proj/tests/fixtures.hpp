#pragma once

// Reference constructions shared across the suites.

#include <flower/construction.hpp>
#include <flower/fr_code.hpp>
#include <flower/sequences.hpp>

namespace fixtures {

/// The (7,5,3,4) reference code: packet 1 replicated four times, the rest
/// three times, mixed node capacities 2 and 3.
inline flower::FrCode code_7_5() {
  return flower::FrCode(
      {{1, 5}, {1, 2}, {2, 3}, {1, 3, 4}, {2, 4, 5}, {3, 5}, {1, 4}}, 5);
}

/// Dropping sequence of the (4,6,3,2) example system.
inline flower::DroppingSequence dropping_4_6() {
  return {4, 6, {1, 1, 1, 1, 1, 1, 0, 0, 0, 1, 1, 1, 0, 0, 1, 1, 1}};
}

/// Node sequence of the same (4,6,3,2) system.
inline flower::NodeSequence node_seq_4_6() {
  return {4, 6, {1, 2, 3, 4, 1, 2, 2, 3, 4, 3, 4, 1}};
}

/// Its decode: U1={1,5,6}, U2={1,2,6}, U3={2,3,4}, U4={3,4,5}.
inline flower::FrCode code_4_6() {
  return flower::FrCode({{1, 5, 6}, {2, 6, 1}, {3, 2, 4}, {4, 3, 5}}, 6);
}

/// Subset-jump plan of the (8,7,4,3) single-ring example.
inline flower::SubsetJumpPlan plan_8_7() {
  return {8, 7, {{1, 2, 4}, {5, 6, 7, 8}, {2, 3, 5, 6, 7}}};
}

/// Jump functions of the (5,6,3,2) multiple-ring example.
inline flower::JumpFunctions jumps_const_1_0() {
  return {flower::JumpFn::constant(1), flower::JumpFn::constant(0)};
}

/// The (4,5) characteristic-sequence example.
inline flower::ChiSequence chi_4_5() {
  return {4, 5, {1, 1, 0, 1, 0, 0, 1, 1, 1, 1, 1, 1, 0, 1, 0, 1}};
}

/// Its decode by definition: U1={1,4}, U2={2,5,4}, U3={2,1}, U4={4,3,2,1}.
inline flower::FrCode code_4_5_chi() {
  return flower::FrCode({{1, 4}, {2, 5, 4}, {2, 1}, {4, 3, 2, 1}}, 5);
}

}  // namespace fixtures
