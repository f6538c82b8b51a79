#pragma once

#include "boundinfo/dist.hpp"

namespace boundinfo::tables {

using dist::JointDistribution;

/// The four-party bound-information table: honest bits A,C,B,D and an
/// eve-owned register EVE over {e1..e4}, eight rows at 1/8.
JointDistribution smolin_table();

/// The post-selected table after B and D announce equal bits: four rows
/// at 1/4, Eve uniform over {e1,e2} and exactly independent.
JointDistribution unlock_table();

/// Compact single-copy forms: copy 1 over (A1,C1,B1,D,EVE1), copy 2 over
/// (A2,B2,C2,E,EVE2); each equal to smolin_table() under renaming.
JointDistribution compact_table(int copy);

/// Two-copy product over ten registers (A1,A2,B1,B2,C1,C2,D,E,EVE1,EVE2),
/// 64 rows at 1/64.
JointDistribution prob1_table();

/// After Alice teleports A2 to Clare: (B1,B2,C1',C2,D,E,EVE1,EVE2),
/// 64 rows at 1/64.
JointDistribution prob2_table();

/// After Bob teleports B2 to David: (C1',C2,D',E,EVE1,EVE2), 32 rows
/// at 1/32. The explicit form of the four-row parameterized table.
JointDistribution sprob3_table();

/// Secrecy distribution, after the three parity computations:
/// (A,C,B,D,EVE) with A,C,B carrying the parities, 16 rows at 1/16.
JointDistribution csec_table();

/// Secrecy distribution, after David adds the announced parities: his
/// column equals the shared secret bit on every row.
JointDistribution csec2_table();

}  // namespace boundinfo::tables
