#include "boundinfo/tables.hpp"

namespace boundinfo::tables {

using dist::Entry;
using dist::RegisterSpec;

namespace {

const std::vector<std::string> kBit{"0", "1"};

std::string bit(int v) { return v % 2 ? "1" : "0"; }

std::vector<std::string> eve_symbols(char prefix) {
  return {std::string(1, prefix) + "1", std::string(1, prefix) + "2",
          std::string(1, prefix) + "3", std::string(1, prefix) + "4"};
}

// Offsets of (C,B,D) relative to the A bit, one triple per Eve symbol.
// Row shapes of the bound-information table in compact form.
constexpr int kEpsOffsets[4][3] = {
    {0, 0, 0},  // e1: (i, i,   i,   i)
    {0, 1, 1},  // e2: (i, i,   i+1, i+1)
    {1, 0, 1},  // e3: (i, i+1, i,   i+1)
    {1, 1, 0},  // e4: (i, i+1, i+1, i)
};

}  // namespace

JointDistribution smolin_table() {
  std::vector<RegisterSpec> regs{{"A", kBit, "A"},
                                 {"C", kBit, "C"},
                                 {"B", kBit, "B"},
                                 {"D", kBit, "D"},
                                 {"EVE", eve_symbols('e'), dist::kEve}};
  std::vector<Entry> entries;
  for (int i = 0; i <= 1; ++i) {
    for (int e = 0; e < 4; ++e) {
      entries.push_back({{bit(i), bit(i + kEpsOffsets[e][0]),
                          bit(i + kEpsOffsets[e][1]), bit(i + kEpsOffsets[e][2]),
                          "e" + std::to_string(e + 1)},
                         Rat(1, 8)});
    }
  }
  return make_distribution(regs, entries);
}

JointDistribution unlock_table() {
  std::vector<RegisterSpec> regs{{"A", kBit, "A"},
                                 {"C", kBit, "C"},
                                 {"B", kBit, "B"},
                                 {"D", kBit, "D"},
                                 {"EVE", eve_symbols('e'), dist::kEve}};
  std::vector<Entry> entries{
      {{"0", "0", "0", "0", "e1"}, Rat(1, 4)},
      {{"0", "0", "1", "1", "e2"}, Rat(1, 4)},
      {{"1", "1", "0", "0", "e2"}, Rat(1, 4)},
      {{"1", "1", "1", "1", "e1"}, Rat(1, 4)},
  };
  return make_distribution(regs, entries);
}

JointDistribution compact_table(int copy) {
  if (copy == 1) {
    std::vector<RegisterSpec> regs{{"A1", kBit, "A"},
                                   {"C1", kBit, "C"},
                                   {"B1", kBit, "B"},
                                   {"D", kBit, "D"},
                                   {"EVE1", eve_symbols('e'), dist::kEve}};
    std::vector<Entry> entries;
    for (int i = 0; i <= 1; ++i) {
      for (int e = 0; e < 4; ++e) {
        entries.push_back(
            {{bit(i), bit(i + kEpsOffsets[e][0]), bit(i + kEpsOffsets[e][1]),
              bit(i + kEpsOffsets[e][2]), "e" + std::to_string(e + 1)},
             Rat(1, 8)});
      }
    }
    return make_distribution(regs, entries);
  }
  if (copy == 2) {
    std::vector<RegisterSpec> regs{{"A2", kBit, "A"},
                                   {"B2", kBit, "B"},
                                   {"C2", kBit, "C"},
                                   {"E", kBit, "E"},
                                   {"EVE2", eve_symbols('f'), dist::kEve}};
    std::vector<Entry> entries;
    for (int j = 0; j <= 1; ++j) {
      for (int f = 0; f < 4; ++f) {
        entries.push_back(
            {{bit(j), bit(j + kEpsOffsets[f][0]), bit(j + kEpsOffsets[f][1]),
              bit(j + kEpsOffsets[f][2]), "f" + std::to_string(f + 1)},
             Rat(1, 8)});
      }
    }
    return make_distribution(regs, entries);
  }
  throw IndexError("compact_table copy must be 1 or 2");
}

namespace {

// (B1,C1,D) offsets relative to i per e-symbol, and (B2,C2,E) offsets
// relative to j per f-symbol, in the two-copy table.
constexpr int kCopy1Offsets[4][3] = {
    {0, 0, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 0}};  // (b1,c1,d) for e1..e4
constexpr int kCopy2Offsets[4][3] = {
    {0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};  // (b2,c2,e) for f1..f4

}  // namespace

JointDistribution prob1_table() {
  std::vector<RegisterSpec> regs{{"A1", kBit, "A"},
                                 {"A2", kBit, "A"},
                                 {"B1", kBit, "B"},
                                 {"B2", kBit, "B"},
                                 {"C1", kBit, "C"},
                                 {"C2", kBit, "C"},
                                 {"D", kBit, "D"},
                                 {"E", kBit, "E"},
                                 {"EVE1", eve_symbols('e'), dist::kEve},
                                 {"EVE2", eve_symbols('f'), dist::kEve}};
  std::vector<Entry> entries;
  for (int i = 0; i <= 1; ++i) {
    for (int j = 0; j <= 1; ++j) {
      for (int e = 0; e < 4; ++e) {
        for (int f = 0; f < 4; ++f) {
          entries.push_back({{bit(i), bit(j), bit(i + kCopy1Offsets[e][0]),
                              bit(j + kCopy2Offsets[f][0]),
                              bit(i + kCopy1Offsets[e][1]),
                              bit(j + kCopy2Offsets[f][1]),
                              bit(i + kCopy1Offsets[e][2]),
                              bit(j + kCopy2Offsets[f][2]),
                              "e" + std::to_string(e + 1),
                              "f" + std::to_string(f + 1)},
                             Rat(1, 64)});
        }
      }
    }
  }
  return make_distribution(regs, entries);
}

JointDistribution prob2_table() {
  // C1' = j for e1,e2 and j+1 for e3,e4; (B1,D) keep the copy-1 offsets.
  std::vector<RegisterSpec> regs{{"B1", kBit, "B"},
                                 {"B2", kBit, "B"},
                                 {"C1'", kBit, "C"},
                                 {"C2", kBit, "C"},
                                 {"D", kBit, "D"},
                                 {"E", kBit, "E"},
                                 {"EVE1", eve_symbols('e'), dist::kEve},
                                 {"EVE2", eve_symbols('f'), dist::kEve}};
  constexpr int kC1p[4] = {0, 0, 1, 1};
  std::vector<Entry> entries;
  for (int i = 0; i <= 1; ++i) {
    for (int j = 0; j <= 1; ++j) {
      for (int e = 0; e < 4; ++e) {
        for (int f = 0; f < 4; ++f) {
          entries.push_back({{bit(i + kCopy1Offsets[e][0]),
                              bit(j + kCopy2Offsets[f][0]), bit(j + kC1p[e]),
                              bit(j + kCopy2Offsets[f][1]),
                              bit(i + kCopy1Offsets[e][2]),
                              bit(j + kCopy2Offsets[f][2]),
                              "e" + std::to_string(e + 1),
                              "f" + std::to_string(f + 1)},
                             Rat(1, 64)});
        }
      }
    }
  }
  return make_distribution(regs, entries);
}

JointDistribution sprob3_table() {
  // Explicit appendix form: rows (C1',C2,D',E) relative to j. The e1/e2
  // blocks coincide, as do the e3/e4 blocks with every bit flipped on the
  // C1' and D' columns.
  std::vector<RegisterSpec> regs{{"C1'", kBit, "C"},
                                 {"C2", kBit, "C"},
                                 {"D'", kBit, "D"},
                                 {"E", kBit, "E"},
                                 {"EVE1", eve_symbols('e'), dist::kEve},
                                 {"EVE2", eve_symbols('f'), dist::kEve}};
  // (c1p, c2, dp, e) offsets per f-symbol for the e1/e2 blocks.
  constexpr int kLow[4][4] = {
      {0, 0, 0, 0}, {0, 1, 0, 1}, {0, 0, 1, 1}, {0, 1, 1, 0}};
  // Same for the e3/e4 blocks.
  constexpr int kHigh[4][4] = {
      {1, 0, 1, 0}, {1, 1, 1, 1}, {1, 0, 0, 1}, {1, 1, 0, 0}};
  std::vector<Entry> entries;
  for (int j = 0; j <= 1; ++j) {
    for (int e = 0; e < 4; ++e) {
      const auto& block = e < 2 ? kLow : kHigh;
      for (int f = 0; f < 4; ++f) {
        entries.push_back(
            {{bit(j + block[f][0]), bit(j + block[f][1]), bit(j + block[f][2]),
              bit(j + block[f][3]), "e" + std::to_string(e + 1),
              "f" + std::to_string(f + 1)},
             Rat(1, 32)});
      }
    }
  }
  return make_distribution(regs, entries);
}

JointDistribution csec_table() {
  std::vector<RegisterSpec> regs{{"A", kBit, "A"},
                                 {"C", kBit, "C"},
                                 {"B", kBit, "B"},
                                 {"D", kBit, "D"},
                                 {"EVE", eve_symbols('e'), dist::kEve}};
  std::vector<Entry> entries;
  for (int s = 0; s <= 1; ++s) {
    for (int i = 0; i <= 1; ++i) {
      for (int e = 0; e < 4; ++e) {
        entries.push_back({{bit(s + i), bit(s + i + kEpsOffsets[e][0]),
                            bit(s + i + kEpsOffsets[e][1]),
                            bit(i + kEpsOffsets[e][2]),
                            "e" + std::to_string(e + 1)},
                           Rat(1, 16)});
      }
    }
  }
  return make_distribution(regs, entries);
}

JointDistribution csec2_table() {
  // David's column collapses to the secret bit s on every row.
  std::vector<RegisterSpec> regs{{"A", kBit, "A"},
                                 {"C", kBit, "C"},
                                 {"B", kBit, "B"},
                                 {"D", kBit, "D"},
                                 {"EVE", eve_symbols('e'), dist::kEve}};
  std::vector<Entry> entries;
  for (int s = 0; s <= 1; ++s) {
    for (int i = 0; i <= 1; ++i) {
      for (int e = 0; e < 4; ++e) {
        entries.push_back({{bit(s + i), bit(s + i + kEpsOffsets[e][0]),
                            bit(s + i + kEpsOffsets[e][1]), bit(s),
                            "e" + std::to_string(e + 1)},
                           Rat(1, 16)});
      }
    }
  }
  return make_distribution(regs, entries);
}

}  // namespace boundinfo::tables
