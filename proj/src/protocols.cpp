#include "boundinfo/protocols.hpp"

#include "boundinfo/errors.hpp"
#include "boundinfo/measures.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace boundinfo::proto {

using dist::Entry;
using dist::JointDistribution;
using dist::OutcomeRef;
using dist::RegisterSpec;

namespace {

const std::vector<std::string> kBit{"0", "1"};

std::string xor_bits(const std::vector<std::string>& in) {
  int acc = 0;
  for (const auto& s : in) {
    if (s != "0" && s != "1") throw AlphabetError("expected a bit, got " + s);
    acc ^= (s == "1");
  }
  return acc ? "1" : "0";
}

void require_bit(const JointDistribution& d, const std::string& name) {
  if (d.reg(name).alphabet != kBit)
    throw AlphabetError("register " + name + " is not a bit");
}

std::set<std::string> all_but(const JointDistribution& d,
                              const std::set<std::string>& drop) {
  std::set<std::string> keep;
  for (const auto& r : d.registers())
    if (!drop.count(r.name)) keep.insert(r.name);
  return keep;
}

}  // namespace

// --- Transcript ----------------------------------------------------------

void Transcript::add_step(std::string actor, std::string description,
                          std::vector<std::string> announced) {
  steps_.push_back({std::move(actor), std::move(description),
                    std::move(announced)});
}

void Transcript::snapshot(std::string name, const JointDistribution& d) {
  snapshots_.emplace_back(std::move(name), d);
}

const JointDistribution& Transcript::snapshot(const std::string& name) const {
  for (const auto& [n, d] : snapshots_)
    if (n == name) return d;
  throw UnknownRegisterError("no snapshot named " + name);
}

std::vector<std::string> Transcript::announced_registers() const {
  std::vector<std::string> out;
  for (const auto& s : steps_)
    out.insert(out.end(), s.announced.begin(), s.announced.end());
  return out;
}

bool Transcript::announcements_public_in_snapshots() const {
  // An announced register still present in a snapshot must be public there;
  // registers consumed (marginalized away) before the snapshot are fine.
  std::set<std::string> announced;
  for (const auto& s : steps_)
    announced.insert(s.announced.begin(), s.announced.end());
  for (const auto& [name, d] : snapshots_) {
    (void)name;
    for (const auto& reg_name : announced)
      if (d.has_register(reg_name) && !d.reg(reg_name).is_public())
        return false;
  }
  return true;
}

// --- classical teleport --------------------------------------------------

JointDistribution classical_teleport(const JointDistribution& d,
                                     const std::string& sender,
                                     const std::string& msg,
                                     const std::string& sender_key,
                                     const std::string& receiver,
                                     const std::string& receiver_key,
                                     const std::string& out,
                                     Transcript* transcript) {
  require_bit(d, msg);
  require_bit(d, sender_key);
  require_bit(d, receiver_key);
  const std::string pad = out + ".pad";
  JointDistribution cur =
      apply_local_function(d, sender, {msg, sender_key}, xor_bits, pad, kBit);
  cur = dist::announce(cur, pad);
  if (transcript)
    transcript->add_step(sender, "announce " + pad + " = " + msg + " + " +
                                     sender_key, {pad});
  cur = apply_local_function(cur, receiver, {pad, receiver_key}, xor_bits, out,
                             kBit);
  if (transcript)
    transcript->add_step(receiver, "compute " + out + " = " + pad + " + " +
                                       receiver_key);
  // Consume the private inputs; public ones stay visible to Eve.
  std::set<std::string> drop;
  for (const auto& n : {msg, sender_key, receiver_key})
    if (!cur.reg(n).is_public()) drop.insert(n);
  return marginalize(cur, all_but(cur, drop));
}

// --- unlockability -------------------------------------------------------

UnlockResult unlock(const JointDistribution& d, const PairTarget& joiners,
                    const PairTarget& targets) {
  for (const auto& n :
       {joiners.first, joiners.second, targets.first, targets.second})
    require_bit(d, n);
  std::set<std::string> four{joiners.first, joiners.second, targets.first,
                             targets.second};
  if (four.size() != 4)
    throw UnknownRegisterError("joiners and targets must be four distinct registers");
  for (const auto& n : four)
    if (!d.reg(n).is_honest())
      throw OwnershipError("register " + n + " is not honestly held");

  UnlockResult res;
  res.transcript.add_step(joiners.first + "+" + joiners.second,
                          "announce whether " + joiners.first + " and " +
                              joiners.second + " agree");

  auto equal = dist::post_select(d, [&](const OutcomeRef& o) {
    return o[joiners.first] == o[joiners.second];
  });
  res.branches.push_back({"equal", equal.dist, equal.acceptance,
                          targets.first, targets.second,
                          dist::is_sbit(equal.dist, targets.first,
                                        targets.second)});
  res.transcript.snapshot("equal", equal.dist);

  auto unequal = dist::post_select(d, [&](const OutcomeRef& o) {
    return o[joiners.first] != o[joiners.second];
  });
  // The first target flips his bit to restore perfect correlation.
  const std::string flipped = targets.first + "'";
  JointDistribution fixed = apply_local_function(
      unequal.dist, d.reg(targets.first).owner, {targets.first},
      [](const std::vector<std::string>& in) {
        return in[0] == "0" ? "1" : "0";
      },
      flipped, kBit);
  fixed = marginalize(fixed, all_but(fixed, {targets.first}));
  res.branches.push_back({"unequal", fixed, unequal.acceptance, flipped,
                          targets.second,
                          dist::is_sbit(fixed, flipped, targets.second)});
  res.transcript.snapshot("unequal", fixed);
  return res;
}

// --- two-copy activation ---------------------------------------------------

DistillationRun superactivate_pair() {
  Transcript t;
  JointDistribution d =
      dist::product(tables::compact_table(1), tables::compact_table(2));
  t.snapshot("table-10", d);

  d = classical_teleport(d, "A", "A2", "A1", "C", "C1", "C1'", &t);
  t.snapshot("table-11", d);

  d = classical_teleport(d, "B", "B2", "B1", "D", "D", "D'", &t);
  t.snapshot("table-12", d);

  d = apply_local_function(d, "C", {"C1'", "C2"}, xor_bits, "Cdiff", kBit);
  d = dist::announce(d, "Cdiff");
  t.add_step("C", "announce Cdiff = C1' + C2", {"Cdiff"});

  d = apply_local_function(d, "D", {"D'", "Cdiff"}, xor_bits, "Dkey", kBit);
  t.add_step("D", "compute Dkey = D' + Cdiff");
  d = marginalize(d, all_but(d, {"D'"}));

  t.snapshot("final", d);
  const bool sbit = dist::is_sbit(d, "Dkey", "E");
  return {std::move(d), "Dkey", "E", sbit, std::move(t)};
}

// --- five-copy symmetrization ----------------------------------------------

namespace {

const std::vector<std::string> kParties{"A", "B", "C", "D", "E"};

/// Copy k omits party kParties[5-k] (copy 1 = ABCD ... copy 5 = BCDE).
std::vector<std::string> copy_parties(int copy) {
  std::vector<std::string> out;
  for (int p = 0; p < 5; ++p)
    if (kParties[p] != kParties[5 - copy]) out.push_back(kParties[p]);
  return out;
}

JointDistribution bound_info_copy(int copy) {
  auto parties = copy_parties(copy);
  const std::string suffix = std::to_string(copy);
  // The table's column pattern is (r1, r2, r3, r4) = (A, C, B, D): r1 is the
  // reference bit and (r2,r3,r4) carry the per-symbol offsets.
  std::vector<RegisterSpec> regs{
      {parties[0] + suffix, kBit, parties[0]},
      {parties[2] + suffix, kBit, parties[2]},
      {parties[1] + suffix, kBit, parties[1]},
      {parties[3] + suffix, kBit, parties[3]},
      {"EVE" + suffix, {"e1", "e2", "e3", "e4"}, dist::kEve}};
  constexpr int kOff[4][3] = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
  std::vector<Entry> entries;
  for (int i = 0; i <= 1; ++i)
    for (int e = 0; e < 4; ++e)
      entries.push_back({{i ? "1" : "0", (i + kOff[e][0]) % 2 ? "1" : "0",
                          (i + kOff[e][1]) % 2 ? "1" : "0",
                          (i + kOff[e][2]) % 2 ? "1" : "0",
                          "e" + std::to_string(e + 1)},
                         Rat(1, 8)});
  return dist::make_distribution(regs, entries);
}

}  // namespace

JointDistribution symmetrized_five() {
  JointDistribution d = bound_info_copy(1);
  for (int copy = 2; copy <= 5; ++copy)
    d = dist::product(d, bound_info_copy(copy));
  return d;
}

DistillationRun distill_pair_from_five(const JointDistribution& d,
                                       const PairTarget& target) {
  if (target.first == target.second)
    throw UnknownRegisterError("target parties must differ");
  for (const auto& p : {target.first, target.second})
    if (std::find(kParties.begin(), kParties.end(), p) == kParties.end())
      throw UnknownRegisterError("unknown party " + p);

  // Omit rule: copy X contains target.first but not target.second, copy Y
  // the other way round.
  auto copy_with = [&](const std::string& in, const std::string& out_) {
    for (int c = 1; c <= 5; ++c) {
      auto ps = copy_parties(c);
      bool has_in = std::find(ps.begin(), ps.end(), in) != ps.end();
      bool has_out = std::find(ps.begin(), ps.end(), out_) != ps.end();
      if (has_in && !has_out) return c;
    }
    throw UnknownRegisterError("no copy separates " + in + " from " + out_);
  };
  const int cx = copy_with(target.first, target.second);
  const int cy = copy_with(target.second, target.first);

  std::vector<std::string> common;
  for (const auto& p : kParties)
    if (p != target.first && p != target.second) common.push_back(p);
  // common is sorted (kParties is); the first two teleport, the third is
  // the hub who announces the comparison bit.
  const std::string p1 = common[0], p2 = common[1], hub = common[2];
  auto reg = [](const std::string& party, int copy) {
    return party + std::to_string(copy);
  };

  Transcript t;
  JointDistribution cur = d;

  // p1 teleports his copy-Y bit to the hub, keyed on copy X.
  cur = classical_teleport(cur, p1, reg(p1, cy), reg(p1, cx), hub,
                           reg(hub, cx), "HUB", &t);
  // p2 teleports his copy-Y bit to target.first, keyed on copy X.
  cur = classical_teleport(cur, p2, reg(p2, cy), reg(p2, cx), target.first,
                           reg(target.first, cx), "T1", &t);

  const std::string diff = "HUB.diff";
  cur = apply_local_function(cur, hub, {"HUB", reg(hub, cy)}, xor_bits, diff,
                             kBit);
  cur = dist::announce(cur, diff);
  t.add_step(hub, "announce " + diff + " = HUB + " + reg(hub, cy), {diff});

  cur = apply_local_function(cur, target.first, {"T1", diff}, xor_bits, "KEY",
                             kBit);
  t.add_step(target.first, "compute KEY = T1 + " + diff);
  cur = marginalize(cur, all_but(cur, {"T1"}));

  t.snapshot("final", cur);
  const std::string key2 = reg(target.second, cy);
  const bool sbit = dist::is_sbit(cur, "KEY", key2);
  return {std::move(cur), "KEY", key2, sbit, std::move(t)};
}

// --- secrecy distribution ----------------------------------------------------

SecrecyDistributionRun distribute_secret() {
  Transcript t;

  // Tripartite sbit s, a copy per insider.
  JointDistribution sbit3 = dist::make_distribution(
      {{"sA", kBit, "A"}, {"sB", kBit, "B"}, {"sC", kBit, "C"}},
      {{{"0", "0", "0"}, Rat(1, 2)}, {{"1", "1", "1"}, Rat(1, 2)}});
  JointDistribution d = dist::product(tables::smolin_table(), sbit3);

  for (const std::string& k : {std::string("A"), std::string("B"),
                               std::string("C")}) {
    d = apply_local_function(d, k, {"s" + k, k}, xor_bits, "p" + k, kBit);
  }

  for (const std::string& k : {std::string("A"), std::string("B"),
                               std::string("C")}) {
    d = dist::announce(d, "p" + k);
    t.add_step(k, "announce p" + k + " = s" + k + " + " + k, {"p" + k});
  }
  t.snapshot("table-17", d);

  d = apply_local_function(d, "D", {"pA", "pB", "pC"}, xor_bits, "vD", kBit);
  d = apply_local_function(d, "D", {"D", "vD"}, xor_bits, "Dout", kBit);
  t.add_step("D", "compute Dout = D + pA + pB + pC");
  t.snapshot("table-18", d);

  const std::vector<std::string> key_regs{"sA", "sB", "sC", "Dout"};
  const bool multi = dist::is_multipartite_sbit(d, key_regs);

  bool matches = true;
  for (const auto& [o, p] : d.table()) {
    (void)p;
    if (d.symbol(o, "Dout") != d.symbol(o, "sA")) {
      matches = false;
      break;
    }
  }

  const auto view = d.eve_view();
  std::set<std::string> eve(view.begin(), view.end());
  const bool indep =
      measures::conditional_mutual_information(d, {"sA"}, eve, {}).exact_zero;
  return {std::move(d), std::move(t), key_regs, multi, matches, indep};
}

// --- pairwise-to-multipartite plumbing ---------------------------------------

PairSbit ideal_pair_sbit(const std::string& party1, const std::string& party2) {
  const std::string base = "K." + party1 + "." + party2;
  JointDistribution d = dist::make_distribution(
      {{base + ".1", kBit, party1}, {base + ".2", kBit, party2}},
      {{{"0", "0"}, Rat(1, 2)}, {{"1", "1"}, Rat(1, 2)}});
  return {party1, party2, base + ".1", base + ".2", d};
}

JointDistribution multipartite_from_pairwise(const std::vector<PairSbit>& pairs,
                                             Transcript* transcript) {
  if (pairs.empty()) throw DisconnectedGraphError("no pair sbits given");
  std::set<std::string> parties;
  for (const auto& p : pairs) {
    if (!p.dist.reg(p.reg1).is_honest() || !p.dist.reg(p.reg2).is_honest())
      throw OwnershipError("pair registers must be honestly held");
    if (p.dist.reg(p.reg1).owner != p.party1 ||
        p.dist.reg(p.reg2).owner != p.party2)
      throw OwnershipError("pair registers must be owned by the named parties");
    parties.insert(p.party1);
    parties.insert(p.party2);
  }

  // Spanning tree by BFS from the lexicographically first party.
  const std::string root = *parties.begin();
  std::set<std::string> reached{root};
  struct Edge {
    std::size_t pair;
    std::string from, to;  // key flows from -> to
  };
  std::vector<Edge> tree;
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto& p = pairs[i];
      if (reached.count(p.party1) && !reached.count(p.party2)) {
        tree.push_back({i, p.party1, p.party2});
        reached.insert(p.party2);
        grew = true;
      } else if (reached.count(p.party2) && !reached.count(p.party1)) {
        tree.push_back({i, p.party2, p.party1});
        reached.insert(p.party1);
        grew = true;
      }
    }
  }
  if (reached != parties)
    throw DisconnectedGraphError("pair-sbit graph is not connected");

  JointDistribution d = pairs[0].dist;
  for (std::size_t i = 1; i < pairs.size(); ++i)
    d = dist::product(d, pairs[i].dist);

  // The root samples a fresh uniform secret.
  JointDistribution fresh = dist::make_distribution(
      {{"KEY." + root, kBit, root}},
      {{{"0"}, Rat(1, 2)}, {{"1"}, Rat(1, 2)}});
  d = dist::product(d, fresh);
  if (transcript) transcript->add_step(root, "sample KEY." + root);

  for (const auto& e : tree) {
    const auto& p = pairs[e.pair];
    const std::string from_reg = e.from == p.party1 ? p.reg1 : p.reg2;
    const std::string to_reg = e.from == p.party1 ? p.reg2 : p.reg1;
    const std::string pad = "PAD." + e.from + "." + e.to;
    d = apply_local_function(d, e.from, {"KEY." + e.from, from_reg}, xor_bits,
                             pad, kBit);
    d = dist::announce(d, pad);
    d = apply_local_function(d, e.to, {pad, to_reg}, xor_bits, "KEY." + e.to,
                             kBit);
    if (transcript) {
      transcript->add_step(e.from, "announce " + pad, {pad});
      transcript->add_step(e.to, "compute KEY." + e.to);
    }
    d = marginalize(d, all_but(d, {from_reg, to_reg}));
  }
  return d;
}

}  // namespace boundinfo::proto
