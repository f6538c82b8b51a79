#pragma once

#include "boundinfo/dist.hpp"
#include "boundinfo/tables.hpp"

#include <optional>
#include <string>
#include <vector>

namespace boundinfo::proto {

using dist::JointDistribution;

/// Ordered audit trail of a protocol run: local operations, public
/// announcements, and named distribution checkpoints.
class Transcript {
 public:
  struct Step {
    std::string actor;
    std::string description;
    std::vector<std::string> announced;
  };

  void add_step(std::string actor, std::string description,
                std::vector<std::string> announced = {});
  void snapshot(std::string name, const JointDistribution& d);

  const std::vector<Step>& steps() const { return steps_; }
  const std::vector<std::pair<std::string, JointDistribution>>& snapshots()
      const {
    return snapshots_;
  }
  const JointDistribution& snapshot(const std::string& name) const;
  std::vector<std::string> announced_registers() const;

  /// Every register announced so far is public in every later snapshot.
  bool announcements_public_in_snapshots() const;

 private:
  std::vector<Step> steps_;
  std::vector<std::pair<std::string, JointDistribution>> snapshots_;
};

struct PairTarget {
  std::string first;
  std::string second;
};

/// One-time pad transfer of `msg` from sender to receiver: the parity
/// msg+senderKey is announced as `out + ".pad"`, the receiver adds his key
/// into a fresh register `out`, and the consumed registers (msg, both keys)
/// are marginalized away. The pad stays, publicly, in Eve's view.
JointDistribution classical_teleport(const JointDistribution& d,
                                     const std::string& sender,
                                     const std::string& msg,
                                     const std::string& sender_key,
                                     const std::string& receiver,
                                     const std::string& receiver_key,
                                     const std::string& out,
                                     Transcript* transcript = nullptr);

struct UnlockBranch {
  std::string label;  // "equal" or "unequal"
  JointDistribution dist;
  Rat acceptance;
  std::string key1, key2;  // registers carrying the distilled bit
  bool sbit = false;
};

struct UnlockResult {
  std::vector<UnlockBranch> branches;
  Transcript transcript;
};

/// The joiners announce whether their bits agree; in the unequal branch the
/// first target party flips. Both branches leave an sbit for the targets.
UnlockResult unlock(const JointDistribution& d, const PairTarget& joiners,
                    const PairTarget& targets);

struct DistillationRun {
  JointDistribution final_dist;
  std::string key1, key2;
  bool sbit = false;
  Transcript transcript;
};

/// The two-copy activation protocol over the product of the compact tables;
/// checkpoints "table-10", "table-11", "table-12" are recorded.
DistillationRun superactivate_pair();

/// Product of five four-party bound-information tables, one per omitted
/// party; registers "<party><copy>", Eve registers EVE1..EVE5.
JointDistribution symmetrized_five();

/// Runs the activation protocol for an arbitrary pair on the five-copy
/// distribution: copies are chosen by the omit rule and the two
/// lexicographically first common parties teleport.
DistillationRun distill_pair_from_five(const JointDistribution& d,
                                       const PairTarget& target);

struct SecrecyDistributionRun {
  JointDistribution final_dist;
  Transcript transcript;  // checkpoints "table-17", "table-18"
  std::vector<std::string> key_regs;  // the three s copies and David's bit
  bool multipartite_sbit = false;
  bool newcomer_matches_secret = false;
  bool eve_independent = false;  // I(s : Eve view) exactly zero
};

/// Extends a tripartite sbit held by A,B,C to David over the
/// bound-information table, by announcing the three parities.
SecrecyDistributionRun distribute_secret();

struct PairSbit {
  std::string party1, party2;
  std::string reg1, reg2;
  JointDistribution dist;
};

/// Perfectly correlated Eve-free key bit between two parties.
PairSbit ideal_pair_sbit(const std::string& party1, const std::string& party2);

/// One party samples a bit and one-time-pads it along a spanning tree of
/// the pair-sbit graph; every party ends up with register "KEY.<party>".
JointDistribution multipartite_from_pairwise(const std::vector<PairSbit>& pairs,
                                             Transcript* transcript = nullptr);

}  // namespace boundinfo::proto
