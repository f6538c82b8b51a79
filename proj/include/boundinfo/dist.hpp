#pragma once

#include "boundinfo/errors.hpp"
#include "boundinfo/rational.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace boundinfo::dist {

// Reserved owner labels; anything else names an honest party (possibly a
// composite like "B+D" after two parties join).
inline constexpr const char* kEve = "eve";
inline constexpr const char* kPublic = "public";

struct RegisterSpec {
  std::string name;
  std::vector<std::string> alphabet;  // ordered, non-empty
  std::string owner;

  bool is_eve() const { return owner == kEve; }
  bool is_public() const { return owner == kPublic; }
  bool is_honest() const { return !is_eve() && !is_public(); }
};

/// One symbol index per register, in register order.
using Outcome = std::vector<std::uint8_t>;

/// Multipartite probability distribution over named finite registers,
/// with an exact-rational table. Immutable after construction.
class JointDistribution {
 public:
  JointDistribution(std::vector<RegisterSpec> registers,
                    std::map<Outcome, Rat> table);

  const std::vector<RegisterSpec>& registers() const { return registers_; }
  const std::map<Outcome, Rat>& table() const { return table_; }

  std::size_t reg_index(const std::string& name) const;
  bool has_register(const std::string& name) const;
  const RegisterSpec& reg(const std::string& name) const;

  /// Symbol string of register `name` in outcome `o`.
  const std::string& symbol(const Outcome& o, const std::string& name) const;

  Rat probability(const Outcome& o) const;

  /// Names of the registers Eve can see: eve-owned plus public.
  std::vector<std::string> eve_view() const;

  std::vector<std::string> register_names() const;

 private:
  std::vector<RegisterSpec> registers_;
  std::map<Outcome, Rat> table_;
};

/// Read access to one outcome row by register name.
class OutcomeRef {
 public:
  OutcomeRef(const JointDistribution& d, const Outcome& o) : d_(d), o_(o) {}
  const std::string& operator[](const std::string& name) const {
    return d_.symbol(o_, name);
  }

 private:
  const JointDistribution& d_;
  const Outcome& o_;
};

using Predicate = std::function<bool(const OutcomeRef&)>;
using LocalFunction =
    std::function<std::string(const std::vector<std::string>&)>;

/// Entry given by symbol strings (in register order) and a probability.
struct Entry {
  std::vector<std::string> outcome;
  Rat p;
};

JointDistribution make_distribution(const std::vector<RegisterSpec>& registers,
                                    const std::vector<Entry>& entries);

JointDistribution product(const JointDistribution& d1,
                          const JointDistribution& d2);

JointDistribution marginalize(const JointDistribution& d,
                              const std::set<std::string>& keep);

struct PostSelectResult {
  JointDistribution dist;
  Rat acceptance;
};
PostSelectResult post_select(const JointDistribution& d,
                             const Predicate& predicate);

/// Appends a register `out` computed per outcome from `inputs`; the acting
/// `owner` must own every non-public input. Input registers are retained.
JointDistribution apply_local_function(const JointDistribution& d,
                                       const std::string& owner,
                                       const std::vector<std::string>& inputs,
                                       const LocalFunction& f,
                                       const std::string& out,
                                       const std::vector<std::string>& out_alphabet);

/// Makes `register_name` public: from now on it is part of Eve's view.
JointDistribution announce(const JointDistribution& d,
                           const std::string& register_name);

/// True iff d1 renamed through `bijection` has exactly the table of d2.
/// Owners are not compared; alphabets and probabilities are.
bool permute_check(const JointDistribution& d1, const JointDistribution& d2,
                   const std::map<std::string, std::string>& bijection);

/// Perfectly correlated uniform bit between honest X and Y, exactly
/// independent of Eve's view (eve-owned plus public registers).
bool is_sbit(const JointDistribution& d, const std::string& x,
             const std::string& y);

/// N-party all-equal uniform bit, exactly independent of Eve's view.
bool is_multipartite_sbit(const JointDistribution& d,
                          const std::vector<std::string>& party_regs);

// --- utilities shared by the protocol drivers -------------------------------

/// Columns permuted into the given order (a bijection on register names).
JointDistribution reorder(const JointDistribution& d,
                          const std::vector<std::string>& order);

/// Registers renamed; names absent from the map are kept.
JointDistribution rename(const JointDistribution& d,
                         const std::map<std::string, std::string>& renaming);

/// Register re-owned (used for party joining and composite labels).
JointDistribution reown(const JointDistribution& d,
                        const std::string& register_name,
                        const std::string& new_owner);

/// Exact equality of register names, alphabets and tables (owners ignored).
bool table_equal(const JointDistribution& d1, const JointDistribution& d2);

/// Marginalizes d onto exactly the registers of `expected` (in that order)
/// and compares tables exactly. Owners are ignored.
bool matches_marginal(const JointDistribution& d,
                      const JointDistribution& expected);

}  // namespace boundinfo::dist
