#pragma once

#include "boundinfo/dist.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace boundinfo::measures {

using dist::JointDistribution;

/// Entropic quantity in bits. `exact_zero` is set only when the underlying
/// rational factorization test certifies the value as exactly zero.
struct MeasureValue {
  double value = 0.0;
  bool exact_zero = false;
};

/// Stochastic map on Eve's alphabet: matrix[i][o] = P(output o | input i),
/// every row an exact-rational distribution over the outputs.
struct EveChannel {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<std::vector<Rat>> matrix;

  void validate() const;

  static EveChannel identity(const std::vector<std::string>& alphabet);
  /// map[i] = index of the output symbol input i is sent to.
  static EveChannel deterministic(const std::vector<std::string>& inputs,
                                  const std::vector<std::string>& outputs,
                                  const std::vector<std::size_t>& map);
  static EveChannel constant(const std::vector<std::string>& inputs,
                             const std::string& output);
};

/// Shannon entropy (base 2) of the marginal on `subset`; 0*log0 = 0.
MeasureValue entropy(const JointDistribution& d,
                     const std::set<std::string>& subset);

/// I(X:Y|Z) = H(XZ) + H(YZ) - H(XYZ) - H(Z). Z may be empty (then this is
/// the mutual information). Exact-zero certified by the rational conditional
/// factorization P(xyz)P(z) = P(xz)P(yz) on every outcome combination.
MeasureValue conditional_mutual_information(const JointDistribution& d,
                                            const std::set<std::string>& x,
                                            const std::set<std::string>& y,
                                            const std::set<std::string>& z);

/// Composite symbol used when flattening several Eve registers to one
/// product alphabet, in the given register order.
std::string flatten_symbols(const std::vector<std::string>& symbols);

/// Product alphabet of the named registers, lexicographic in register order.
std::vector<std::string> flattened_alphabet(
    const JointDistribution& d, const std::vector<std::string>& eve_regs);

/// Replaces the (flattened) Eve registers by one eve-owned output register
/// carrying ch's output alphabet: P(x, o) = sum_e P(x, e) * ch(o|e).
JointDistribution apply_eve_channel(const JointDistribution& d,
                                    const std::vector<std::string>& eve_regs,
                                    const EveChannel& ch,
                                    const std::string& out_name = "EVEBAR");

/// I(X:Y|Ebar) for the given channel: a certified upper bound on the
/// intrinsic information, hence on the secret-key rate.
MeasureValue intrinsic_information_upper(const JointDistribution& d,
                                         const std::set<std::string>& x,
                                         const std::set<std::string>& y,
                                         const std::vector<std::string>& eve_regs,
                                         const EveChannel& ch);

enum class SearchStrategy { kDeterministicExhaustive, kRefined };

struct SearchConfig {
  SearchStrategy strategy = SearchStrategy::kDeterministicExhaustive;
  std::uint64_t budget = 1'000'000;  // cap on exhaustive channel count
  int restarts = 10;                 // random starts for the refinement
  int eval_cap = 10'000;             // objective evaluations per refinement
  std::uint64_t seed = 0;
};

struct SearchResult {
  MeasureValue value;
  EveChannel witness;
};

/// Minimizes I(X:Y|Ebar) over Eve's channels with output alphabet capped at
/// the input alphabet. "deterministic-exhaustive" scans all m^m maps in
/// lexicographic order (first minimum wins); "refined" additionally runs a
/// coordinate-wise simplex descent from the best deterministic channel and
/// from seeded random stochastic starts. An upper-bound procedure, not a
/// proof of global minimality.
SearchResult intrinsic_information_search(const JointDistribution& d,
                                          const std::set<std::string>& x,
                                          const std::set<std::string>& y,
                                          const std::vector<std::string>& eve_regs,
                                          const SearchConfig& config = {});

}  // namespace boundinfo::measures
