#include "verify.hpp"

#include "boundinfo/dist.hpp"
#include "boundinfo/measures.hpp"
#include "boundinfo/tables.hpp"
#include "boundinfo/protocols.hpp"
#include "boundinfo/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace boundinfo::verify {

using dist::JointDistribution;

namespace {

/// Exact table equality after relabeling `got`'s symbols on `eve_reg` by
/// some bijection onto `want`'s alphabet. Columns are matched by name.
bool equal_up_to_eve_bijection(const JointDistribution& got,
                               const JointDistribution& want,
                               const std::string& eve_reg) {
  std::vector<std::string> honest;
  for (const auto& r : want.registers())
    if (r.name != eve_reg) honest.push_back(r.name);
  for (const auto& n : honest)
    if (!got.has_register(n)) return false;

  auto rows = [&](const JointDistribution& d,
                  const std::vector<std::size_t>& eve_map,
                  const std::vector<std::string>& eve_alpha_out) {
    std::map<std::vector<std::string>, Rat> m;
    const auto& eve_alpha_in = d.reg(eve_reg).alphabet;
    for (const auto& [o, p] : d.table()) {
      std::vector<std::string> key;
      for (const auto& n : honest) key.push_back(d.symbol(o, n));
      const auto& e = d.symbol(o, eve_reg);
      const auto it =
          std::find(eve_alpha_in.begin(), eve_alpha_in.end(), e);
      key.push_back(
          eve_alpha_out[eve_map[it - eve_alpha_in.begin()]]);
      m[key] += p;
    }
    return m;
  };

  const auto& walpha = want.reg(eve_reg).alphabet;
  const auto& galpha = got.reg(eve_reg).alphabet;
  if (walpha.size() != galpha.size()) return false;
  std::vector<std::size_t> id(walpha.size());
  std::iota(id.begin(), id.end(), 0);
  const auto want_rows = rows(want, id, walpha);

  std::vector<std::size_t> perm = id;
  do {
    if (rows(got, perm, walpha) == want_rows) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// Marginalize a protocol snapshot onto the preimages of `expected`'s
/// registers, rename, and compare tables exactly.
bool checkpoint_matches(const JointDistribution& snap,
                        const JointDistribution& expected,
                        const std::map<std::string, std::string>& renaming) {
  std::set<std::string> keep;
  for (const auto& r : expected.registers()) {
    std::string pre = r.name;
    for (const auto& [from, to] : renaming)
      if (to == r.name) pre = from;
    keep.insert(pre);
  }
  JointDistribution m = dist::marginalize(snap, keep);
  if (!renaming.empty()) m = dist::rename(m, renaming);
  return dist::matches_marginal(m, expected);
}

struct Check {
  bool ok = true;
  std::ostringstream obs;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) obs << "; ";
      obs << what;
      ok = false;
    }
  }
  std::string observed() const { return ok ? "ok" : obs.str(); }
};

CriterionResult table_reproduction(double tol) {
  Check c;
  auto rho = quantum::smolin_state();
  auto psi = quantum::purify(rho, "EVE");
  auto bases = quantum::computational_basis(
      {{"A", 2}, {"B", 2}, {"C", 2}, {"D", 2}});
  auto eve_basis = quantum::smolin_measurement_basis(psi);
  bases.insert(bases.end(), eve_basis.begin(), eve_basis.end());
  auto measured = quantum::measure(psi, bases, {{"EVE", dist::kEve}});
  c.expect(measured.exact, "probabilities not exactly rational");
  for (const auto& [o, p] : measured.dist.table()) {
    (void)o;
    c.expect(p == Rat(1, 8), "row probability != 1/8");
  }
  c.expect(equal_up_to_eve_bijection(measured.dist, tables::smolin_table(),
                                     "EVE"),
           "measured table differs from the reference table");
  (void)tol;
  return {1, "table-reproduction", "exact match up to Eve relabeling",
          c.observed(), c.ok};
}

CriterionResult undistillability(double tol) {
  Check c;
  auto d = tables::smolin_table();
  const std::vector<std::string> eve{"EVE"};
  auto alpha = d.reg("EVE").alphabet;

  auto witness =
      measures::EveChannel::deterministic(alpha, alpha, {0, 0, 3, 3});
  c.expect(measures::intrinsic_information_upper(d, {"A", "C"}, {"B", "D"},
                                                 eve, witness)
               .exact_zero,
           "witness channel does not zero the AC:BD cut");

  const std::vector<std::pair<std::set<std::string>, std::set<std::string>>>
      cuts{{{"A", "C"}, {"B", "D"}},
           {{"A", "B"}, {"C", "D"}},
           {{"A", "D"}, {"B", "C"}}};
  measures::SearchConfig cfg;
  for (const auto& [x, y] : cuts) {
    auto r = measures::intrinsic_information_search(d, x, y, eve, cfg);
    c.expect(r.value.exact_zero, "exhaustive search missed a zero cut");
    auto ident = measures::intrinsic_information_upper(
        d, x, y, eve, measures::EveChannel::identity(alpha));
    c.expect(std::abs(ident.value - 1.0) < tol,
             "identity-channel conditional information != 1 bit");
  }
  return {2, "undistillability-certificates",
          "all cuts exactly 0; identity channel 1 bit", c.observed(), c.ok};
}

CriterionResult unlockability(double) {
  Check c;
  auto d = tables::smolin_table();

  auto r = proto::unlock(d, {"B", "D"}, {"A", "C"});
  c.expect(r.branches.size() == 2, "expected two branches");
  for (const auto& b : r.branches) {
    c.expect(b.acceptance == Rat(1, 2), "branch acceptance != 1/2");
    c.expect(b.sbit, "branch " + b.label + " is not an sbit");
  }
  c.expect(dist::table_equal(r.branches[0].dist, tables::unlock_table()),
           "equal branch differs from the reference table");

  for (const auto& [j, t] :
       std::vector<std::pair<proto::PairTarget, proto::PairTarget>>{
           {{"A", "C"}, {"B", "D"}},
           {{"A", "B"}, {"C", "D"}},
           {{"C", "D"}, {"A", "B"}}}) {
    auto rr = proto::unlock(d, j, t);
    for (const auto& b : rr.branches) {
      c.expect(b.acceptance == Rat(1, 2),
               "joiners " + j.first + j.second + ": acceptance != 1/2");
      c.expect(b.sbit, "joiners " + j.first + j.second + ": branch " +
                           b.label + " not an sbit");
    }
  }
  return {3, "unlockability", "both branches sbits for all joiner pairs",
          c.observed(), c.ok};
}

CriterionResult classical_superactivation(double) {
  Check c;
  auto run = proto::superactivate_pair();
  c.expect(checkpoint_matches(run.transcript.snapshot("table-10"),
                              tables::prob1_table(), {}),
           "two-copy product checkpoint mismatch");
  c.expect(checkpoint_matches(run.transcript.snapshot("table-11"),
                              tables::prob2_table(), {}),
           "post-first-teleport checkpoint mismatch");
  c.expect(checkpoint_matches(run.transcript.snapshot("table-12"),
                              tables::sprob3_table(), {}),
           "post-second-teleport checkpoint mismatch");
  c.expect(run.sbit, "final D/E key is not an sbit");
  const auto& final_d = run.final_dist;
  for (const auto& n : {"EVE1", "EVE2", "C1'.pad", "D'.pad", "Cdiff"}) {
    bool in_view = false;
    for (const auto& v : final_d.eve_view()) in_view |= (v == n);
    c.expect(in_view, std::string(n) + " missing from Eve's view");
  }
  c.expect(run.transcript.announcements_public_in_snapshots(),
           "an announced register is not public in a snapshot");
  return {4, "classical-superactivation",
          "checkpoints exact; final sbit under full Eve view", c.observed(),
          c.ok};
}

CriterionResult five_copy(double) {
  Check c;
  auto d = proto::symmetrized_five();
  c.expect(d.table().size() == 32768, "five-copy support size != 32768");
  const std::vector<std::string> parties{"A", "B", "C", "D", "E"};
  for (std::size_t i = 0; i < parties.size(); ++i)
    for (std::size_t j = i + 1; j < parties.size(); ++j) {
      auto run = proto::distill_pair_from_five(d, {parties[i], parties[j]});
      c.expect(run.sbit,
               "pair " + parties[i] + parties[j] + " failed to distill");
    }
  return {5, "five-copy-symmetrization", "all 10 pairs distill an exact sbit",
          c.observed(), c.ok};
}

CriterionResult quantum_superactivation(double tol) {
  Check c;
  auto out = quantum::quantum_superactivation();
  c.expect(out.checkpoint_distance < tol,
           "intermediate state deviates from the four-qubit reference");
  c.expect(out.worst_fidelity > 1.0 - tol,
           "a branch fidelity fell below 1");
  c.expect(out.branches.size() == 64, "expected 64 branches");
  return {6, "quantum-superactivation",
          "intermediate state exact; every branch fidelity 1", c.observed(),
          c.ok};
}

CriterionResult ghz_extension(double tol) {
  Check c;
  auto out = quantum::ghz_extend();
  c.expect(out.branches.size() == 16, "expected 16 branches");
  c.expect(out.worst_fidelity > 1.0 - tol, "a branch fidelity fell below 1");
  c.expect(out.uniform_sixteenth, "branch probabilities not exactly 1/16");
  bool complete = true;
  try {
    out.instrument.check_completeness(quantum::kBuildTol);
  } catch (const Error&) {
    complete = false;
  }
  c.expect(complete, "Kraus completeness violated");
  return {7, "ghz-extension", "16 branches, fidelity 1, uniform 1/16",
          c.observed(), c.ok};
}

CriterionResult secrecy_distribution(double) {
  Check c;
  auto run = proto::distribute_secret();
  const std::map<std::string, std::string> ren17{
      {"pA", "A"}, {"pB", "B"}, {"pC", "C"}};
  c.expect(checkpoint_matches(run.transcript.snapshot("table-17"),
                              tables::csec_table(), ren17),
           "parity checkpoint mismatch");
  const std::map<std::string, std::string> ren18{
      {"pA", "A"}, {"pB", "B"}, {"pC", "C"}, {"Dout", "D"}};
  c.expect(checkpoint_matches(run.transcript.snapshot("table-18"),
                              tables::csec2_table(), ren18),
           "final checkpoint mismatch");
  c.expect(run.newcomer_matches_secret,
           "David's output differs from the secret on a support row");
  c.expect(run.eve_independent, "secret not exactly independent of Eve");
  c.expect(run.multipartite_sbit, "four-party key is not an sbit");
  return {8, "secrecy-distribution",
          "checkpoints exact; four-party sbit independent of Eve",
          c.observed(), c.ok};
}

CriterionResult structural_properties(double tol) {
  Check c;
  auto d = tables::smolin_table();
  const std::vector<std::map<std::string, std::string>> swaps{
      {{"A", "B"}, {"B", "A"}, {"C", "D"}, {"D", "C"}, {"EVE", "EVE"}},
      {{"A", "C"}, {"C", "A"}, {"B", "D"}, {"D", "B"}, {"EVE", "EVE"}},
      {{"A", "D"}, {"D", "A"}, {"B", "C"}, {"C", "B"}, {"EVE", "EVE"}}};
  for (const auto& s : swaps)
    c.expect(dist::permute_check(d, d, s), "table not pair-swap invariant");

  auto rho = quantum::smolin_state();
  for (const auto& order : std::vector<std::vector<std::string>>{
           {"B", "A", "D", "C"}, {"C", "D", "A", "B"}, {"D", "C", "B", "A"}}) {
    auto perm = quantum::permute_subsystems(rho, order);
    c.expect((perm.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < tol,
             "state not invariant under a pair swap");
  }

  for (const auto& cut : std::vector<std::vector<std::string>>{
           {"A", "B"}, {"A", "C"}, {"A", "D"}}) {
    c.expect(quantum::is_ppt(rho, cut), "state not PPT across a cut");
    auto pt = quantum::partial_transpose(rho, cut);
    quantum::DensityOperator ptrho(rho.labels(), pt);
    auto ptpt = quantum::partial_transpose(ptrho, cut);
    c.expect((ptpt - rho.matrix()).cwiseAbs().maxCoeff() < quantum::kBuildTol,
             "partial transpose is not an involution");
  }
  return {9, "structural-properties",
          "pair-swap invariance; PPT cuts; PT involution", c.observed(), c.ok};
}

JointDistribution random_distribution(std::mt19937_64& rng, int eve_size) {
  // Two honest bits plus one Eve register; dyadic weights, denominator 64.
  std::vector<dist::RegisterSpec> regs{
      {"X", {"0", "1"}, "X"}, {"Y", {"0", "1"}, "Y"}};
  std::vector<std::string> eve_alpha;
  for (int i = 0; i < eve_size; ++i)
    eve_alpha.push_back("z" + std::to_string(i + 1));
  regs.push_back({"Z", eve_alpha, dist::kEve});

  const int cells = 4 * eve_size;
  std::vector<int> weights(cells, 0);
  std::uniform_int_distribution<int> cell(0, cells - 1);
  for (int i = 0; i < 64; ++i) weights[cell(rng)]++;

  std::vector<dist::Entry> entries;
  int idx = 0;
  for (int x = 0; x <= 1; ++x)
    for (int y = 0; y <= 1; ++y)
      for (int e = 0; e < eve_size; ++e, ++idx)
        if (weights[idx] > 0)
          entries.push_back({{x ? "1" : "0", y ? "1" : "0", eve_alpha[e]},
                             Rat(weights[idx], 64)});
  return dist::make_distribution(regs, entries);
}

CriterionResult measure_sanity(double tol, std::uint64_t seed) {
  Check c;
  std::mt19937_64 rng(seed);

  // 0*log0: a deterministic distribution has zero entropy.
  auto det = dist::make_distribution({{"X", {"0", "1"}, "X"}},
                               {{{"1"}, Rat(1)}});
  c.expect(measures::entropy(det, {"X"}).value == 0.0,
           "entropy of a point mass is nonzero");

  for (int trial = 0; trial < 6; ++trial) {
    const int eve_size = 2 + trial % 3;
    auto d = random_distribution(rng, eve_size);
    auto h = measures::entropy(d, {"X", "Y", "Z"});
    c.expect(h.value >= -tol, "negative entropy");
    c.expect(h.value <= std::log2(16.0 * eve_size) + tol, "entropy too large");
    auto mi = measures::conditional_mutual_information(d, {"X"}, {"Y"}, {});
    c.expect(mi.value >= -tol, "negative mutual information");
    auto cmi =
        measures::conditional_mutual_information(d, {"X"}, {"Y"}, {"Z"});
    c.expect(cmi.value >= -tol, "negative conditional mutual information");
    if (mi.exact_zero) c.expect(mi.value < tol, "exact-zero flag with value");

    if (trial < 2) {
      measures::SearchConfig det_cfg;
      auto ex = measures::intrinsic_information_search(d, {"X"}, {"Y"}, {"Z"},
                                                       det_cfg);
      measures::SearchConfig ref_cfg;
      ref_cfg.strategy = measures::SearchStrategy::kRefined;
      ref_cfg.seed = seed + trial;
      ref_cfg.restarts = 3;
      ref_cfg.eval_cap = 2000;
      auto rf = measures::intrinsic_information_search(d, {"X"}, {"Y"}, {"Z"},
                                                       ref_cfg);
      c.expect(rf.value.value <= ex.value.value + tol,
               "refined search worse than exhaustive");
      c.expect(ex.value.value <= mi.value + tol,
               "search worse than the identity channel");
    }
  }
  return {10, "measure-sanity-suite",
          "entropy/information bounds and search monotonicity", c.observed(),
          c.ok};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(double tolerance,
                                            std::uint64_t seed) {
  std::vector<CriterionResult> out;
  out.push_back(table_reproduction(tolerance));
  out.push_back(undistillability(tolerance));
  out.push_back(unlockability(tolerance));
  out.push_back(classical_superactivation(tolerance));
  out.push_back(five_copy(tolerance));
  out.push_back(quantum_superactivation(tolerance));
  out.push_back(ghz_extension(tolerance));
  out.push_back(secrecy_distribution(tolerance));
  out.push_back(structural_properties(tolerance));
  out.push_back(measure_sanity(tolerance, seed));
  return out;
}

}  // namespace boundinfo::verify
