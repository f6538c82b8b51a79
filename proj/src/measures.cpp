#include "boundinfo/measures.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace boundinfo::measures {

using dist::Outcome;
using dist::RegisterSpec;

void EveChannel::validate() const {
  if (matrix.size() != inputs.size()) {
    throw AlphabetMismatchError("channel matrix has one row per input");
  }
  for (const auto& row : matrix) {
    if (row.size() != outputs.size()) {
      throw AlphabetMismatchError("channel row length must match outputs");
    }
    Rat sum(0);
    for (const Rat& p : row) {
      if (p < Rat(0)) throw NormalizationError("negative channel entry");
      sum += p;
    }
    if (sum != Rat(1)) {
      throw NormalizationError("channel row does not sum to 1");
    }
  }
}

EveChannel EveChannel::identity(const std::vector<std::string>& alphabet) {
  EveChannel ch{alphabet, alphabet, {}};
  ch.matrix.assign(alphabet.size(), std::vector<Rat>(alphabet.size(), Rat(0)));
  for (std::size_t i = 0; i < alphabet.size(); ++i) ch.matrix[i][i] = Rat(1);
  return ch;
}

EveChannel EveChannel::deterministic(const std::vector<std::string>& inputs,
                                     const std::vector<std::string>& outputs,
                                     const std::vector<std::size_t>& map) {
  EveChannel ch{inputs, outputs, {}};
  ch.matrix.assign(inputs.size(), std::vector<Rat>(outputs.size(), Rat(0)));
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (map.size() <= i || map[i] >= outputs.size())
      throw IndexError("deterministic channel map out of range");
    ch.matrix[i][map[i]] = Rat(1);
  }
  return ch;
}

EveChannel EveChannel::constant(const std::vector<std::string>& inputs,
                                const std::string& output) {
  return deterministic(inputs, {output}, std::vector<std::size_t>(inputs.size(), 0));
}

namespace {

double entropy_of_marginal(const std::map<Outcome, Rat>& marginal) {
  double h = 0.0;
  for (const auto& [o, p] : marginal) {
    double pd = rat_to_double(p);
    if (pd > 0.0) h -= pd * std::log2(pd);
  }
  return h;
}

std::map<Outcome, Rat> project(const std::map<Outcome, Rat>& table,
                               const std::vector<std::size_t>& idx) {
  std::map<Outcome, Rat> out;
  for (const auto& [o, p] : table) {
    Outcome sub(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) sub[k] = o[idx[k]];
    out[sub] += p;
  }
  return out;
}

}  // namespace

MeasureValue entropy(const JointDistribution& d,
                     const std::set<std::string>& subset) {
  if (subset.empty()) {
    throw UnknownRegisterError("entropy of an empty register set");
  }
  JointDistribution m = marginalize(d, subset);
  double h = entropy_of_marginal(m.table());
  return {h, m.table().size() == 1};
}

MeasureValue conditional_mutual_information(const JointDistribution& d,
                                            const std::set<std::string>& x,
                                            const std::set<std::string>& y,
                                            const std::set<std::string>& z) {
  for (const auto& n : x) {
    if (y.count(n) || z.count(n)) throw OverlapError("X overlaps Y or Z");
  }
  for (const auto& n : y) {
    if (z.count(n)) throw OverlapError("Y overlaps Z");
  }
  std::set<std::string> all = x;
  all.insert(y.begin(), y.end());
  all.insert(z.begin(), z.end());
  // Project onto [X.., Y.., Z..] so index blocks are contiguous.
  std::vector<std::string> order(x.begin(), x.end());
  order.insert(order.end(), y.begin(), y.end());
  order.insert(order.end(), z.begin(), z.end());
  JointDistribution m = reorder(marginalize(d, all), order);

  std::vector<std::size_t> xz_idx, yz_idx, z_idx;
  for (std::size_t i = 0; i < x.size(); ++i) xz_idx.push_back(i);
  for (std::size_t i = 0; i < y.size(); ++i) yz_idx.push_back(x.size() + i);
  for (std::size_t i = 0; i < z.size(); ++i) {
    std::size_t zi = x.size() + y.size() + i;
    xz_idx.push_back(zi);
    yz_idx.push_back(zi);
    z_idx.push_back(zi);
  }
  auto p_xz = project(m.table(), xz_idx);
  auto p_yz = project(m.table(), yz_idx);
  auto p_z = project(m.table(), z_idx);

  // Value by the entropy formula (floating, base 2).
  double value = entropy_of_marginal(p_xz) + entropy_of_marginal(p_yz) -
                 entropy_of_marginal(m.table()) - entropy_of_marginal(p_z);

  // Exact conditional-independence certificate: for every z in the support
  // and every (x|z), (y|z) support pair, P(xyz)P(z) == P(xz)P(yz).
  std::map<Outcome, std::vector<Outcome>> x_by_z, y_by_z;
  for (const auto& [o, p] : p_xz) {
    x_by_z[Outcome(o.begin() + static_cast<long>(x.size()), o.end())]
        .push_back(Outcome(o.begin(), o.begin() + static_cast<long>(x.size())));
  }
  for (const auto& [o, p] : p_yz) {
    y_by_z[Outcome(o.begin() + static_cast<long>(y.size()), o.end())]
        .push_back(Outcome(o.begin(), o.begin() + static_cast<long>(y.size())));
  }
  bool exact = true;
  for (const auto& [zo, pz] : p_z) {
    const auto& xs = x_by_z[zo];
    const auto& ys = y_by_z[zo];
    for (const Outcome& xo : xs) {
      Outcome xzo = xo;
      xzo.insert(xzo.end(), zo.begin(), zo.end());
      Rat pxz = p_xz.at(xzo);
      for (const Outcome& yo : ys) {
        Outcome yzo = yo;
        yzo.insert(yzo.end(), zo.begin(), zo.end());
        Outcome full = xo;
        full.insert(full.end(), yo.begin(), yo.end());
        full.insert(full.end(), zo.begin(), zo.end());
        auto it = m.table().find(full);
        Rat pxyz = it == m.table().end() ? Rat(0) : it->second;
        if (pxyz * pz != pxz * p_yz.at(yzo)) {
          exact = false;
          break;
        }
      }
      if (!exact) break;
    }
    if (!exact) break;
  }
  if (exact) value = 0.0;
  return {value, exact};
}

std::string flatten_symbols(const std::vector<std::string>& symbols) {
  std::string out;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i) out += '|';
    out += symbols[i];
  }
  return out;
}

std::vector<std::string> flattened_alphabet(
    const JointDistribution& d, const std::vector<std::string>& eve_regs) {
  std::vector<std::string> alphabet{""};
  bool first = true;
  for (const auto& name : eve_regs) {
    const auto& syms = d.reg(name).alphabet;
    std::vector<std::string> next;
    next.reserve(alphabet.size() * syms.size());
    for (const auto& prefix : alphabet) {
      for (const auto& s : syms) {
        next.push_back(first ? s : prefix + "|" + s);
      }
    }
    alphabet = std::move(next);
    first = false;
  }
  return alphabet;
}

JointDistribution apply_eve_channel(const JointDistribution& d,
                                    const std::vector<std::string>& eve_regs,
                                    const EveChannel& ch,
                                    const std::string& out_name) {
  ch.validate();
  if (eve_regs.empty()) {
    throw AlphabetMismatchError("no Eve registers given");
  }
  if (flattened_alphabet(d, eve_regs) != ch.inputs) {
    throw AlphabetMismatchError(
        "channel input alphabet does not match the flattened Eve registers");
  }
  std::vector<std::size_t> eve_idx;
  for (const auto& name : eve_regs) eve_idx.push_back(d.reg_index(name));

  std::vector<RegisterSpec> registers;
  std::vector<std::size_t> keep_idx;
  for (std::size_t i = 0; i < d.registers().size(); ++i) {
    if (std::find(eve_idx.begin(), eve_idx.end(), i) == eve_idx.end()) {
      keep_idx.push_back(i);
      registers.push_back(d.registers()[i]);
    }
  }
  registers.push_back(RegisterSpec{out_name, ch.outputs, dist::kEve});

  std::map<Outcome, Rat> table;
  for (const auto& [o, p] : d.table()) {
    // Flattened input index: lexicographic in eve_regs order.
    std::size_t in = 0;
    for (std::size_t k = 0; k < eve_idx.size(); ++k) {
      in = in * d.registers()[eve_idx[k]].alphabet.size() + o[eve_idx[k]];
    }
    Outcome base(keep_idx.size());
    for (std::size_t k = 0; k < keep_idx.size(); ++k) base[k] = o[keep_idx[k]];
    for (std::size_t out = 0; out < ch.outputs.size(); ++out) {
      const Rat& t = ch.matrix[in][out];
      if (t == Rat(0)) continue;
      Outcome full = base;
      full.push_back(static_cast<std::uint8_t>(out));
      table[full] += p * t;
    }
  }
  return JointDistribution(std::move(registers), std::move(table));
}

MeasureValue intrinsic_information_upper(
    const JointDistribution& d, const std::set<std::string>& x,
    const std::set<std::string>& y, const std::vector<std::string>& eve_regs,
    const EveChannel& ch) {
  JointDistribution mapped = apply_eve_channel(d, eve_regs, ch);
  return conditional_mutual_information(mapped, x, y, {"EVEBAR"});
}

namespace {

constexpr std::int64_t kGrid = std::int64_t{1} << 16;

// Integer channel rows on the 1/2^16 grid, so the exact factorization
// products downstream stay within 64-bit rationals.
using GridChannel = std::vector<std::vector<std::int64_t>>;

EveChannel to_channel(const GridChannel& g,
                      const std::vector<std::string>& alphabet) {
  EveChannel ch{alphabet, alphabet, {}};
  ch.matrix.reserve(g.size());
  for (const auto& row : g) {
    std::vector<Rat> r;
    r.reserve(row.size());
    for (std::int64_t n : row) r.emplace_back(n, kGrid);
    ch.matrix.push_back(std::move(r));
  }
  return ch;
}

GridChannel grid_from_deterministic(const std::vector<std::size_t>& map,
                                    std::size_t m) {
  GridChannel g(m, std::vector<std::int64_t>(m, 0));
  for (std::size_t i = 0; i < m; ++i) g[i][map[i]] = kGrid;
  return g;
}

GridChannel random_grid_channel(std::size_t m, std::mt19937_64& rng) {
  GridChannel g(m, std::vector<std::int64_t>(m, 0));
  std::uniform_int_distribution<std::int64_t> draw(1, kGrid);
  for (auto& row : g) {
    std::int64_t total = 0;
    std::vector<std::int64_t> raw(m);
    for (auto& v : raw) {
      v = draw(rng);
      total += v;
    }
    std::int64_t assigned = 0;
    for (std::size_t o = 0; o < m; ++o) {
      row[o] = raw[o] * kGrid / total;
      assigned += row[o];
    }
    row[0] += kGrid - assigned;  // remainder onto the first output
  }
  return g;
}

}  // namespace

SearchResult intrinsic_information_search(
    const JointDistribution& d, const std::set<std::string>& x,
    const std::set<std::string>& y, const std::vector<std::string>& eve_regs,
    const SearchConfig& config) {
  std::vector<std::string> alphabet = flattened_alphabet(d, eve_regs);
  const std::size_t m = alphabet.size();

  double count = std::pow(static_cast<double>(m), static_cast<double>(m));
  if (count > static_cast<double>(config.budget)) {
    throw SearchBudgetError("deterministic search needs " +
                            std::to_string(count) + " channels, budget is " +
                            std::to_string(config.budget));
  }

  auto evaluate = [&](const EveChannel& ch) {
    return intrinsic_information_upper(d, x, y, eve_regs, ch);
  };

  // Exhaustive scan over all m^m deterministic maps, lexicographic order;
  // the first strict improvement wins, so ties break lexicographically.
  std::vector<std::size_t> map(m, 0), best_map(m, 0);
  MeasureValue best;
  EveChannel best_ch = EveChannel::deterministic(alphabet, alphabet, map);
  bool first = true;
  while (true) {
    EveChannel ch = EveChannel::deterministic(alphabet, alphabet, map);
    MeasureValue v = evaluate(ch);
    if (first || v.value < best.value - 1e-15 ||
        (v.exact_zero && !best.exact_zero && v.value <= best.value)) {
      best = v;
      best_ch = ch;
      best_map = map;
      first = false;
    }
    if (best.exact_zero) break;  // 0 is the global minimum of a CMI
    std::size_t k = m;
    while (k > 0 && ++map[k - 1] == m) map[--k] = 0;
    if (k == 0) break;
  }

  if (config.strategy == SearchStrategy::kDeterministicExhaustive ||
      best.exact_zero) {
    return {best, best_ch};
  }

  // Refined: coordinate-wise simplex descent with multiplicative step decay,
  // from the best deterministic map and from seeded random starts.
  std::mt19937_64 rng(config.seed);
  std::vector<GridChannel> starts{grid_from_deterministic(best_map, m)};
  for (int r = 0; r < config.restarts; ++r) {
    starts.push_back(random_grid_channel(m, rng));
  }
  for (const GridChannel& start : starts) {
    GridChannel cur = start;
    MeasureValue cur_v = evaluate(to_channel(cur, alphabet));
    int evals = 1;
    std::int64_t step = kGrid / 4;
    while (step > 0 && evals < config.eval_cap) {
      bool improved = false;
      for (std::size_t i = 0; i < m && evals < config.eval_cap; ++i) {
        for (std::size_t from = 0; from < m; ++from) {
          for (std::size_t to = 0; to < m; ++to) {
            if (from == to || cur[i][from] == 0) continue;
            if (evals >= config.eval_cap) break;
            std::int64_t delta = std::min(step, cur[i][from]);
            cur[i][from] -= delta;
            cur[i][to] += delta;
            MeasureValue v = evaluate(to_channel(cur, alphabet));
            ++evals;
            if (v.value < cur_v.value - 1e-15) {
              cur_v = v;
              improved = true;
            } else {
              cur[i][from] += delta;
              cur[i][to] -= delta;
            }
          }
        }
      }
      if (!improved) step /= 2;
    }
    if (cur_v.value < best.value - 1e-15) {
      best = cur_v;
      best_ch = to_channel(cur, alphabet);
    }
  }
  return {best, best_ch};
}

}  // namespace boundinfo::measures
