#include "boundinfo/dist.hpp"

#include <algorithm>
#include <unordered_set>

namespace boundinfo::dist {

namespace {

void validate_registers(const std::vector<RegisterSpec>& registers) {
  std::unordered_set<std::string> seen;
  for (const auto& r : registers) {
    if (r.alphabet.empty()) {
      throw AlphabetError("register '" + r.name + "' has empty alphabet");
    }
    if (!seen.insert(r.name).second) {
      throw NameCollisionError("duplicate register name '" + r.name + "'");
    }
  }
}

std::uint8_t symbol_index(const RegisterSpec& r, const std::string& sym) {
  auto it = std::find(r.alphabet.begin(), r.alphabet.end(), sym);
  if (it == r.alphabet.end()) {
    throw AlphabetError("symbol '" + sym + "' not in alphabet of register '" +
                        r.name + "'");
  }
  return static_cast<std::uint8_t>(it - r.alphabet.begin());
}

}  // namespace

JointDistribution::JointDistribution(std::vector<RegisterSpec> registers,
                                     std::map<Outcome, Rat> table)
    : registers_(std::move(registers)), table_(std::move(table)) {
  validate_registers(registers_);
  Rat sum(0);
  for (auto it = table_.begin(); it != table_.end();) {
    const auto& [o, p] = *it;
    if (o.size() != registers_.size()) {
      throw AlphabetError("outcome arity does not match register count");
    }
    for (std::size_t i = 0; i < o.size(); ++i) {
      if (o[i] >= registers_[i].alphabet.size()) {
        throw AlphabetError("symbol index out of range for register '" +
                            registers_[i].name + "'");
      }
    }
    if (p < Rat(0)) throw NormalizationError("negative probability");
    sum += p;
    if (p == Rat(0)) {
      it = table_.erase(it);  // zero rows are implicit
    } else {
      ++it;
    }
  }
  if (sum != Rat(1)) {
    throw NormalizationError("probabilities sum to " + rat_to_string(sum) +
                             ", expected 1/1");
  }
}

std::size_t JointDistribution::reg_index(const std::string& name) const {
  for (std::size_t i = 0; i < registers_.size(); ++i) {
    if (registers_[i].name == name) return i;
  }
  throw UnknownRegisterError("unknown register '" + name + "'");
}

bool JointDistribution::has_register(const std::string& name) const {
  return std::any_of(registers_.begin(), registers_.end(),
                     [&](const RegisterSpec& r) { return r.name == name; });
}

const RegisterSpec& JointDistribution::reg(const std::string& name) const {
  return registers_[reg_index(name)];
}

const std::string& JointDistribution::symbol(const Outcome& o,
                                             const std::string& name) const {
  std::size_t i = reg_index(name);
  return registers_[i].alphabet[o[i]];
}

Rat JointDistribution::probability(const Outcome& o) const {
  auto it = table_.find(o);
  return it == table_.end() ? Rat(0) : it->second;
}

std::vector<std::string> JointDistribution::eve_view() const {
  std::vector<std::string> names;
  for (const auto& r : registers_) {
    if (!r.is_honest()) names.push_back(r.name);
  }
  return names;
}

std::vector<std::string> JointDistribution::register_names() const {
  std::vector<std::string> names;
  names.reserve(registers_.size());
  for (const auto& r : registers_) names.push_back(r.name);
  return names;
}

JointDistribution make_distribution(const std::vector<RegisterSpec>& registers,
                                    const std::vector<Entry>& entries) {
  validate_registers(registers);
  std::map<Outcome, Rat> table;
  for (const auto& e : entries) {
    if (e.outcome.size() != registers.size()) {
      throw AlphabetError("entry arity does not match register count");
    }
    Outcome o(registers.size());
    for (std::size_t i = 0; i < registers.size(); ++i) {
      o[i] = symbol_index(registers[i], e.outcome[i]);
    }
    auto [it, inserted] = table.emplace(o, e.p);
    if (!inserted) throw NormalizationError("duplicate outcome in entries");
  }
  return JointDistribution(registers, std::move(table));
}

JointDistribution product(const JointDistribution& d1,
                          const JointDistribution& d2) {
  for (const auto& r : d2.registers()) {
    if (d1.has_register(r.name)) {
      throw NameCollisionError("register '" + r.name +
                               "' present in both factors");
    }
  }
  std::vector<RegisterSpec> registers = d1.registers();
  registers.insert(registers.end(), d2.registers().begin(),
                   d2.registers().end());
  std::map<Outcome, Rat> table;
  for (const auto& [o1, p1] : d1.table()) {
    for (const auto& [o2, p2] : d2.table()) {
      Outcome o = o1;
      o.insert(o.end(), o2.begin(), o2.end());
      table.emplace(std::move(o), p1 * p2);
    }
  }
  return JointDistribution(std::move(registers), std::move(table));
}

JointDistribution marginalize(const JointDistribution& d,
                              const std::set<std::string>& keep) {
  std::vector<std::size_t> keep_idx;
  std::vector<RegisterSpec> registers;
  for (const auto& name : keep) {
    if (!d.has_register(name)) {
      throw UnknownRegisterError("unknown register '" + name + "'");
    }
  }
  for (std::size_t i = 0; i < d.registers().size(); ++i) {
    if (keep.count(d.registers()[i].name)) {
      keep_idx.push_back(i);
      registers.push_back(d.registers()[i]);
    }
  }
  std::map<Outcome, Rat> table;
  for (const auto& [o, p] : d.table()) {
    Outcome sub(keep_idx.size());
    for (std::size_t k = 0; k < keep_idx.size(); ++k) sub[k] = o[keep_idx[k]];
    table[sub] += p;
  }
  return JointDistribution(std::move(registers), std::move(table));
}

PostSelectResult post_select(const JointDistribution& d,
                             const Predicate& predicate) {
  Rat acc(0);
  std::map<Outcome, Rat> table;
  for (const auto& [o, p] : d.table()) {
    if (predicate(OutcomeRef(d, o))) {
      acc += p;
      table.emplace(o, p);
    }
  }
  if (acc == Rat(0)) {
    throw ZeroProbabilityError("post-selection predicate never holds");
  }
  for (auto& [o, p] : table) p /= acc;
  return {JointDistribution(d.registers(), std::move(table)), acc};
}

JointDistribution apply_local_function(
    const JointDistribution& d, const std::string& owner,
    const std::vector<std::string>& inputs, const LocalFunction& f,
    const std::string& out, const std::vector<std::string>& out_alphabet) {
  if (d.has_register(out)) {
    throw NameCollisionError("output register '" + out + "' already exists");
  }
  std::vector<std::size_t> in_idx;
  for (const auto& name : inputs) {
    const RegisterSpec& r = d.reg(name);
    if (!r.is_public() && r.owner != owner) {
      throw OwnershipError("register '" + name + "' is private to '" +
                           r.owner + "', not accessible to '" + owner + "'");
    }
    in_idx.push_back(d.reg_index(name));
  }
  RegisterSpec out_reg{out, out_alphabet, owner};
  std::vector<RegisterSpec> registers = d.registers();
  registers.push_back(out_reg);
  std::map<Outcome, Rat> table;
  std::vector<std::string> args(inputs.size());
  for (const auto& [o, p] : d.table()) {
    for (std::size_t k = 0; k < in_idx.size(); ++k) {
      args[k] = d.registers()[in_idx[k]].alphabet[o[in_idx[k]]];
    }
    Outcome extended = o;
    extended.push_back(symbol_index(out_reg, f(args)));
    table[extended] += p;
  }
  return JointDistribution(std::move(registers), std::move(table));
}

JointDistribution announce(const JointDistribution& d,
                           const std::string& register_name) {
  std::vector<RegisterSpec> registers = d.registers();
  registers[d.reg_index(register_name)].owner = kPublic;
  return JointDistribution(std::move(registers), d.table());
}

JointDistribution reorder(const JointDistribution& d,
                          const std::vector<std::string>& order) {
  if (order.size() != d.registers().size()) {
    throw UnknownRegisterError("reorder must list every register");
  }
  std::vector<std::size_t> idx;
  std::vector<RegisterSpec> registers;
  for (const auto& name : order) {
    idx.push_back(d.reg_index(name));
    registers.push_back(d.registers()[idx.back()]);
  }
  std::map<Outcome, Rat> table;
  for (const auto& [o, p] : d.table()) {
    Outcome reord(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) reord[k] = o[idx[k]];
    table.emplace(std::move(reord), p);
  }
  return JointDistribution(std::move(registers), std::move(table));
}

JointDistribution rename(const JointDistribution& d,
                         const std::map<std::string, std::string>& renaming) {
  std::vector<RegisterSpec> registers = d.registers();
  for (auto& r : registers) {
    auto it = renaming.find(r.name);
    if (it != renaming.end()) r.name = it->second;
  }
  return JointDistribution(std::move(registers), d.table());
}

JointDistribution reown(const JointDistribution& d,
                        const std::string& register_name,
                        const std::string& new_owner) {
  std::vector<RegisterSpec> registers = d.registers();
  registers[d.reg_index(register_name)].owner = new_owner;
  return JointDistribution(std::move(registers), d.table());
}

bool table_equal(const JointDistribution& d1, const JointDistribution& d2) {
  if (d1.registers().size() != d2.registers().size()) return false;
  for (std::size_t i = 0; i < d1.registers().size(); ++i) {
    if (d1.registers()[i].name != d2.registers()[i].name) return false;
    if (d1.registers()[i].alphabet != d2.registers()[i].alphabet) return false;
  }
  return d1.table() == d2.table();
}

bool permute_check(const JointDistribution& d1, const JointDistribution& d2,
                   const std::map<std::string, std::string>& bijection) {
  JointDistribution renamed = rename(d1, bijection);
  if (renamed.registers().size() != d2.registers().size()) return false;
  for (const auto& r : d2.registers()) {
    if (!renamed.has_register(r.name)) return false;
    if (renamed.reg(r.name).alphabet != r.alphabet) return false;
  }
  return table_equal(reorder(renamed, d2.register_names()), d2);
}

bool matches_marginal(const JointDistribution& d,
                      const JointDistribution& expected) {
  std::set<std::string> keep;
  for (const auto& r : expected.registers()) {
    if (!d.has_register(r.name)) return false;
    keep.insert(r.name);
  }
  JointDistribution m = marginalize(d, keep);
  return table_equal(reorder(m, expected.register_names()), expected);
}

namespace {

// Exact check that the honest marginal is the all-equal uniform bit and that
// the joint with Eve's view factorizes exactly.
bool secret_correlation_check(const JointDistribution& d,
                              const std::vector<std::string>& party_regs) {
  for (const auto& name : party_regs) {
    const RegisterSpec& r = d.reg(name);
    if (!r.is_honest() || r.alphabet.size() != 2) return false;
  }
  std::set<std::string> keep(party_regs.begin(), party_regs.end());
  std::vector<std::string> view = d.eve_view();
  for (const auto& name : view) keep.insert(name);
  JointDistribution m = reorder(
      marginalize(d, keep),
      [&] {
        std::vector<std::string> order = party_regs;
        order.insert(order.end(), view.begin(), view.end());
        return order;
      }());

  const std::size_t n = party_regs.size();
  // Eve-view marginal over the trailing registers.
  std::map<Outcome, Rat> eve_marginal;
  for (const auto& [o, p] : m.table()) {
    eve_marginal[Outcome(o.begin() + n, o.end())] += p;
  }
  // Honest marginal must be delta_{all equal}/2.
  std::map<Outcome, Rat> honest_marginal;
  for (const auto& [o, p] : m.table()) {
    honest_marginal[Outcome(o.begin(), o.begin() + n)] += p;
  }
  Outcome zeros(n, 0), ones(n, 1);
  if (honest_marginal.size() != 2) return false;
  if (honest_marginal[zeros] != Rat(1, 2)) return false;
  if (honest_marginal[ones] != Rat(1, 2)) return false;
  // Exact factorization against every (honest, eve-view) combination.
  for (const auto& [e, pe] : eve_marginal) {
    for (const Outcome& h : {zeros, ones}) {
      Outcome full = h;
      full.insert(full.end(), e.begin(), e.end());
      if (m.probability(full) != Rat(1, 2) * pe) return false;
    }
    // Any other honest pattern paired with this eve outcome breaks delta form
    // and would already have failed the honest-marginal check above.
  }
  return true;
}

}  // namespace

bool is_sbit(const JointDistribution& d, const std::string& x,
             const std::string& y) {
  return secret_correlation_check(d, {x, y});
}

bool is_multipartite_sbit(const JointDistribution& d,
                          const std::vector<std::string>& party_regs) {
  if (party_regs.empty()) return false;
  return secret_correlation_check(d, party_regs);
}

}  // namespace boundinfo::dist
