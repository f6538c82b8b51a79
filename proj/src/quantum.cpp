#include "boundinfo/quantum.hpp"

#include <algorithm>
#include <numeric>

namespace boundinfo::quantum {

namespace {

using Cplx = std::complex<double>;

const Cplx kOne{1.0, 0.0};

// Index arithmetic over labeled tensor legs; first label most significant.
struct Indexer {
  std::vector<int> dims;
  std::vector<long> strides;
  long total = 1;

  explicit Indexer(const std::vector<Subsystem>& labels) {
    for (const auto& l : labels) dims.push_back(l.dim);
    strides.assign(dims.size(), 1);
    for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i) {
      strides[i] = strides[i + 1] * dims[i + 1];
    }
    for (int d : dims) total *= d;
  }

  void decompose(long idx, std::vector<int>& digits) const {
    digits.resize(dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i) {
      digits[i] = static_cast<int>(idx / strides[i]) % dims[i];
    }
  }

  long compose(const std::vector<int>& digits) const {
    long idx = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) idx += digits[i] * strides[i];
    return idx;
  }
};

std::size_t find_label(const std::vector<Subsystem>& labels,
                       const std::string& name) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].name == name) return i;
  }
  throw LabelError("unknown subsystem '" + name + "'");
}

// Full-space matrix of `op` acting on `targets` (identity elsewhere).
Mat embed(const std::vector<Subsystem>& labels, const Mat& op,
          const std::vector<std::string>& targets) {
  Indexer ix(labels);
  std::vector<std::size_t> t_idx;
  long d_op = 1;
  for (const auto& name : targets) {
    t_idx.push_back(find_label(labels, name));
    d_op *= labels[t_idx.back()].dim;
  }
  if (op.rows() != d_op || op.cols() != d_op) {
    throw LabelError("operator dimension does not match targets");
  }
  Mat full = Mat::Zero(ix.total, ix.total);
  std::vector<int> digits;
  for (long base = 0; base < ix.total; ++base) {
    ix.decompose(base, digits);
    // Treat `base` as fixing the non-target digits; visit each such class
    // once (when all target digits are zero).
    bool canonical = true;
    for (std::size_t k : t_idx) {
      if (digits[k] != 0) {
        canonical = false;
        break;
      }
    }
    if (!canonical) continue;
    for (long tr = 0; tr < d_op; ++tr) {
      std::vector<int> row_digits = digits;
      long rem = tr;
      for (auto it = t_idx.rbegin(); it != t_idx.rend(); ++it) {
        row_digits[*it] = static_cast<int>(rem % labels[*it].dim);
        rem /= labels[*it].dim;
      }
      long row = ix.compose(row_digits);
      for (long tc = 0; tc < d_op; ++tc) {
        if (op(tr, tc) == Cplx{0.0, 0.0}) continue;
        std::vector<int> col_digits = digits;
        rem = tc;
        for (auto it = t_idx.rbegin(); it != t_idx.rend(); ++it) {
          col_digits[*it] = static_cast<int>(rem % labels[*it].dim);
          rem /= labels[*it].dim;
        }
        full(row, ix.compose(col_digits)) = op(tr, tc);
      }
    }
  }
  return full;
}

Mat pauli_x() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Mat pauli_z() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Vec bell_vector(int i) {
  Vec v = Vec::Zero(4);
  const double s = 1.0 / std::sqrt(2.0);
  switch (i) {
    case 1: v(0) = s; v(3) = s; break;
    case 2: v(0) = s; v(3) = -s; break;
    case 3: v(1) = s; v(2) = s; break;
    case 4: v(1) = s; v(2) = -s; break;
    default: throw IndexError("Bell index must be in 1..4");
  }
  return v;
}

void check_labels(const std::vector<Subsystem>& labels) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].dim < 1) throw LabelError("subsystem dimension must be >= 1");
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      if (labels[i].name == labels[j].name) {
        throw LabelError("duplicate subsystem name '" + labels[i].name + "'");
      }
    }
  }
}

}  // namespace

StateVector::StateVector(std::vector<Subsystem> labels, Vec amplitudes)
    : labels_(std::move(labels)), amps_(std::move(amplitudes)) {
  check_labels(labels_);
  long d = 1;
  for (const auto& l : labels_) d *= l.dim;
  if (amps_.size() != d) throw LabelError("amplitude vector has wrong length");
  if (std::abs(amps_.squaredNorm() - 1.0) > kBuildTol) {
    throw LabelError("state vector is not normalized");
  }
}

std::size_t StateVector::label_index(const std::string& name) const {
  return find_label(labels_, name);
}

DensityOperator::DensityOperator(std::vector<Subsystem> labels, Mat matrix)
    : labels_(std::move(labels)), mat_(std::move(matrix)) {
  check_labels(labels_);
  long d = 1;
  for (const auto& l : labels_) d *= l.dim;
  if (mat_.rows() != d || mat_.cols() != d) {
    throw LabelError("density matrix has wrong dimension");
  }
  if ((mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() > kBuildTol) {
    throw LabelError("density matrix is not Hermitian");
  }
  if (std::abs(mat_.trace().real() - 1.0) > kBuildTol) {
    throw LabelError("density matrix does not have unit trace");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(mat_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kAssertTol) {
    throw LabelError("density matrix has a negative eigenvalue");
  }
}

DensityOperator DensityOperator::from_pure(const StateVector& psi) {
  return DensityOperator(psi.labels(),
                         psi.amplitudes() * psi.amplitudes().adjoint());
}

std::size_t DensityOperator::label_index(const std::string& name) const {
  return find_label(labels_, name);
}

void KrausChannel::check_completeness(double tol) const {
  if (operators.empty()) throw LabelError("empty Kraus channel");
  long din = operators.front().cols();
  Mat sum = Mat::Zero(din, din);
  for (const Mat& k : operators) {
    if (k.cols() != din) throw LabelError("Kraus input dimensions differ");
    sum += k.adjoint() * k;
  }
  if ((sum - Mat::Identity(din, din)).cwiseAbs().maxCoeff() > tol) {
    throw LabelError("Kraus operators do not satisfy the completeness relation");
  }
}

StateVector bell_state(int i, const std::string& q1, const std::string& q2) {
  return StateVector({{q1, 2}, {q2, 2}}, bell_vector(i));
}

DensityOperator smolin_like(const std::string& l1, const std::string& l2,
                            const std::string& l3, const std::string& l4) {
  Mat m = Mat::Zero(16, 16);
  for (int i = 1; i <= 4; ++i) {
    Vec v = bell_vector(i);
    Mat proj = v * v.adjoint();
    Mat term = Mat::Zero(16, 16);
    for (int r1 = 0; r1 < 4; ++r1) {
      for (int c1 = 0; c1 < 4; ++c1) {
        for (int r2 = 0; r2 < 4; ++r2) {
          for (int c2 = 0; c2 < 4; ++c2) {
            term(r1 * 4 + r2, c1 * 4 + c2) = proj(r1, c1) * proj(r2, c2);
          }
        }
      }
    }
    m += 0.25 * term;
  }
  return DensityOperator({{l1, 2}, {l2, 2}, {l3, 2}, {l4, 2}}, m);
}

DensityOperator smolin_state() { return smolin_like("A", "B", "C", "D"); }

StateVector ghz_state(const std::vector<std::string>& qubits) {
  long d = 1L << qubits.size();
  Vec v = Vec::Zero(d);
  v(0) = 1.0 / std::sqrt(2.0);
  v(d - 1) = 1.0 / std::sqrt(2.0);
  std::vector<Subsystem> labels;
  for (const auto& q : qubits) labels.push_back({q, 2});
  return StateVector(std::move(labels), std::move(v));
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  std::vector<Subsystem> labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  long da = a.dim(), db = b.dim();
  Mat m(da * db, da * db);
  for (long r1 = 0; r1 < da; ++r1) {
    for (long c1 = 0; c1 < da; ++c1) {
      m.block(r1 * db, c1 * db, db, db) = a.matrix()(r1, c1) * b.matrix();
    }
  }
  return DensityOperator(std::move(labels), std::move(m));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  std::vector<Subsystem> labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  long da = a.dim(), db = b.dim();
  Vec v(da * db);
  for (long i = 0; i < da; ++i) {
    v.segment(i * db, db) = a.amplitudes()(i) * b.amplitudes();
  }
  return StateVector(std::move(labels), std::move(v));
}

DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<std::string>& trace_out) {
  Indexer ix(rho.labels());
  std::vector<std::size_t> out_idx;
  for (const auto& name : trace_out) {
    out_idx.push_back(find_label(rho.labels(), name));
  }
  std::vector<Subsystem> keep;
  std::vector<std::size_t> keep_idx;
  for (std::size_t i = 0; i < rho.labels().size(); ++i) {
    if (std::find(out_idx.begin(), out_idx.end(), i) == out_idx.end()) {
      keep_idx.push_back(i);
      keep.push_back(rho.labels()[i]);
    }
  }
  Indexer kx(keep);
  long d_out = 1;
  for (std::size_t i : out_idx) d_out *= rho.labels()[i].dim;
  Mat m = Mat::Zero(kx.total, kx.total);
  std::vector<int> rd, cd, full_r(rho.labels().size()),
      full_c(rho.labels().size());
  for (long rk = 0; rk < kx.total; ++rk) {
    kx.decompose(rk, rd);
    for (long ck = 0; ck < kx.total; ++ck) {
      kx.decompose(ck, cd);
      Cplx sum{0.0, 0.0};
      for (long t = 0; t < d_out; ++t) {
        long rem = t;
        for (auto it = out_idx.rbegin(); it != out_idx.rend(); ++it) {
          full_r[*it] = full_c[*it] =
              static_cast<int>(rem % rho.labels()[*it].dim);
          rem /= rho.labels()[*it].dim;
        }
        for (std::size_t k = 0; k < keep_idx.size(); ++k) {
          full_r[keep_idx[k]] = rd[k];
          full_c[keep_idx[k]] = cd[k];
        }
        sum += rho.matrix()(ix.compose(full_r), ix.compose(full_c));
      }
      m(rk, ck) = sum;
    }
  }
  return DensityOperator(std::move(keep), std::move(m));
}

Mat partial_transpose(const DensityOperator& rho,
                      const std::vector<std::string>& side) {
  Indexer ix(rho.labels());
  std::vector<std::size_t> side_idx;
  for (const auto& name : side) side_idx.push_back(find_label(rho.labels(), name));
  Mat m(ix.total, ix.total);
  std::vector<int> rd, cd;
  for (long r = 0; r < ix.total; ++r) {
    ix.decompose(r, rd);
    for (long c = 0; c < ix.total; ++c) {
      ix.decompose(c, cd);
      std::vector<int> rr = rd, cc = cd;
      for (std::size_t i : side_idx) std::swap(rr[i], cc[i]);
      m(ix.compose(rr), ix.compose(cc)) = rho.matrix()(r, c);
    }
  }
  return m;
}

double min_partial_transpose_eigenvalue(const DensityOperator& rho,
                                        const std::vector<std::string>& side) {
  Eigen::SelfAdjointEigenSolver<Mat> es(partial_transpose(rho, side),
                                        Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool is_ppt(const DensityOperator& rho, const std::vector<std::string>& side) {
  return min_partial_transpose_eigenvalue(rho, side) >= -kAssertTol;
}

StateVector purify(const DensityOperator& rho, const std::string& eve_label) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho.matrix());
  const auto& evals = es.eigenvalues();
  int rank = 0;
  for (long i = 0; i < evals.size(); ++i) {
    double l = evals(i);
    if (l > kBuildTol && l < kAssertTol) {
      throw NumericalRankError("eigenvalue " + std::to_string(l) +
                               " is ambiguous at the rank threshold");
    }
    if (l >= kAssertTol) ++rank;
  }
  std::vector<Subsystem> labels = rho.labels();
  labels.push_back({eve_label, rank});
  Vec psi = Vec::Zero(rho.dim() * rank);
  // Descending eigenvalue order so ancilla index 0 is the leading branch.
  int k = 0;
  for (long i = evals.size() - 1; i >= 0; --i) {
    if (evals(i) < kAssertTol) continue;
    double w = std::sqrt(evals(i));
    for (long r = 0; r < rho.dim(); ++r) {
      psi(r * rank + k) = w * es.eigenvectors()(r, i);
    }
    ++k;
  }
  return StateVector(std::move(labels), std::move(psi));
}

DensityOperator apply_unitary(const DensityOperator& rho, const Mat& u,
                              const std::vector<std::string>& targets) {
  Mat full = embed(rho.labels(), u, targets);
  return DensityOperator(rho.labels(), full * rho.matrix() * full.adjoint());
}

DensityOperator permute_subsystems(const DensityOperator& rho,
                                   const std::vector<std::string>& order) {
  if (order.size() != rho.labels().size()) {
    throw LabelError("permutation must list every subsystem");
  }
  std::vector<std::size_t> src;
  std::vector<Subsystem> labels;
  for (const auto& name : order) {
    src.push_back(find_label(rho.labels(), name));
    labels.push_back(rho.labels()[src.back()]);
  }
  Indexer old_ix(rho.labels());
  Indexer new_ix(labels);
  Mat m(new_ix.total, new_ix.total);
  std::vector<int> rd, cd, nr(order.size()), nc(order.size());
  for (long r = 0; r < old_ix.total; ++r) {
    old_ix.decompose(r, rd);
    for (long c = 0; c < old_ix.total; ++c) {
      old_ix.decompose(c, cd);
      for (std::size_t k = 0; k < src.size(); ++k) {
        nr[k] = rd[src[k]];
        nc[k] = cd[src[k]];
      }
      m(new_ix.compose(nr), new_ix.compose(nc)) = rho.matrix()(r, c);
    }
  }
  return DensityOperator(std::move(labels), std::move(m));
}

double fidelity_with_pure(const DensityOperator& rho, const StateVector& psi) {
  std::vector<std::string> order;
  for (const auto& l : psi.labels()) order.push_back(l.name);
  DensityOperator aligned = permute_subsystems(rho, order);
  Cplx val = psi.amplitudes().dot(aligned.matrix() * psi.amplitudes());
  return val.real();
}

MeasurementBasis computational_basis(const std::vector<Subsystem>& labels) {
  MeasurementBasis basis;
  for (const auto& l : labels) {
    SubsystemBasis b{l.name, {}, {}};
    for (int k = 0; k < l.dim; ++k) {
      b.symbols.push_back(std::to_string(k));
      Vec v = Vec::Zero(l.dim);
      v(k) = 1.0;
      b.vectors.push_back(std::move(v));
    }
    basis.push_back(std::move(b));
  }
  return basis;
}

MeasuredDistribution measure(const StateVector& state,
                             const MeasurementBasis& bases,
                             const std::map<std::string, std::string>& owners) {
  // One basis per subsystem, in subsystem order.
  std::vector<const SubsystemBasis*> per_label;
  for (const auto& l : state.labels()) {
    const SubsystemBasis* found = nullptr;
    for (const auto& b : bases) {
      if (b.subsystem == l.name) found = &b;
    }
    if (!found) throw BasisError("no basis for subsystem '" + l.name + "'");
    if (static_cast<int>(found->vectors.size()) != l.dim) {
      throw BasisError("basis for '" + l.name + "' has wrong cardinality");
    }
    for (std::size_t i = 0; i < found->vectors.size(); ++i) {
      for (std::size_t j = 0; j < found->vectors.size(); ++j) {
        Cplx ip = found->vectors[i].dot(found->vectors[j]);
        double expect = i == j ? 1.0 : 0.0;
        if (std::abs(ip - expect) > kBuildTol) {
          throw BasisError("basis for '" + l.name + "' is not orthonormal");
        }
      }
    }
    per_label.push_back(found);
  }

  std::vector<dist::RegisterSpec> registers;
  for (std::size_t i = 0; i < state.labels().size(); ++i) {
    const auto& name = state.labels()[i].name;
    auto it = owners.find(name);
    registers.push_back(
        {name, per_label[i]->symbols, it == owners.end() ? name : it->second});
  }

  Indexer ix(state.labels());
  bool exact = true;
  std::vector<std::pair<dist::Outcome, double>> raw;
  std::vector<int> combo(state.labels().size(), 0);
  std::vector<int> digits;
  while (true) {
    // Amplitude of this outcome combination.
    Cplx amp{0.0, 0.0};
    for (long idx = 0; idx < ix.total; ++idx) {
      ix.decompose(idx, digits);
      Cplx w = state.amplitudes()(idx);
      if (w == Cplx{0.0, 0.0}) continue;
      for (std::size_t k = 0; k < combo.size(); ++k) {
        w *= std::conj(per_label[k]->vectors[combo[k]](digits[k]));
      }
      amp += w;
    }
    double p = std::norm(amp);
    if (p > 1e-14) {
      raw.emplace_back(dist::Outcome(combo.begin(), combo.end()), p);
    }
    std::size_t k = combo.size();
    while (k > 0 &&
           ++combo[k - 1] == static_cast<int>(per_label[k - 1]->symbols.size())) {
      combo[--k] = 0;
    }
    if (k == 0) break;
  }

  std::map<dist::Outcome, Rat> table;
  Rat sum(0);
  std::map<dist::Outcome, Rat>::iterator largest = table.end();
  for (const auto& [o, p] : raw) {
    // Exactness requires a small-denominator fraction; an irrational value
    // can still admit a large-denominator fit within 1e-12.
    auto r = rationalize(p, 1e-12, 1 << 16);
    if (!r) {
      exact = false;
      r = rationalize(p, 1e-9);
      if (!r) r = rationalize(p, 1e-6, 1 << 20);
      if (!r) r = Rat(0);
    }
    auto [it, ok] = table.emplace(o, *r);
    sum += *r;
    if (largest == table.end() || it->second > largest->second) largest = it;
  }
  if (sum != Rat(1) && largest != table.end()) {
    largest->second += Rat(1) - sum;  // absorb the rounding deficit
    exact = false;
  }
  return {dist::JointDistribution(std::move(registers), std::move(table)),
          exact};
}

std::vector<BellBranch> bell_measure(const DensityOperator& rho,
                                     const std::string& q1,
                                     const std::string& q2) {
  if (rho.labels()[rho.label_index(q1)].dim != 2 ||
      rho.labels()[rho.label_index(q2)].dim != 2) {
    throw LabelError("Bell measurement needs a qubit pair");
  }
  std::vector<BellBranch> branches;
  for (int i = 1; i <= 4; ++i) {
    Vec v = bell_vector(i);
    Mat proj = embed(rho.labels(), Mat(v * v.adjoint()), {q1, q2});
    Mat post = proj * rho.matrix() * proj;
    double p = post.trace().real();
    if (p <= 1e-12) continue;
    DensityOperator collapsed(rho.labels(), post / p);
    branches.push_back({i, p, partial_trace(collapsed, {q1, q2})});
  }
  return branches;
}

Mat bell_correction(int outcome) {
  switch (outcome) {
    case 1: return Mat::Identity(2, 2);
    case 2: return pauli_z();
    case 3: return pauli_x();
    case 4: return Mat(pauli_z() * pauli_x());
    default: throw IndexError("Bell index must be in 1..4");
  }
}

std::vector<TeleportBranch> quantum_teleport(const DensityOperator& rho,
                                             const std::string& msg,
                                             const std::string& key1,
                                             const std::string& key2) {
  std::vector<TeleportBranch> branches;
  for (const BellBranch& b : bell_measure(rho, msg, key1)) {
    branches.push_back(
        {b.outcome, b.probability,
         apply_unitary(b.post, bell_correction(b.outcome), {key2})});
  }
  return branches;
}

UnlockOutcome quantum_unlock(const std::string& j1, const std::string& j2) {
  DensityOperator rho = smolin_state();
  std::vector<std::string> rest;
  for (const auto& l : rho.labels()) {
    if (l.name != j1 && l.name != j2) rest.push_back(l.name);
  }
  StateVector target = bell_state(1, rest[0], rest[1]);
  UnlockOutcome out;
  out.worst_fidelity = 1.0;
  for (const BellBranch& b : bell_measure(rho, j1, j2)) {
    DensityOperator corrected =
        apply_unitary(b.post, bell_correction(b.outcome), {rest[0]});
    out.worst_fidelity =
        std::min(out.worst_fidelity, fidelity_with_pure(corrected, target));
    out.branches.push_back({b.outcome, b.probability, corrected});
  }
  return out;
}

SuperactivationOutcome quantum_superactivation() {
  DensityOperator rho = tensor(smolin_like("A1", "C1", "B1", "D"),
                               smolin_like("A2", "B2", "C2", "E"));
  DensityOperator checkpoint_ref = smolin_like("C1", "C2", "D", "E");
  StateVector target = bell_state(1, "D", "E");

  double checkpoint_distance = 0.0;
  std::vector<SuperactivationBranch> branches;
  double worst = 1.0;

  // Bridge distribution: Bell announcements (public) vs the computational
  // measurement of the final (D,E) pair.
  std::vector<dist::RegisterSpec> regs{
      {"MA", {"1", "2", "3", "4"}, dist::kPublic},
      {"MB", {"1", "2", "3", "4"}, dist::kPublic},
      {"MC", {"1", "2", "3", "4"}, dist::kPublic},
      {"D", {"0", "1"}, "D"},
      {"E", {"0", "1"}, "E"}};
  std::map<dist::Outcome, Rat> key_table;

  for (const TeleportBranch& ta : quantum_teleport(rho, "A2", "A1", "C1")) {
    for (const TeleportBranch& tb :
         quantum_teleport(ta.post, "B2", "B1", "D")) {
      DensityOperator mid =
          permute_subsystems(tb.post, {"C1", "C2", "D", "E"});
      checkpoint_distance = std::max(
          checkpoint_distance,
          (mid.matrix() - checkpoint_ref.matrix()).cwiseAbs().maxCoeff());
      for (const BellBranch& mc : bell_measure(mid, "C1", "C2")) {
        DensityOperator fin =
            apply_unitary(mc.post, bell_correction(mc.outcome), {"D"});
        double f = fidelity_with_pure(fin, target);
        worst = std::min(worst, f);
        double p = ta.probability * tb.probability * mc.probability;
        branches.push_back({ta.outcome, tb.outcome, mc.outcome, p, f});

        DensityOperator fin_de = permute_subsystems(fin, {"D", "E"});
        for (int bit : {0, 1}) {
          double pk = p * fin_de.matrix()(bit * 3, bit * 3).real();
          auto r = rationalize(pk, 1e-11);
          dist::Outcome o{static_cast<std::uint8_t>(ta.outcome - 1),
                          static_cast<std::uint8_t>(tb.outcome - 1),
                          static_cast<std::uint8_t>(mc.outcome - 1),
                          static_cast<std::uint8_t>(bit),
                          static_cast<std::uint8_t>(bit)};
          key_table[o] += r ? *r : Rat(0);
        }
      }
    }
  }
  // Small rounding deficits land on the first row.
  Rat sum(0);
  for (const auto& [o, p] : key_table) sum += p;
  if (sum != Rat(1) && !key_table.empty()) {
    key_table.begin()->second += Rat(1) - sum;
  }
  return {checkpoint_distance, std::move(branches), worst,
          dist::JointDistribution(std::move(regs), std::move(key_table))};
}

namespace {

// Rectangular full-space matrix of one Kraus operator taking the pair
// (in1, in2) to a fresh subsystem placed at in1's slot.
std::pair<std::vector<Subsystem>, Mat> kraus_full(
    const std::vector<Subsystem>& labels, const Mat& k, const std::string& in1,
    const std::string& in2, const Subsystem& out) {
  std::size_t i1 = find_label(labels, in1);
  std::size_t i2 = find_label(labels, in2);
  long d1 = labels[i1].dim, d2 = labels[i2].dim;
  if (k.cols() != d1 * d2 || k.rows() != out.dim) {
    throw LabelError("Kraus operator dimensions do not match subsystems");
  }
  std::vector<Subsystem> out_labels;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i == i1) {
      out_labels.push_back(out);
    } else if (i != i2) {
      out_labels.push_back(labels[i]);
    }
  }
  Indexer in_ix(labels);
  Indexer out_ix(out_labels);
  Mat full = Mat::Zero(out_ix.total, in_ix.total);
  std::vector<int> id, od(out_labels.size());
  for (long c = 0; c < in_ix.total; ++c) {
    in_ix.decompose(c, id);
    long pair_in = id[i1] * d2 + id[i2];
    // Digits of the surviving subsystems, with `out` at i1's slot.
    for (int ov = 0; ov < out.dim; ++ov) {
      std::size_t w = 0;
      for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i == i1) {
          od[w++] = ov;
        } else if (i != i2) {
          od[w++] = id[i];
        }
      }
      full(out_ix.compose(od), c) += k(ov, pair_in);
    }
  }
  return {std::move(out_labels), std::move(full)};
}

}  // namespace

GhzExtendOutcome ghz_extend() {
  // K0 = |0><00| + |1><11|, K1 = |0><01| + |1><10|.
  Mat k0 = Mat::Zero(2, 4), k1 = Mat::Zero(2, 4);
  k0(0, 0) = 1.0;
  k0(1, 3) = 1.0;
  k1(0, 1) = 1.0;
  k1(1, 2) = 1.0;
  KrausChannel instrument{{k0, k1}, {"same", "different"}};
  instrument.check_completeness();

  StateVector eta = tensor(ghz_state({"gA", "gB", "gC"}),
                           StateVector({{"gD", 2}},
                                       Vec::Constant(2, 1.0 / std::sqrt(2.0))));
  DensityOperator mu = tensor(DensityOperator::from_pure(eta),
                              smolin_like("sA", "sB", "sC", "sD"));

  const std::array<std::pair<std::string, std::string>, 4> parties{
      {{"gA", "sA"}, {"gB", "sB"}, {"gC", "sC"}, {"gD", "sD"}}};
  const std::array<std::string, 4> out_names{"A", "B", "C", "D"};
  StateVector target = ghz_state({"A", "B", "C", "D"});

  GhzExtendOutcome result;
  result.instrument = instrument;
  result.worst_fidelity = 1.0;
  result.uniform_sixteenth = true;

  for (int mask = 0; mask < 16; ++mask) {
    std::array<int, 4> outcomes{};
    std::vector<Subsystem> labels = mu.labels();
    Mat state = mu.matrix();
    for (int a = 0; a < 4; ++a) {
      outcomes[a] = (mask >> a) & 1;
      auto [next_labels, f] =
          kraus_full(labels, outcomes[a] == 0 ? k0 : k1, parties[a].first,
                     parties[a].second, {out_names[a], 2});
      state = f * state * f.adjoint();
      labels = std::move(next_labels);
    }
    double p = state.trace().real();
    auto pr = rationalize(p, 1e-11);
    if (!pr || *pr != Rat(1, 16)) result.uniform_sixteenth = false;
    DensityOperator post(labels, state / p);
    int v = outcomes[0] + outcomes[1] + outcomes[2] + outcomes[3];
    if (v % 2 == 1) post = apply_unitary(post, pauli_x(), {"D"});
    double f = fidelity_with_pure(post, target);
    result.worst_fidelity = std::min(result.worst_fidelity, f);
    result.branches.push_back({outcomes, p, f});
  }
  return result;
}

MeasurementBasis smolin_measurement_basis(const StateVector& purification) {
  const auto& labels = purification.labels();
  std::size_t eve_idx = labels.size() - 1;
  int eve_dim = labels[eve_idx].dim;
  long honest_dim = purification.dim() / eve_dim;

  // Conditional Eve states given each computational outcome on the honest
  // subsystems; amplitudes are laid out with Eve least significant.
  std::vector<Vec> conditionals;
  for (long x = 0; x < honest_dim; ++x) {
    Vec v = purification.amplitudes().segment(x * eve_dim, eve_dim);
    double n = v.norm();
    if (n < 1e-9) continue;
    v /= n;
    bool known = false;
    for (const Vec& u : conditionals) {
      double overlap = std::abs(u.dot(v));
      if (overlap > 1.0 - 1e-9) {
        known = true;
        break;
      }
      if (overlap > 1e-9) {
        throw BasisError(
            "conditional Eve states are neither equal nor orthogonal");
      }
    }
    if (!known) conditionals.push_back(std::move(v));
  }
  if (static_cast<int>(conditionals.size()) != eve_dim) {
    throw BasisError("conditional Eve states do not form a complete basis");
  }

  MeasurementBasis basis = computational_basis(
      {labels.begin(), labels.begin() + static_cast<long>(eve_idx)});
  SubsystemBasis eve{labels[eve_idx].name, {}, {}};
  for (std::size_t k = 0; k < conditionals.size(); ++k) {
    eve.symbols.push_back("e" + std::to_string(k + 1));
    eve.vectors.push_back(conditionals[k]);
  }
  basis.push_back(std::move(eve));
  return basis;
}

}  // namespace boundinfo::quantum
