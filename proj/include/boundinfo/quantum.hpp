#pragma once

#include "boundinfo/dist.hpp"
#include "boundinfo/errors.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <map>
#include <string>
#include <vector>

namespace boundinfo::quantum {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

constexpr double kBuildTol = 1e-12;   // construction invariants
constexpr double kAssertTol = 1e-9;   // physical assertions

/// Labeled tensor factor. The first label is the most significant index.
struct Subsystem {
  std::string name;
  int dim = 2;
};

class StateVector {
 public:
  StateVector(std::vector<Subsystem> labels, Vec amplitudes);

  const std::vector<Subsystem>& labels() const { return labels_; }
  const Vec& amplitudes() const { return amps_; }
  int dim() const { return static_cast<int>(amps_.size()); }
  std::size_t label_index(const std::string& name) const;

 private:
  std::vector<Subsystem> labels_;
  Vec amps_;
};

class DensityOperator {
 public:
  DensityOperator(std::vector<Subsystem> labels, Mat matrix);
  static DensityOperator from_pure(const StateVector& psi);

  const std::vector<Subsystem>& labels() const { return labels_; }
  const Mat& matrix() const { return mat_; }
  int dim() const { return static_cast<int>(mat_.rows()); }
  std::size_t label_index(const std::string& name) const;

 private:
  std::vector<Subsystem> labels_;
  Mat mat_;
};

/// Completely positive map given by Kraus operators (possibly rectangular,
/// input dim -> output dim), with labeled outcomes.
struct KrausChannel {
  std::vector<Mat> operators;
  std::vector<std::string> outcome_labels;

  /// Throws if sum K^dag K deviates from the identity beyond tol.
  void check_completeness(double tol = kBuildTol) const;
};

/// Per-subsystem orthonormal measurement vectors with symbol labels.
struct SubsystemBasis {
  std::string subsystem;
  std::vector<std::string> symbols;
  std::vector<Vec> vectors;
};
using MeasurementBasis = std::vector<SubsystemBasis>;

// --- states ------------------------------------------------------------

/// The four Bell vectors: 1 -> (|00>+|11>)/sqrt2, 2 -> (|00>-|11>)/sqrt2,
/// 3 -> (|01>+|10>)/sqrt2, 4 -> (|01>-|10>)/sqrt2.
StateVector bell_state(int i, const std::string& q1 = "A",
                       const std::string& q2 = "B");

/// (1/4) sum_i |psi_i><psi_i| on (l1,l2) tensor |psi_i><psi_i| on (l3,l4).
DensityOperator smolin_like(const std::string& l1, const std::string& l2,
                            const std::string& l3, const std::string& l4);

/// Four-qubit bound entangled state over A,B,C,D (Bell pairs AB and CD).
DensityOperator smolin_state();

/// (|0..0> + |1..1>)/sqrt2 over the given qubits.
StateVector ghz_state(const std::vector<std::string>& qubits);

// --- multilinear algebra -----------------------------------------------

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);
StateVector tensor(const StateVector& a, const StateVector& b);

/// Traces out the named subsystems.
DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<std::string>& trace_out);

/// Transpose on the named side of a bipartition; Hermitian and trace-1 but
/// possibly non-positive, hence returned as a raw matrix.
Mat partial_transpose(const DensityOperator& rho,
                      const std::vector<std::string>& side);

double min_partial_transpose_eigenvalue(const DensityOperator& rho,
                                        const std::vector<std::string>& side);

/// All partial-transpose eigenvalues >= -1e-9 across the cut.
bool is_ppt(const DensityOperator& rho, const std::vector<std::string>& side);

/// Eigendecomposition purification with ancilla dimension = rank.
StateVector purify(const DensityOperator& rho,
                   const std::string& eve_label = "EVE");

/// Unitary on the named subsystems (identity elsewhere).
DensityOperator apply_unitary(const DensityOperator& rho, const Mat& u,
                              const std::vector<std::string>& targets);

/// Subsystems permuted into the given name order (same matrix, relabeled
/// tensor legs).
DensityOperator permute_subsystems(const DensityOperator& rho,
                                   const std::vector<std::string>& order);

double fidelity_with_pure(const DensityOperator& rho, const StateVector& psi);

// --- measurements ------------------------------------------------------

struct MeasuredDistribution {
  dist::JointDistribution dist;
  bool exact = true;  // false if some probability needed 1e-12 rounding
};

/// Born-rule outcome distribution of a full product-basis measurement.
/// `owners` maps subsystem name -> register owner (defaults to the name).
MeasuredDistribution measure(
    const StateVector& state, const MeasurementBasis& bases,
    const std::map<std::string, std::string>& owners = {});

MeasurementBasis computational_basis(const std::vector<Subsystem>& labels);

struct BellBranch {
  int outcome = 1;  // Bell index 1..4
  double probability = 0.0;
  DensityOperator post;  // measured pair traced out
};

/// Projective Bell-basis measurement on the named qubit pair.
std::vector<BellBranch> bell_measure(const DensityOperator& rho,
                                     const std::string& q1,
                                     const std::string& q2);

/// Pauli correction mapping |psi_i> back to |psi_1> when applied on the
/// first qubit of the pair.
Mat bell_correction(int outcome);

struct TeleportBranch {
  int outcome = 1;
  double probability = 0.0;
  DensityOperator post;
};

/// Bell measurement on (msg, key1), announcement, Pauli correction on key2.
std::vector<TeleportBranch> quantum_teleport(const DensityOperator& rho,
                                             const std::string& msg,
                                             const std::string& key1,
                                             const std::string& key2);

// --- protocol drivers ------------------------------------------------------

struct UnlockOutcome {
  std::vector<BellBranch> branches;  // post-states after correction
  double worst_fidelity = 0.0;       // vs |psi_1> on the remaining pair
};

/// AB Bell-measure the Smolin state, announce, CD correct to |psi_1>.
UnlockOutcome quantum_unlock(const std::string& j1 = "A",
                             const std::string& j2 = "B");

struct SuperactivationBranch {
  int alice_outcome = 1, bob_outcome = 1, clare_outcome = 1;
  double probability = 0.0;
  double fidelity = 0.0;  // final (D,E) pair vs |psi_1>
};

struct SuperactivationOutcome {
  /// Max-entry distance of each post-teleport (C1',C2,D',E) state from the
  /// Smolin state, maximized over the 16 teleport branches.
  double checkpoint_distance = 0.0;
  std::vector<SuperactivationBranch> branches;  // 64 branches
  double worst_fidelity = 0.0;
  dist::JointDistribution announced_key_distribution;  // sbit bridge check
};

SuperactivationOutcome quantum_superactivation();

struct GhzExtendBranch {
  std::array<int, 4> outcomes{};  // (i_A, j_B, k_C, l_D)
  double probability = 0.0;
  double fidelity = 0.0;  // vs |phi_4> after the parity correction
};

struct GhzExtendOutcome {
  KrausChannel instrument;  // the {K_0, K_1} two-qubit -> one-qubit map
  std::vector<GhzExtendBranch> branches;  // all 16
  double worst_fidelity = 0.0;
  bool uniform_sixteenth = false;  // every branch probability exactly 1/16
};

GhzExtendOutcome ghz_extend();

/// Eve-ancilla measurement basis derived from the purification: the (at most
/// four) distinct conditional Eve states given computational outcomes on the
/// honest qubits. Orthonormal for the Smolin purification.
MeasurementBasis smolin_measurement_basis(const StateVector& purification);

}  // namespace boundinfo::quantum
