#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "boundinfo/json_io.hpp"
#include "boundinfo/quantum.hpp"

#include <cmath>
#include <complex>

using namespace boundinfo;
namespace qm = boundinfo::quantum;

namespace {

const double kTol = 1e-9;

}  // namespace

TEST_CASE("bell states are orthonormal with the expected amplitudes") {
  auto psi1 = qm::bell_state(1);
  CHECK(std::abs(psi1.amplitudes()(0) - 1.0 / std::sqrt(2.0)) < kTol);
  CHECK(std::abs(psi1.amplitudes()(1)) < kTol);
  CHECK(std::abs(psi1.amplitudes()(2)) < kTol);
  CHECK(std::abs(psi1.amplitudes()(3) - 1.0 / std::sqrt(2.0)) < kTol);

  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      auto ip = qm::bell_state(i).amplitudes().dot(
          qm::bell_state(j).amplitudes());
      CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) < kTol);
    }

  // The singlet is antisymmetric under qubit swap.
  auto psi4 = qm::bell_state(4);
  CHECK(std::abs(psi4.amplitudes()(1) + psi4.amplitudes()(2)) < kTol);
  CHECK_THROWS_AS(qm::bell_state(5), IndexError);
}

TEST_CASE("the four-qubit state has the expected spectrum and symmetry") {
  auto rho = qm::smolin_state();
  Eigen::SelfAdjointEigenSolver<qm::Mat> es(rho.matrix());
  int quarter = 0, zero = 0;
  for (int i = 0; i < 16; ++i) {
    if (std::abs(es.eigenvalues()(i) - 0.25) < kTol) ++quarter;
    if (std::abs(es.eigenvalues()(i)) < kTol) ++zero;
  }
  CHECK(quarter == 4);
  CHECK(zero == 12);

  // All entries real multiples of 1/8.
  for (int r = 0; r < 16; ++r)
    for (int c = 0; c < 16; ++c) {
      auto v = rho.matrix()(r, c);
      CHECK(std::abs(v.imag()) < kTol);
      CHECK(std::abs(v.real() * 8.0 - std::round(v.real() * 8.0)) < kTol);
    }

  for (const auto& order : std::vector<std::vector<std::string>>{
           {"B", "A", "D", "C"}, {"C", "D", "A", "B"}, {"D", "C", "B", "A"},
           {"B", "A", "C", "D"}, {"A", "B", "D", "C"}}) {
    auto perm = qm::permute_subsystems(rho, order);
    CHECK((perm.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < kTol);
  }
}

TEST_CASE("partial trace and partial transpose") {
  auto rho = qm::smolin_state();
  auto ab = qm::partial_trace(rho, {"C", "D"});
  CHECK((ab.matrix() - qm::Mat::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff() <
        kTol);

  auto pt = qm::partial_transpose(rho, {"A", "B"});
  qm::DensityOperator ptrho(rho.labels(), pt);
  CHECK((qm::partial_transpose(ptrho, {"A", "B"}) - rho.matrix())
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  auto bell = qm::DensityOperator::from_pure(qm::bell_state(1));
  CHECK(std::abs(qm::min_partial_transpose_eigenvalue(bell, {"A"}) + 0.5) <
        kTol);
  CHECK_FALSE(qm::is_ppt(bell, {"A"}));

  for (const auto& cut : std::vector<std::vector<std::string>>{
           {"A", "B"}, {"A", "C"}, {"A", "D"}})
    CHECK(qm::is_ppt(rho, cut));
}

TEST_CASE("purification recovers the state") {
  auto rho = qm::smolin_state();
  auto psi = qm::purify(rho, "EVE");
  CHECK(psi.labels().back().name == "EVE");
  CHECK(psi.labels().back().dim == 4);

  auto full = qm::DensityOperator::from_pure(psi);
  auto back = qm::partial_trace(full, {"EVE"});
  CHECK((back.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < kTol);

  // A pure state purifies with a trivial ancilla.
  auto pure = qm::DensityOperator::from_pure(qm::bell_state(1));
  auto psi2 = qm::purify(pure, "EVE");
  CHECK(psi2.labels().back().dim == 1);
  CHECK(std::abs(qm::fidelity_with_pure(pure, qm::bell_state(1)) - 1.0) <
        kTol);
}

TEST_CASE("measure: Born rule with exact rational probabilities") {
  auto psi = qm::bell_state(1, "X", "Y");
  auto m = qm::measure(psi, qm::computational_basis({{"X", 2}, {"Y", 2}}));
  CHECK(m.exact);
  CHECK(m.dist.table().size() == 2);
  for (const auto& [o, p] : m.dist.table()) {
    (void)o;
    CHECK(p == Rat(1, 2));
  }
  CHECK(dist::is_sbit(m.dist, "X", "Y"));

  auto ghz = qm::ghz_state({"X", "Y", "Z"});
  auto mg = qm::measure(ghz, qm::computational_basis({{"X", 2}, {"Y", 2},
                                                      {"Z", 2}}));
  CHECK(dist::is_multipartite_sbit(mg.dist, {"X", "Y", "Z"}));

  // Irrational probabilities: nearest-rational fallback flags inexactness.
  qm::Vec v(2);
  v << std::cos(1.0), std::sin(1.0);
  qm::StateVector skew({{"X", 2}}, v);
  auto ms = qm::measure(skew, qm::computational_basis({{"X", 2}}));
  CHECK_FALSE(ms.exact);
  Rat total(0);
  for (const auto& [o, p] : ms.dist.table()) {
    (void)o;
    total += p;
  }
  CHECK(total == Rat(1));
}

TEST_CASE("bell measurement branches") {
  auto rho = qm::smolin_state();
  auto branches = qm::bell_measure(rho, "A", "B");
  REQUIRE(branches.size() == 4);
  double psum = 0.0;
  for (const auto& b : branches) {
    CHECK(std::abs(b.probability - 0.25) < kTol);
    psum += b.probability;
    CHECK(std::abs(qm::fidelity_with_pure(
                       b.post, qm::bell_state(b.outcome, "C", "D")) -
                   1.0) < kTol);
  }
  CHECK(std::abs(psum - 1.0) < kTol);

  // |00> splits over the two symmetric Bell states only.
  qm::Vec v = qm::Vec::Zero(4);
  v(0) = 1.0;
  auto prod = qm::DensityOperator({{"X", 2}, {"Y", 2}}, v * v.adjoint());
  auto pb = qm::bell_measure(prod, "X", "Y");
  REQUIRE(pb.size() == 2);
  CHECK(pb[0].outcome == 1);
  CHECK(pb[1].outcome == 2);
  CHECK(std::abs(pb[0].probability - 0.5) < kTol);
  CHECK(std::abs(pb[1].probability - 0.5) < kTol);
}

TEST_CASE("unlocking distills a Bell pair for the other two parties") {
  auto out = qm::quantum_unlock();
  CHECK(out.branches.size() == 4);
  CHECK(out.worst_fidelity > 1.0 - kTol);

  auto sym = qm::quantum_unlock("A", "C");
  CHECK(sym.worst_fidelity > 1.0 - kTol);

  // Without the correction the average overlap with |psi_1> is 1/4.
  auto branches = qm::bell_measure(qm::smolin_state(), "A", "B");
  double avg = 0.0;
  for (const auto& b : branches) {
    auto target = qm::bell_state(1, b.post.labels()[0].name,
                                 b.post.labels()[1].name);
    avg += b.probability * qm::fidelity_with_pure(b.post, target);
  }
  CHECK(std::abs(avg - 0.25) < kTol);
}

TEST_CASE("teleportation identities") {
  // Arbitrary qubit through |psi_1>: every branch returns the input.
  std::complex<double> a(0.6, 0.0), b(0.0, 0.8);
  qm::Vec chi(2);
  chi << a, b;
  qm::StateVector msg({{"M", 2}}, chi);
  auto joint = qm::tensor(qm::DensityOperator::from_pure(msg),
                          qm::DensityOperator::from_pure(
                              qm::bell_state(1, "K1", "K2")));
  auto branches = qm::quantum_teleport(joint, "M", "K1", "K2");
  REQUIRE(branches.size() == 4);
  for (const auto& br : branches) {
    CHECK(std::abs(br.probability - 0.25) < kTol);
    CHECK(std::abs(qm::fidelity_with_pure(
                       br.post, qm::StateVector({{"K2", 2}}, chi)) -
                   1.0) < kTol);
  }

  // Through |psi_2> with |psi_1>-frame corrections the output is Z|chi>.
  auto joint2 = qm::tensor(qm::DensityOperator::from_pure(msg),
                           qm::DensityOperator::from_pure(
                               qm::bell_state(2, "K1", "K2")));
  qm::Vec zchi(2);
  zchi << a, -b;
  for (const auto& br : qm::quantum_teleport(joint2, "M", "K1", "K2")) {
    CHECK(std::abs(qm::fidelity_with_pure(
                       br.post, qm::StateVector({{"K2", 2}}, zchi)) -
                   1.0) < kTol);
  }
}

TEST_CASE("quantum activation of two bound states") {
  auto out = qm::quantum_superactivation();
  CHECK(out.checkpoint_distance < kTol);
  CHECK(out.worst_fidelity > 1.0 - kTol);
  CHECK(out.branches.size() == 64);
  double psum = 0.0;
  for (const auto& br : out.branches) psum += br.probability;
  CHECK(std::abs(psum - 1.0) < kTol);
  // The announced outcomes tell Eve nothing about the final key bits.
  CHECK(dist::is_sbit(out.announced_key_distribution, "D", "E"));
}

TEST_CASE("extending the three-party GHZ state") {
  auto out = qm::ghz_extend();
  CHECK(out.branches.size() == 16);
  CHECK(out.worst_fidelity > 1.0 - kTol);
  CHECK(out.uniform_sixteenth);
  CHECK_NOTHROW(out.instrument.check_completeness(1e-12));
}

TEST_CASE("density operators validate and serialize") {
  CHECK_THROWS_AS(
      qm::DensityOperator({{"X", 2}}, qm::Mat::Identity(2, 2) * 0.7),
      Error);  // trace != 1
  qm::Mat bad(2, 2);
  bad << 1.0, 0.5, -0.5, 0.0;
  CHECK_THROWS_AS(qm::DensityOperator({{"X", 2}}, bad), Error);

  auto rho = qm::smolin_state();
  auto j = io::state_to_json(rho);
  auto back = io::state_from_json(j);
  CHECK((back.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(back.labels().size() == 4);
  CHECK(back.labels()[0].name == "A");
}
