#include <doctest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qarp/circuit.hpp"

using namespace qarp;
using oracles::CMat;

namespace {

constexpr double kPi = std::numbers::pi;

StateVector basis_state(int n_qubits, int index) {
  std::vector<double> x(size_t{1} << n_qubits, 0.0);
  x[index] = 1.0;
  return StateVector::amplitude_embed(x, n_qubits);
}

bool approx_identity(const CMat& m, double tol) {
  return (m - CMat::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() < tol;
}

}  // namespace

TEST_CASE("gate matrices match their defining identities") {
  // H|0> = (|0> + |1>)/sqrt(2)
  StateVector sv(1);
  sv.apply({GateKind::H, 0});
  CHECK(std::abs(sv.amplitudes()[0] - cplx(1 / std::sqrt(2.0), 0)) < 1e-12);
  CHECK(std::abs(sv.amplitudes()[1] - cplx(1 / std::sqrt(2.0), 0)) < 1e-12);

  // CNOT|10> = |11>
  StateVector sv2 = basis_state(2, 2);
  sv2.apply({GateKind::Cnot, 1, 0});
  CHECK(std::abs(sv2.amplitudes()[3] - cplx(1, 0)) < 1e-12);

  // X|0> = |1>, I fixes both
  StateVector sv3(1);
  sv3.apply({GateKind::X, 0});
  CHECK(std::abs(sv3.amplitudes()[1] - cplx(1, 0)) < 1e-12);
  sv3.apply({GateKind::I, 0});
  CHECK(std::abs(sv3.amplitudes()[1] - cplx(1, 0)) < 1e-12);

  // Rz(pi) = diag(-i, i)
  const CMat rz = gate_matrix(GateKind::Rz, std::vector<double>{kPi});
  CHECK(std::abs(rz(0, 0) - cplx(0, -1)) < 1e-12);
  CHECK(std::abs(rz(1, 1) - cplx(0, 1)) < 1e-12);

  // U(0, beta, gamma) = diag(1, e^{i(beta+gamma)})
  const CMat u = gate_matrix(GateKind::U, std::vector<double>{0.0, 0.4, 1.1});
  CHECK(std::abs(u(0, 0) - cplx(1, 0)) < 1e-12);
  CHECK(std::abs(u(0, 1)) < 1e-12);
  CHECK(std::abs(u(1, 1) - std::exp(cplx(0, 1.5))) < 1e-12);

  // Ry(pi/2) Ry(-pi/2) = I
  const CMat ry1 = gate_matrix(GateKind::Ry, std::vector<double>{kPi / 2});
  const CMat ry2 = gate_matrix(GateKind::Ry, std::vector<double>{-kPi / 2});
  CHECK(approx_identity(ry1 * ry2, 1e-12));

  // Rx(0) = I
  CHECK(approx_identity(gate_matrix(GateKind::Rx, std::vector<double>{0.0}), 1e-12));
}

TEST_CASE("every gate kind is unitary for random parameters") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(-8.0, 8.0);
  const GateKind kinds[] = {GateKind::I, GateKind::X,  GateKind::H,  GateKind::Rx,
                            GateKind::Ry, GateKind::Rz, GateKind::U,  GateKind::Cnot,
                            GateKind::Crz, GateKind::Cu};
  for (GateKind k : kinds)
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> params(Gate::gate_param_count(k));
      for (double& p : params) p = angle(rng);
      const CMat m = gate_matrix(k, params);
      CHECK(approx_identity(m.adjoint() * m, 1e-12));
    }
}

TEST_CASE("rotations have period 4pi") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(-4.0, 4.0);
  for (GateKind k : {GateKind::Rx, GateKind::Ry, GateKind::Rz})
    for (int trial = 0; trial < 20; ++trial) {
      const double t = angle(rng);
      const CMat a = gate_matrix(k, std::vector<double>{t});
      const CMat b = gate_matrix(k, std::vector<double>{t + 4 * kPi});
      CHECK((a - b).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("norm is preserved by random gates on random states") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> angle(-6.0, 6.0);
  std::uniform_int_distribution<int> pick_kind(0, 9);
  const GateKind kinds[] = {GateKind::I, GateKind::X,  GateKind::H,  GateKind::Rx,
                            GateKind::Ry, GateKind::Rz, GateKind::U,  GateKind::Cnot,
                            GateKind::Crz, GateKind::Cu};
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + trial % 2;
    std::vector<double> x(size_t{1} << n);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (double& v : x) v = gauss(rng);
    StateVector sv = StateVector::amplitude_embed(x, n);

    Gate g;
    g.kind = kinds[pick_kind(rng)];
    g.target = std::uniform_int_distribution<int>(0, n - 1)(rng);
    if (Gate::is_controlled(g.kind)) {
      g.control = (g.target + 1) % n;
    }
    for (int p = 0; p < g.n_params(); ++p) g.params[p] = angle(rng);
    sv.apply(g);
    CHECK(std::abs(sv.norm() - 1.0) < 1e-9);
  }
}

TEST_CASE("amplitude embedding pads and normalizes") {
  const StateVector a = StateVector::amplitude_embed(std::vector<double>{1, 0, 0, 0}, 2);
  CHECK(std::abs(a.amplitudes()[0] - cplx(1, 0)) < 1e-12);

  const StateVector b = StateVector::amplitude_embed(std::vector<double>{1, 1}, 1);
  CHECK(std::abs(b.amplitudes()[0] - cplx(1 / std::sqrt(2.0), 0)) < 1e-12);
  CHECK(std::abs(b.amplitudes()[1] - cplx(1 / std::sqrt(2.0), 0)) < 1e-12);

  const StateVector c = StateVector::amplitude_embed(std::vector<double>{0.6, 0.8, 0, 0.1}, 2);
  CHECK(std::abs(c.norm() - 1.0) < 1e-12);
  const double scale = 1.0 / std::sqrt(0.36 + 0.64 + 0.01);
  CHECK(std::abs(c.amplitudes()[0] - cplx(0.6 * scale, 0)) < 1e-12);
  CHECK(std::abs(c.amplitudes()[3] - cplx(0.1 * scale, 0)) < 1e-12);

  CHECK_THROWS(StateVector::amplitude_embed(std::vector<double>{0, 0}, 1));
  CHECK_THROWS(StateVector::amplitude_embed(std::vector<double>{1, 2, 3, 4, 5}, 2));
}

TEST_CASE("expectation of Z matches eigenstates and the outcome oracle") {
  StateVector zero(1);
  CHECK(zero.expectation_z(0) == doctest::Approx(1.0));
  StateVector one(1);
  one.apply({GateKind::X, 0});
  CHECK(one.expectation_z(0) == doctest::Approx(-1.0));
  StateVector plus(1);
  plus.apply({GateKind::H, 0});
  CHECK(std::abs(plus.expectation_z(0)) < 1e-12);

  std::mt19937_64 rng(17);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x(8);
    for (double& v : x) v = gauss(rng);
    const StateVector sv = StateVector::amplitude_embed(x, 3);
    oracles::CVec amps(8);
    for (int i = 0; i < 8; ++i) amps[i] = sv.amplitudes()[i];
    for (int wire = 0; wire < 3; ++wire) {
      const double expected = oracles::expectation_z_by_outcomes(amps, 3, wire);
      CHECK(sv.expectation_z(wire) == doctest::Approx(expected).epsilon(1e-12));
      CHECK(sv.expectation_z(wire) <= 1.0);
      CHECK(sv.expectation_z(wire) >= -1.0);
    }
  }
}

TEST_CASE("layer construction follows the published topologies") {
  SUBCASE("C1 on 3 wires: Rx column then Ry column, 6 params") {
    CircuitSpec spec{LayerKind::C1, 3, 1};
    CHECK(spec.params_per_layer() == 6);
    std::vector<double> p{0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
    const auto gates = layer_gates(spec, p);
    REQUIRE(gates.size() == 6);
    for (int q = 0; q < 3; ++q) {
      CHECK(gates[q].kind == GateKind::Rx);
      CHECK(gates[q].target == q);
      CHECK(gates[3 + q].kind == GateKind::Ry);
    }
  }
  SUBCASE("ZZFM on 2 wires: H,H,Rz,Rz,CNOT,Rz,CNOT with 3 params") {
    CircuitSpec spec{LayerKind::Zzfm, 2, 1};
    CHECK(spec.params_per_layer() == 3);
    std::vector<double> p{0.1, 0.2, 0.3};
    const auto gates = layer_gates(spec, p);
    REQUIRE(gates.size() == 7);
    const GateKind expected[] = {GateKind::H,    GateKind::H,  GateKind::Rz, GateKind::Rz,
                                 GateKind::Cnot, GateKind::Rz, GateKind::Cnot};
    for (int i = 0; i < 7; ++i) CHECK(gates[i].kind == expected[i]);
    CHECK(gates[5].target == 1);  // pair rotation sits on the chain target
  }
  SUBCASE("C2 chain with zero params fixes |0..0>") {
    CircuitSpec spec{LayerKind::C2, 3, 1};
    std::vector<double> zeros(spec.params_per_layer(), 0.0);
    std::vector<double> theta(spec.total_params(), 0.0);
    StateVector sv = run_circuit(spec, theta, std::vector<double>{1, 0, 0, 0, 0, 0, 0, 0});
    CHECK(std::abs(sv.amplitudes()[0] - cplx(1, 0)) < 1e-12);
  }
  SUBCASE("Circular ring closes from the last wire") {
    CircuitSpec spec{LayerKind::Circular, 3, 1};
    CHECK(spec.params_per_layer() == 9);
    std::vector<double> p(9, 0.1);
    const auto gates = layer_gates(spec, p);
    REQUIRE(gates.size() == 3);
    CHECK(gates[0].control == 2);
    CHECK(gates[0].target == 0);
    CHECK(gates[1].control == 0);
    CHECK(gates[1].target == 1);
    CHECK(gates[2].control == 1);
    CHECK(gates[2].target == 2);
  }
  SUBCASE("Full covers every ordered pair once") {
    CircuitSpec spec{LayerKind::Full, 3, 1};
    CHECK(spec.params_per_layer() == 9);
    std::vector<double> p(9, 0.2);
    const auto gates = layer_gates(spec, p);
    REQUIRE(gates.size() == 3);
    CHECK(gates[0].control == 0);
    CHECK(gates[0].target == 1);
    CHECK(gates[1].control == 0);
    CHECK(gates[1].target == 2);
    CHECK(gates[2].control == 1);
    CHECK(gates[2].target == 2);
  }
  SUBCASE("wrong slice length is rejected") {
    CircuitSpec spec{LayerKind::C3, 2, 1};
    std::vector<double> bad(5, 0.0);
    CHECK_THROWS(layer_gates(spec, bad));
  }
}

TEST_CASE("parameter counts for all kinds and qubit counts") {
  for (int n : {2, 3}) {
    CHECK(params_per_layer(LayerKind::C1, n) == 2 * n);
    CHECK(params_per_layer(LayerKind::C2, n) == n);
    CHECK(params_per_layer(LayerKind::C3, n) == 2 * n - 1);
    CHECK(params_per_layer(LayerKind::Zzfm, n) == 2 * n - 1);
    CHECK(params_per_layer(LayerKind::Circular, n) == 3 * n);
    CHECK(params_per_layer(LayerKind::Full, n) == 3 * n * (n - 1) / 2);
    for (LayerKind k : kAllLayerKinds)
      for (int layers : {1, 2, 3, 4, 8, 16}) {
        CircuitSpec spec{k, n, layers};
        CHECK(spec.total_params() == layers * params_per_layer(k, n));
      }
  }
}

TEST_CASE("run_circuit matches the dense matrix-chain oracle") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<int> layers(1, 2);
  for (LayerKind k : kAllLayerKinds)
    for (int n : {2, 3})
      for (int trial = 0; trial < 9; ++trial) {
        CircuitSpec spec{k, n, layers(rng)};
        std::vector<double> theta(spec.total_params());
        for (double& t : theta) t = angle(rng);
        std::vector<double> x(size_t{1} << n);
        for (double& v : x) v = gauss(rng);

        const StateVector fast = run_circuit(spec, theta, x);
        const oracles::CVec dense = oracles::run_circuit_dense(spec, theta, x);
        for (int i = 0; i < (1 << n); ++i)
          CHECK(std::abs(fast.amplitudes()[i] - dense[i]) < 1e-10);
      }
}

TEST_CASE("composing layers equals running them in sequence") {
  CircuitSpec two{LayerKind::C1, 2, 2};
  std::vector<double> theta{0.3, 1.2, 0.7, 2.1, 0.9, 0.2, 1.4, 0.8};
  std::vector<double> x{0.2, -0.4, 0.9, 0.1};
  const StateVector direct = run_circuit(two, theta, x);

  CircuitSpec one{LayerKind::C1, 2, 1};
  StateVector stepwise = StateVector::amplitude_embed(x, 2);
  for (int layer = 0; layer < 2; ++layer)
    for (const Gate& g :
         layer_gates(one, std::span<const double>(theta).subspan(layer * 4, 4)))
      stepwise.apply(g);
  for (int i = 0; i < 4; ++i)
    CHECK(std::abs(direct.amplitudes()[i] - stepwise.amplitudes()[i]) < 1e-12);
}

TEST_CASE("qubit count rule") {
  CHECK(qubit_count(4) == 2);
  CHECK(qubit_count(8) == 3);
  CHECK(qubit_count(3) == 2);
  CHECK(qubit_count(2) == 2);  // padding rule keeps entangling layers usable
  CHECK(qubit_count(1) == 2);
  CHECK(qubit_count(5) == 3);
  CHECK_THROWS(qubit_count(0));
}

TEST_CASE("spec validation") {
  CHECK_THROWS(CircuitSpec{LayerKind::Circular, 1, 1}.validate());
  CHECK_THROWS(CircuitSpec{LayerKind::C1, 2, 5}.validate());
  CHECK_NOTHROW(CircuitSpec{LayerKind::C1, 2, 8}.validate());
  Gate bad{GateKind::Rx, 5, -1, {0.1}};
  StateVector sv(2);
  CHECK_THROWS(sv.apply(bad));
}
