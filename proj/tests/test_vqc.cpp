#include <doctest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qarp/generators.hpp"
#include "qarp/sweep.hpp"

using namespace qarp;

namespace {

constexpr double kPi = std::numbers::pi;

/// Random probe with every hinge term comfortably away from its kink, so
/// the central difference is a valid derivative estimate.
struct Probe {
  QuantumClassifier model;
  Eigen::MatrixXd batch;
  std::vector<int> labels;
};

Probe make_smooth_probe(LayerKind kind, int n_qubits, int n_classes, std::mt19937_64& rng,
                        double margin) {
  std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int n_layers = 1 + static_cast<int>(rng() % 2);
  CircuitSpec spec{kind, n_qubits, n_layers};
  for (int attempt = 0; attempt < 200; ++attempt) {
    Probe p;
    p.model = QuantumClassifier::random_init(spec, n_classes, rng());
    p.batch.resize(3, 1 << n_qubits);
    p.labels.resize(3);
    for (int i = 0; i < 3; ++i) {
      for (int f = 0; f < (1 << n_qubits); ++f) p.batch(i, f) = gauss(rng);
      p.labels[i] = static_cast<int>(rng() % n_classes);
    }
    bool smooth = true;
    std::vector<double> x(p.batch.cols());
    for (int i = 0; i < 3 && smooth; ++i) {
      Eigen::Map<Eigen::VectorXd>(x.data(), p.batch.cols()) = p.batch.row(i);
      const auto s = p.model.scores(x);
      for (int j = 0; j < n_classes; ++j) {
        if (j == p.labels[i]) continue;
        if (std::abs(margin - s[p.labels[i]] + s[j]) < 1e-3) smooth = false;
      }
    }
    if (smooth) return p;
  }
  throw std::runtime_error("no smooth probe found");
}

}  // namespace

TEST_CASE("margin loss values") {
  CHECK(margin_loss(std::vector<double>{1, -1}, 0, 0.15) == doctest::Approx(0.0));
  CHECK(margin_loss(std::vector<double>{0, 0}, 0, 0.15) == doctest::Approx(0.15));
  CHECK(margin_loss(std::vector<double>{-0.2, 0.3, 0.1}, 0, 0.15) == doctest::Approx(1.10));
  CHECK(margin_loss(std::vector<double>{0.5, 0.1}, 1, 0.15) == doctest::Approx(0.55));
  CHECK_THROWS(margin_loss(std::vector<double>{0.5}, 3, 0.15));
  // Non-negative, zero only when every margin is satisfied.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> s{u(rng), u(rng), u(rng)};
    const double loss = margin_loss(s, 0, 0.15);
    CHECK(loss >= 0.0);
    bool satisfied = s[0] - s[1] >= 0.15 && s[0] - s[2] >= 0.15;
    CHECK((loss == 0.0) == satisfied);
  }
}

TEST_CASE("scores: identical zero circuits tie and stay in range") {
  CircuitSpec spec{LayerKind::C2, 2, 1};
  QuantumClassifier model;
  model.spec = spec;
  model.n_classes = 3;
  model.theta = ThetaMatrix::Zero(3, spec.total_params());
  const std::vector<double> basis{1, 0, 0, 0};
  const auto s = model.scores(basis);
  REQUIRE(s.size() == 3);
  for (double v : s) CHECK(v == doctest::Approx(1.0));
  CHECK(model.predict(basis) == 0);  // tie goes to the lowest class

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int t = 0; t < 10; ++t) {
    QuantumClassifier m = QuantumClassifier::random_init({LayerKind::Circular, 2, 2}, 2, rng());
    std::vector<double> x(4);
    for (double& v : x) v = gauss(rng);
    const auto sc = m.scores(x);
    for (int c = 0; c < 2; ++c) {
      CHECK(sc[c] >= -1.0);
      CHECK(sc[c] <= 1.0);
      // probability-difference oracle over all outcomes
      const StateVector sv = run_circuit(
          m.spec, std::span<const double>(m.theta.row(c).data(), m.theta.cols()), x);
      oracles::CVec amps(4);
      for (int i = 0; i < 4; ++i) amps[i] = sv.amplitudes()[i];
      CHECK(sc[c] ==
            doctest::Approx(oracles::expectation_z_by_outcomes(amps, 2, 0)).epsilon(1e-12));
    }
  }
}

TEST_CASE("adjoint score gradient matches the analytic single-gate derivative") {
  // One Rx gate on |0..0>: score = <Z_0> = cos(theta); d/dtheta = -sin.
  CircuitSpec spec{LayerKind::C1, 2, 1};
  for (double theta : {0.3, 1.1, 2.9, -0.7}) {
    std::vector<double> params{theta, 0.0, 0.0, 0.0};  // Rx on wire 0 only
    const auto grad = score_gradient(spec, params, std::vector<double>{1, 0, 0, 0});
    CHECK(grad[0] == doctest::Approx(-std::sin(theta)).epsilon(1e-9));
  }
}

TEST_CASE("loss gradient: flat region is exactly zero, batching is linear") {
  CircuitSpec spec{LayerKind::C1, 2, 1};
  QuantumClassifier model = QuantumClassifier::random_init(spec, 2, 11);
  Eigen::MatrixXd batch(1, 4);
  batch << 1, 0, 0, 0;
  std::vector<int> labels{0};

  // Active hinge away from a stationary point: nonzero gradient.
  model.theta.setZero();
  model.theta(0, 0) = 0.7;  // class 0 scores cos(0.7), class 1 scores +1
  const ThetaMatrix g = margin_loss_gradient(model, batch, labels, 0.15);
  CHECK(g(0, 0) == doctest::Approx(std::sin(0.7)).epsilon(1e-9));

  // True class ahead by far more than the margin: every hinge inactive.
  model.theta(0, 0) = 0.0;
  model.theta(1, 0) = kPi;  // class 1 scores -1 on wire 0
  const ThetaMatrix flat = margin_loss_gradient(model, batch, labels, 0.15);
  CHECK(flat.cwiseAbs().maxCoeff() == doctest::Approx(0.0));

  // Linearity of batch averaging.
  std::mt19937_64 rng(13);
  std::normal_distribution<double> gauss(0.0, 1.0);
  QuantumClassifier m2 = QuantumClassifier::random_init(spec, 2, 17);
  Eigen::MatrixXd big(4, 4);
  std::vector<int> ylab{0, 1, 0, 1};
  for (int i = 0; i < 4; ++i)
    for (int f = 0; f < 4; ++f) big(i, f) = gauss(rng);
  const ThetaMatrix whole = margin_loss_gradient(m2, big, ylab, 0.15);
  const ThetaMatrix a = margin_loss_gradient(m2, big.topRows(2), std::vector<int>{0, 1}, 0.15);
  const ThetaMatrix b =
      margin_loss_gradient(m2, big.bottomRows(2), std::vector<int>{0, 1}, 0.15);
  CHECK(((a + b) / 2 - whole).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("adjoint gradient agrees with central finite differences per layer kind") {
  std::mt19937_64 rng(19);
  const double margin = 0.15;
  for (LayerKind kind : kAllLayerKinds) {
    for (int trial = 0; trial < 4; ++trial) {
      const int n_qubits = 2 + trial % 2;
      const int n_classes = 2 + trial % 2;
      const Probe p = make_smooth_probe(kind, n_qubits, n_classes, rng, margin);
      const ThetaMatrix fast = margin_loss_gradient(p.model, p.batch, p.labels, margin);
      const ThetaMatrix slow = margin_loss_gradient_fd(p.model, p.batch, p.labels, margin);
      CHECK((fast - slow).cwiseAbs().maxCoeff() < 1e-5);
    }
  }
}

TEST_CASE("adam optimizer") {
  SUBCASE("zero gradient leaves parameters unchanged") {
    ThetaMatrix theta = ThetaMatrix::Constant(2, 3, 1.5);
    AdamState opt = AdamState::like(theta);
    adam_step(theta, ThetaMatrix::Zero(2, 3), opt, 0.01);
    CHECK((theta.array() == 1.5).all());
  }
  SUBCASE("first step has magnitude close to the learning rate") {
    ThetaMatrix theta = ThetaMatrix::Zero(1, 2);
    ThetaMatrix grad(1, 2);
    grad << 0.3, -4.0;
    AdamState opt = AdamState::like(theta);
    adam_step(theta, grad, opt, 0.01);
    CHECK(theta(0, 0) == doctest::Approx(-0.01).epsilon(1e-4));
    CHECK(theta(0, 1) == doctest::Approx(0.01).epsilon(1e-4));
  }
  SUBCASE("minimizes a scalar quadratic") {
    ThetaMatrix theta = ThetaMatrix::Constant(1, 1, 1.0);
    AdamState opt = AdamState::like(theta);
    double prev = 1.0;
    bool monotone_after_burnin = true;
    for (int step = 0; step < 100; ++step) {
      ThetaMatrix grad = 2.0 * theta;  // d/dx of x^2
      adam_step(theta, grad, opt, 0.01);
      if (step > 20 && std::abs(theta(0, 0)) > std::abs(prev) + 1e-12)
        monotone_after_burnin = false;
      prev = theta(0, 0);
    }
    CHECK(monotone_after_burnin);
    CHECK(std::abs(theta(0, 0)) < 0.5);
  }
}

TEST_CASE("training separates well-spread blobs") {
  Dataset ds = prepare_for_circuit(gen_blobs(4, 2, 120, 0.5, 23));
  Hyperparams hp;
  hp.max_epochs = 30;
  const TrainTrace trace = train(ds, {LayerKind::C1, 2, 1}, hp, 31);
  CHECK(trace.test_accuracy.size() == 30);
  CHECK(trace.max_accuracy > 0.9);
  // Trace maximum is consistent.
  CHECK(*std::max_element(trace.test_accuracy.begin(), trace.test_accuracy.end()) ==
        doctest::Approx(trace.max_accuracy));
}

TEST_CASE("training loss reaches hinge zero on separated blobs") {
  Dataset ds = prepare_for_circuit(gen_blobs(4, 2, 60, 0.3, 37));
  Hyperparams hp;
  const TrainTrace trace = train(ds, {LayerKind::C1, 2, 1}, hp, 41);
  const double final_loss =
      batch_margin_loss(trace.model, ds.features, ds.labels, hp.margin);
  CHECK(final_loss < 1e-3);
}

TEST_CASE("identical point clouds for both classes stay at chance") {
  Dataset ds = gen_blobs(2, 2, 60, 0.5, 43);
  // Overwrite class 1 with a copy of class 0's points.
  std::vector<int> c0;
  for (int i = 0; i < ds.n_samples(); ++i)
    if (ds.labels[i] == 0) c0.push_back(i);
  int k = 0;
  for (int i = 0; i < ds.n_samples(); ++i)
    if (ds.labels[i] == 1) ds.features.row(i) = ds.features.row(c0[k++ % c0.size()]);
  Dataset prep = prepare_for_circuit(ds);
  Hyperparams hp;
  hp.max_epochs = 20;
  const TrainTrace trace = train(prep, {LayerKind::C1, 2, 2}, hp, 47);
  // No signal: accuracy hovers at the class prior, with small-sample slack.
  CHECK(trace.max_accuracy < 0.85);
}

TEST_CASE("evaluate aggregates repetitions deterministically") {
  Dataset ds = gen_blobs(4, 2, 60, 0.5, 53);
  Hyperparams hp;
  hp.max_epochs = 5;
  hp.repetitions = 3;
  const TrainResult a = evaluate(ds, {LayerKind::C2, 2, 1}, hp, 59);
  const TrainResult b = evaluate(ds, {LayerKind::C2, 2, 1}, hp, 59);
  REQUIRE(a.rep_max_accuracy.size() == 3);
  CHECK(a.rep_max_accuracy == b.rep_max_accuracy);
  CHECK(a.mean == doctest::Approx(mean_of(a.rep_max_accuracy)));

  // Order invariance given fixed split seeds: evaluate() takes the raw
  // dataset, so a row permutation changes nothing about the protocol.
  Dataset shuffled = ds;
  std::vector<int> perm(ds.n_samples());
  std::iota(perm.begin(), perm.end(), 0);
  auto rng = make_rng(61);
  std::shuffle(perm.begin(), perm.end(), rng);
  for (int i = 0; i < ds.n_samples(); ++i) {
    shuffled.features.row(i) = ds.features.row(perm[i]);
    shuffled.labels[i] = ds.labels[perm[i]];
  }
  const TrainResult c = evaluate(shuffled, {LayerKind::C2, 2, 1}, hp, 59);
  CHECK(c.mean == doctest::Approx(a.mean).epsilon(0.2));  // statistically alike
}

TEST_CASE("sweep skips circular and full on 2-raw-feature data") {
  std::vector<Dataset> sets;
  sets.push_back(gen_xor(40, 67));
  sets.back().name = "xor-small";
  sets.push_back(gen_blobs(4, 2, 40, 0.5, 71));
  sets.back().name = "blobs4";
  Hyperparams hp;
  hp.max_epochs = 2;
  hp.repetitions = 1;
  const std::vector<int> counts{1};
  const SweepSummary s = sweep(sets, kAllLayerKinds, counts, hp, 73, 2);

  for (const SweepCell& cell : s.cells) {
    const bool skip_kind =
        cell.layer_kind == LayerKind::Circular || cell.layer_kind == LayerKind::Full;
    if (cell.dataset == "xor-small") CHECK(!skip_kind);
  }
  CHECK_NOTHROW(s.at("blobs4", LayerKind::Full));
  CHECK(s.at("blobs4", LayerKind::Full).present);
  CHECK(!s.at("xor-small", LayerKind::Full).present);

  // Thread count must not change results.
  const SweepSummary s1 = sweep(sets, kAllLayerKinds, counts, hp, 73, 1);
  REQUIRE(s1.cells.size() == s.cells.size());
  for (size_t i = 0; i < s.cells.size(); ++i)
    CHECK(s.cells[i].rep_max_accuracy == s1.cells[i].rep_max_accuracy);
}

TEST_CASE("sweep table writers round-trip") {
  std::vector<Dataset> sets;
  sets.push_back(gen_blobs(4, 2, 40, 0.5, 79));
  sets.back().name = "b";
  Hyperparams hp;
  hp.max_epochs = 2;
  hp.repetitions = 2;
  const std::vector<int> counts{1, 2};
  const SweepSummary s = sweep(sets, kAllLayerKinds, counts, hp, 83, 2);
  const std::string path = "/tmp/qarp_sweep_raw_test.csv";
  write_sweep_raw(s, path);
  const SweepSummary back = read_sweep_raw(path);
  REQUIRE(back.cells.size() == s.cells.size());
  for (size_t i = 0; i < s.cells.size(); ++i) {
    CHECK(back.cells[i].dataset == s.cells[i].dataset);
    CHECK(back.cells[i].mean == doctest::Approx(s.cells[i].mean).epsilon(1e-15));
  }
  CHECK(back.at("b", LayerKind::C1).accuracy ==
        doctest::Approx(s.at("b", LayerKind::C1).accuracy));
  std::remove(path.c_str());
}
