#include <doctest.h>

#include <random>

#include "qarp/generators.hpp"
#include "qarp/learners.hpp"

using namespace qarp;

namespace {

Eigen::MatrixXd column(std::initializer_list<double> vals) {
  Eigen::MatrixXd x(vals.size(), 1);
  Eigen::Index i = 0;
  for (double v : vals) x(i++, 0) = v;
  return x;
}

}  // namespace

TEST_CASE("metrics") {
  std::vector<int> a{1, 2, 3}, b{1, 2, 3}, c{1, 2, 4};
  CHECK(accuracy(a, b) == doctest::Approx(1.0));
  CHECK(accuracy(a, c) == doctest::Approx(2.0 / 3));
  std::vector<double> t{1, 16}, p{1, 8};
  CHECK(mean_absolute_error(t, t) == doctest::Approx(0.0));
  CHECK(mean_absolute_error(t, p) == doctest::Approx(4.0));
  CHECK_THROWS(accuracy(a, std::vector<int>{1}));

  // Random recount against a direct loop.
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> lab(0, 4);
  std::vector<int> y1(50), y2(50);
  for (int i = 0; i < 50; ++i) {
    y1[i] = lab(rng);
    y2[i] = lab(rng);
  }
  int same = 0;
  for (int i = 0; i < 50; ++i) same += y1[i] == y2[i];
  CHECK(accuracy(y1, y2) == doctest::Approx(same / 50.0));
}

TEST_CASE("decision tree splits one-feature threshold data perfectly") {
  const Eigen::MatrixXd X = column({0, 1, 2, 3});
  const std::vector<int> y{0, 0, 1, 1};
  auto dt = make_classifier("DT");
  dt->fit(X, y);
  CHECK(dt->predict(X) == y);
  // The split lands between the classes.
  CHECK(dt->predict_one(column({1.4}).row(0).transpose()) == 0);
  CHECK(dt->predict_one(column({1.6}).row(0).transpose()) == 1);
}

TEST_CASE("kNN with k equal to the sample count votes the global majority") {
  const Eigen::MatrixXd X = column({0, 1, 2, 3, 4});
  const std::vector<int> y{1, 1, 1, 0, 0};
  auto knn = make_classifier("kNN");
  knn->fit(X, y);
  for (double q : {-5.0, 0.0, 2.0, 10.0})
    CHECK(knn->predict_one(column({q}).row(0).transpose()) == 1);
}

TEST_CASE("kNN ignores duplicates beyond rank k") {
  Eigen::MatrixXd X(7, 1);
  X << 0, 0.1, 0.2, 0.3, 0.4, 5.0, 5.0;
  std::vector<int> y{0, 0, 0, 0, 0, 1, 1};
  auto knn = make_classifier("kNN");
  knn->fit(X, y);
  const int before = knn->predict_one(column({0.2}).row(0).transpose());

  Eigen::MatrixXd X2(8, 1);
  X2 << 0, 0.1, 0.2, 0.3, 0.4, 5.0, 5.0, 5.0;  // extra far duplicate
  std::vector<int> y2{0, 0, 0, 0, 0, 1, 1, 1};
  auto knn2 = make_classifier("kNN");
  knn2->fit(X2, y2);
  CHECK(knn2->predict_one(column({0.2}).row(0).transpose()) == before);
}

TEST_CASE("nearest centroid") {
  const Eigen::MatrixXd X = column({0, 0, 10, 10});
  const std::vector<int> y{0, 0, 1, 1};
  auto nc = make_classifier("NearestCentroid");
  nc->fit(X, y);
  CHECK(nc->predict_one(column({2}).row(0).transpose()) == 0);
  CHECK(nc->predict_one(column({8}).row(0).transpose()) == 1);
}

TEST_CASE("gaussian naive bayes matches a direct posterior computation") {
  Eigen::MatrixXd X(6, 1);
  X << 0.0, 1.0, 2.0, 9.0, 10.0, 11.0;
  const std::vector<int> y{0, 0, 0, 1, 1, 1};
  auto nb = make_classifier("NaiveBayes");
  nb->fit(X, y);

  // Both classes: mean 1 or 10, variance 2/3, priors equal; the posterior
  // argmax reduces to the nearest mean.
  auto direct = [&](double q) {
    const double var = 2.0 / 3.0;
    const double lp0 = -(q - 1.0) * (q - 1.0) / (2 * var);
    const double lp1 = -(q - 10.0) * (q - 10.0) / (2 * var);
    return lp0 >= lp1 ? 0 : 1;
  };
  for (double q : {-3.0, 1.2, 5.4, 5.6, 9.9, 20.0})
    CHECK(nb->predict_one(column({q}).row(0).transpose()) == direct(q));
}

TEST_CASE("gaussian naive bayes survives constant features") {
  Eigen::MatrixXd X(4, 2);
  X << 0, 7, 1, 7, 10, 7, 11, 7;  // second feature constant
  const std::vector<int> y{0, 0, 1, 1};
  auto nb = make_classifier("NaiveBayes");
  nb->fit(X, y);
  Eigen::VectorXd q(2);
  q << 0.5, 7.0;
  CHECK(nb->predict_one(q) == 0);
}

TEST_CASE("linear regression interpolates an exact line") {
  Eigen::MatrixXd X(5, 1);
  X << 0, 1, 2, 3, 4;
  std::vector<double> y;
  for (int i = 0; i < 5; ++i) y.push_back(2.0 * i + 1.0);
  auto lr = make_regressor("Linear Regression");
  lr->fit(X, y);
  for (double q : {0.0, 2.5, 10.0})
    CHECK(lr->predict_one(column({q}).row(0).transpose()) ==
          doctest::Approx(2 * q + 1).epsilon(1e-9));
}

TEST_CASE("least-squares residuals are orthogonal to the design columns") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd X(40, 3);
  std::vector<double> y(40);
  for (int i = 0; i < 40; ++i) {
    for (int f = 0; f < 3; ++f) X(i, f) = gauss(rng);
    y[i] = 3 * X(i, 0) - 2 * X(i, 1) + 0.5 + gauss(rng);
  }
  auto lr = make_regressor("Linear Regression");
  lr->fit(X, y);
  const auto pred = lr->predict(X);
  Eigen::VectorXd resid(40);
  for (int i = 0; i < 40; ++i) resid[i] = y[i] - pred[i];
  for (int f = 0; f < 3; ++f) CHECK(std::abs(X.col(f).dot(resid)) < 1e-8);
  CHECK(std::abs(resid.sum()) < 1e-8);  // intercept column
}

TEST_CASE("linear svm separates wide-margin blobs and fails on xor") {
  const Dataset blobs = gen_blobs(2, 2, 200, 0.3, 31);
  const LinearModel m = train_linear_svm(blobs.features, blobs.labels);
  int errors = 0;
  for (int i = 0; i < blobs.n_samples(); ++i)
    errors += m.predict(blobs.features.row(i).transpose()) != blobs.labels[i];
  CHECK(errors == 0);

  const Dataset xo = gen_xor(400, 31);
  const LinearModel mx = train_linear_svm(xo.features, xo.labels);
  int xerr = 0;
  for (int i = 0; i < xo.n_samples(); ++i)
    xerr += mx.predict(xo.features.row(i).transpose()) != xo.labels[i];
  const double err_rate = static_cast<double>(xerr) / xo.n_samples();
  CHECK(err_rate > 0.35);
  CHECK(err_rate < 0.65);
}

TEST_CASE("adaboost regressor drives training error down on a tree-representable target") {
  Eigen::MatrixXd X(20, 1);
  std::vector<double> y(20);
  for (int i = 0; i < 20; ++i) {
    X(i, 0) = i;
    y[i] = i;
  }
  auto ab = make_regressor("Adaboost");
  ab->fit(X, y, 7);
  const auto pred = ab->predict(X);
  CHECK(mean_absolute_error(y, pred) < 0.05);
}

TEST_CASE("adaboost classifier keeps weak-learner errors below chance") {
  // Contradictory duplicates force nonzero training error, boosting must
  // re-weight without ever exceeding the SAMME chance threshold.
  Eigen::MatrixXd X(8, 1);
  X << 0, 0, 1, 1, 2, 2, 3, 3;
  const std::vector<int> y{0, 1, 0, 1, 0, 0, 1, 1};
  auto ab = make_classifier("Ensemble-AB");
  ab->fit(X, y, 5);
  const auto errors = adaboost_stage_errors(*ab);
  REQUIRE(!errors.empty());
  const double chance = 1.0 - 1.0 / 2.0;
  for (size_t t = 0; t + 1 < errors.size(); ++t) CHECK(errors[t] < chance);
  // Prediction still works.
  CHECK_NOTHROW(ab->predict(X));
}

TEST_CASE("random forest prediction equals the mode of its trees") {
  const Dataset ds = gen_blobs(2, 3, 60, 1.5, 37);
  auto rf = make_classifier("RF");
  rf->fit(ds.features, ds.labels, 11);
  for (int i = 0; i < ds.n_samples(); i += 7) {
    const Eigen::VectorXd x = ds.features.row(i).transpose();
    const auto votes = forest_tree_votes(*rf, x);
    REQUIRE(votes.size() == 10);
    std::vector<int> tally(3, 0);
    for (int v : votes) ++tally[v];
    const int mode = static_cast<int>(std::max_element(tally.begin(), tally.end()) -
                                      tally.begin());
    CHECK(rf->predict_one(x) == mode);
  }
}

TEST_CASE("trees grown to purity reach training accuracy 1 on consistent data") {
  const Dataset ds = gen_blobs(4, 3, 90, 2.0, 41);
  for (const char* kind : {"DT", "RF-nobootstrap", "Ensemble-GB", "Ensemble-AB"}) {
    auto model = make_classifier(kind);
    model->fit(ds.features, ds.labels, 13);
    CHECK_MESSAGE(accuracy(ds.labels, model->predict(ds.features)) == doctest::Approx(1.0),
                  kind);
  }
}

TEST_CASE("every report-table model kind fits and predicts") {
  const Dataset ds = gen_blobs(2, 2, 60, 0.8, 43);
  for (const auto& kind : classifier_kind_names()) {
    auto model = make_classifier(kind);
    model->fit(ds.features, ds.labels, 3);
    const auto pred = model->predict(ds.features);
    for (int p : pred) {
      CHECK(p >= 0);
      CHECK(p < 2);
    }
    // Blobs this wide apart should be easy for everything.
    CHECK_MESSAGE(accuracy(ds.labels, pred) > 0.9, kind);
  }
  std::vector<double> target(ds.n_samples());
  for (int i = 0; i < ds.n_samples(); ++i) target[i] = ds.features(i, 0);
  for (const auto& kind : regressor_kind_names()) {
    auto model = make_regressor(kind);
    model->fit(ds.features, target, 3);
    CHECK_NOTHROW(model->predict(ds.features));
  }
}

TEST_CASE("single-class fitting predicts the constant label") {
  const Eigen::MatrixXd X = column({1, 2, 3});
  const std::vector<int> y{0, 0, 0};
  for (const auto& kind : classifier_kind_names()) {
    auto model = make_classifier(kind);
    model->fit(X, y);
    CHECK_MESSAGE(model->predict_one(column({9}).row(0).transpose()) == 0, kind);
  }
}

TEST_CASE("prediction errors") {
  auto dt = make_classifier("DT");
  CHECK_THROWS(dt->predict(column({1})));  // not fitted
  dt->fit(column({0, 1}), {0, 1});
  Eigen::MatrixXd wide(1, 2);
  wide << 1, 2;
  CHECK_THROWS(dt->predict(wide));  // width mismatch
  CHECK_THROWS(make_classifier("MLP-500"));
  CHECK_THROWS(make_regressor("SVR-RBF"));
}

TEST_CASE("determinism given data and seed") {
  const Dataset ds = gen_blobs(4, 2, 80, 1.0, 47);
  for (const char* kind : {"RF", "Ensemble-Bg", "Ensemble-AB"}) {
    auto m1 = make_classifier(kind);
    auto m2 = make_classifier(kind);
    m1->fit(ds.features, ds.labels, 99);
    m2->fit(ds.features, ds.labels, 99);
    CHECK(m1->predict(ds.features) == m2->predict(ds.features));
  }
}
