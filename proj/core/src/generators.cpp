#include "qarp/generators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qarp/rng.hpp"

namespace qarp {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<int> balanced_counts(int n_samples, int n_groups) {
  std::vector<int> counts(n_groups, n_samples / n_groups);
  for (int g = 0; g < n_samples % n_groups; ++g) ++counts[g];
  return counts;
}

double pairwise_angle(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double na = a.norm(), nb = b.norm();
  if (na <= 0.0 || nb <= 0.0) return 0.0;
  const double c = std::clamp(a.dot(b) / (na * nb), -1.0, 1.0);
  return std::acos(c);
}

}  // namespace

Dataset gen_blobs(int n_features, int n_classes, int n_samples, double std_dev, uint64_t seed) {
  if (n_features != 2 && n_features != 4)
    throw std::invalid_argument("gen_blobs: n_features must be 2 or 4");
  if (n_classes < 2 || n_classes > 4)
    throw std::invalid_argument("gen_blobs: n_classes must be 2, 3 or 4");
  if (std_dev <= 0.0) throw std::invalid_argument("gen_blobs: std_dev must be positive");
  if (n_samples < 2 * n_classes) throw std::invalid_argument("gen_blobs: too few samples");

  auto rng = make_rng(seed);
  std::uniform_real_distribution<double> box(-10.0, 10.0);

  // Separation in both distance and direction: the circuits consume
  // sample-normalized rows, so two centers on (nearly) the same ray would
  // collapse onto each other after normalization.
  const double min_dist = 4.0 * std_dev;
  const double min_angle = 0.8;
  const double min_norm = 4.0;
  std::vector<Eigen::VectorXd> centers;
  bool ok = false;
  for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
    centers.assign(n_classes, Eigen::VectorXd(n_features));
    for (auto& c : centers)
      for (int f = 0; f < n_features; ++f) c[f] = box(rng);
    ok = true;
    for (int a = 0; a < n_classes && ok; ++a) {
      if (centers[a].norm() < min_norm) ok = false;
      for (int b = a + 1; b < n_classes && ok; ++b) {
        if ((centers[a] - centers[b]).norm() < min_dist) ok = false;
        if (pairwise_angle(centers[a], centers[b]) < min_angle) ok = false;
      }
    }
  }
  if (!ok) throw std::runtime_error("gen_blobs: no admissible center layout after 100 draws");

  const auto counts = balanced_counts(n_samples, n_classes);
  Dataset ds;
  ds.name = "blobs";
  ds.n_classes = n_classes;
  ds.raw_feature_count = n_features;
  ds.features.resize(n_samples, n_features);
  ds.labels.resize(n_samples);
  std::normal_distribution<double> noise(0.0, std_dev);
  int row = 0;
  for (int c = 0; c < n_classes; ++c)
    for (int i = 0; i < counts[c]; ++i, ++row) {
      for (int f = 0; f < n_features; ++f) ds.features(row, f) = centers[c][f] + noise(rng);
      ds.labels[row] = c;
    }
  ds.validate();
  return ds;
}

Dataset gen_circles(int n_samples, double factor, uint64_t seed, double jitter) {
  if (factor <= 0.0 || factor >= 1.0)
    throw std::invalid_argument("gen_circles: factor must be in (0, 1)");
  if (n_samples < 4) throw std::invalid_argument("gen_circles: need at least 4 samples");

  const auto counts = balanced_counts(n_samples, 2);
  auto rng = make_rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);

  Dataset ds;
  ds.name = "circles";
  ds.n_classes = 2;
  ds.raw_feature_count = 2;
  ds.features.resize(n_samples, 2);
  ds.labels.resize(n_samples);
  int row = 0;
  for (int cls = 0; cls < 2; ++cls) {
    const double r = (cls == 0) ? 1.0 : factor;
    for (int i = 0; i < counts[cls]; ++i, ++row) {
      const double t = 2.0 * kPi * i / counts[cls];
      ds.features(row, 0) = r * std::cos(t) + jitter * noise(rng);
      ds.features(row, 1) = r * std::sin(t) + jitter * noise(rng);
      ds.labels[row] = cls;
    }
  }
  ds.validate();
  return ds;
}

Dataset gen_moons(int n_samples, uint64_t seed, double jitter) {
  if (n_samples < 4) throw std::invalid_argument("gen_moons: need at least 4 samples");

  const auto counts = balanced_counts(n_samples, 2);
  auto rng = make_rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);

  Dataset ds;
  ds.name = "moons";
  ds.n_classes = 2;
  ds.raw_feature_count = 2;
  ds.features.resize(n_samples, 2);
  ds.labels.resize(n_samples);
  int row = 0;
  for (int i = 0; i < counts[0]; ++i, ++row) {
    const double t = counts[0] > 1 ? kPi * i / (counts[0] - 1) : 0.0;
    ds.features(row, 0) = std::cos(t) + jitter * noise(rng);
    ds.features(row, 1) = std::sin(t) + jitter * noise(rng);
    ds.labels[row] = 0;
  }
  for (int i = 0; i < counts[1]; ++i, ++row) {
    const double t = counts[1] > 1 ? kPi * i / (counts[1] - 1) : 0.0;
    ds.features(row, 0) = 1.0 - std::cos(t) + jitter * noise(rng);
    ds.features(row, 1) = 0.5 - std::sin(t) + jitter * noise(rng);
    ds.labels[row] = 1;
  }
  ds.validate();
  return ds;
}

Dataset gen_xor(int n_samples, uint64_t seed, double offset, double std_dev) {
  if (n_samples < 4) throw std::invalid_argument("gen_xor: need at least 4 samples");

  // Diagonal blob pairs share a class.
  const double sx[4] = {+1, -1, +1, -1};
  const double sy[4] = {+1, -1, -1, +1};
  const int blob_class[4] = {0, 0, 1, 1};

  const auto counts = balanced_counts(n_samples, 4);
  auto rng = make_rng(seed);
  std::normal_distribution<double> noise(0.0, std_dev);

  Dataset ds;
  ds.name = "xor";
  ds.n_classes = 2;
  ds.raw_feature_count = 2;
  ds.features.resize(n_samples, 2);
  ds.labels.resize(n_samples);
  int row = 0;
  for (int b = 0; b < 4; ++b)
    for (int i = 0; i < counts[b]; ++i, ++row) {
      ds.features(row, 0) = sx[b] * offset + noise(rng);
      ds.features(row, 1) = sy[b] * offset + noise(rng);
      ds.labels[row] = blob_class[b];
    }
  ds.validate();
  return ds;
}

namespace {

Dataset two_class_gaussian(const std::string& name, int n0, int n1,
                           const std::vector<double>& mean0, const std::vector<double>& mean1,
                           const std::vector<double>& sd0, const std::vector<double>& sd1,
                           uint64_t seed) {
  const int m = static_cast<int>(mean0.size());
  auto rng = make_rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  Dataset ds;
  ds.name = name;
  ds.n_classes = 2;
  ds.raw_feature_count = m;
  ds.features.resize(n0 + n1, m);
  ds.labels.resize(n0 + n1);
  int row = 0;
  for (int i = 0; i < n0; ++i, ++row) {
    for (int f = 0; f < m; ++f) ds.features(row, f) = mean0[f] + sd0[f] * noise(rng);
    ds.labels[row] = 0;
  }
  for (int i = 0; i < n1; ++i, ++row) {
    for (int f = 0; f < m; ++f) ds.features(row, f) = mean1[f] + sd1[f] * noise(rng);
    ds.labels[row] = 1;
  }
  ds.validate();
  return ds;
}

}  // namespace

Dataset gen_pima_like(uint64_t seed) {
  // pregnancies, glucose, pressure, skin, insulin, bmi, pedigree, age
  return two_class_gaussian(
      "pima-like", 500, 268,
      {3.3, 110.0, 68.0, 19.7, 68.0, 30.3, 0.43, 31.2},
      {4.9, 141.0, 70.8, 22.2, 100.0, 35.1, 0.55, 37.1},
      {3.0, 26.0, 18.0, 14.8, 98.0, 7.7, 0.30, 11.7},
      {3.7, 31.9, 21.5, 17.7, 138.0, 7.3, 0.37, 11.0}, seed);
}

Dataset gen_banknote_like(uint64_t seed) {
  // variance, skewness, curtosis, entropy of the wavelet transform
  return two_class_gaussian(
      "banknote-like", 762, 610,
      {2.28, 4.26, 0.80, -1.15},
      {-1.87, -0.99, 2.15, -1.25},
      {2.02, 5.14, 3.24, 2.07},
      {1.88, 5.40, 5.26, 2.07}, seed);
}

Dataset gen_haberman_like(uint64_t seed) {
  // age, year of operation, positive axillary nodes
  Dataset ds = two_class_gaussian(
      "haberman-like", 225, 81,
      {52.0, 62.9, 2.8},
      {53.7, 62.8, 7.5},
      {11.0, 3.2, 5.9},
      {10.2, 3.3, 9.2}, seed);
  // Node counts are non-negative in the source data.
  for (int i = 0; i < ds.n_samples(); ++i)
    ds.features(i, 2) = std::max(0.0, ds.features(i, 2));
  return ds;
}

}  // namespace qarp
