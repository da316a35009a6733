#include "qarp/learners.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "qarp/rng.hpp"

namespace qarp {

double accuracy(std::span<const int> y_true, std::span<const int> y_pred) {
  if (y_true.size() != y_pred.size() || y_true.empty())
    throw std::invalid_argument("accuracy: length mismatch or empty input");
  size_t hits = 0;
  for (size_t i = 0; i < y_true.size(); ++i) hits += y_true[i] == y_pred[i];
  return static_cast<double>(hits) / static_cast<double>(y_true.size());
}

double mean_absolute_error(std::span<const double> y_true, std::span<const double> y_pred) {
  if (y_true.size() != y_pred.size() || y_true.empty())
    throw std::invalid_argument("mean_absolute_error: length mismatch or empty input");
  double acc = 0.0;
  for (size_t i = 0; i < y_true.size(); ++i) acc += std::abs(y_true[i] - y_pred[i]);
  return acc / static_cast<double>(y_true.size());
}

LinearModel train_linear_svm(const Eigen::MatrixXd& X, std::span<const int> y01, double C,
                             int iterations, double step) {
  const Eigen::Index n = X.rows(), m = X.cols();
  if (n == 0 || n != static_cast<Eigen::Index>(y01.size()))
    throw std::invalid_argument("train_linear_svm: bad shapes");
  Eigen::VectorXd sign(n);
  for (Eigen::Index i = 0; i < n; ++i) sign[i] = y01[i] > 0 ? 1.0 : -1.0;

  LinearModel model;
  model.w = Eigen::VectorXd::Zero(m);
  model.b = 0.0;
  const double reg = 1.0 / (C * static_cast<double>(n));
  for (int it = 0; it < iterations; ++it) {
    Eigen::VectorXd margins = sign.array() * (X * model.w).array() + sign.array() * model.b;
    Eigen::VectorXd gw = reg * model.w;
    double gb = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (margins[i] < 1.0) {
        gw -= sign[i] / static_cast<double>(n) * X.row(i).transpose();
        gb -= sign[i] / static_cast<double>(n);
      }
    }
    model.w -= step * gw;
    model.b -= step * gb;
  }
  return model;
}

void Classifier::fit(const Eigen::MatrixXd& X, const std::vector<int>& y, uint64_t seed) {
  if (X.rows() == 0 || X.rows() != static_cast<Eigen::Index>(y.size()))
    throw std::invalid_argument("fit: need at least one sample and matching labels");
  n_features_ = static_cast<int>(X.cols());
  n_classes_ = *std::max_element(y.begin(), y.end()) + 1;
  if (*std::min_element(y.begin(), y.end()) < 0)
    throw std::invalid_argument("fit: negative class label");
  do_fit(X, y, seed);
  fitted_ = true;
}

void Classifier::check_ready(Eigen::Index width) const {
  if (!fitted_) throw std::runtime_error("predict before fit");
  if (width != n_features_)
    throw std::invalid_argument("predict: expected " + std::to_string(n_features_) +
                                " features, got " + std::to_string(width));
}

std::vector<int> Classifier::predict(const Eigen::MatrixXd& X) const {
  check_ready(X.cols());
  std::vector<int> out(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) out[i] = do_predict(X.row(i).transpose());
  return out;
}

int Classifier::predict_one(const Eigen::VectorXd& x) const {
  check_ready(x.size());
  return do_predict(x);
}

void Regressor::fit(const Eigen::MatrixXd& X, const std::vector<double>& y, uint64_t seed) {
  if (X.rows() == 0 || X.rows() != static_cast<Eigen::Index>(y.size()))
    throw std::invalid_argument("fit: need at least one sample and matching targets");
  n_features_ = static_cast<int>(X.cols());
  do_fit(X, y, seed);
  fitted_ = true;
}

void Regressor::check_ready(Eigen::Index width) const {
  if (!fitted_) throw std::runtime_error("predict before fit");
  if (width != n_features_)
    throw std::invalid_argument("predict: expected " + std::to_string(n_features_) +
                                " features, got " + std::to_string(width));
}

std::vector<double> Regressor::predict(const Eigen::MatrixXd& X) const {
  check_ready(X.cols());
  std::vector<double> out(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) out[i] = do_predict(X.row(i).transpose());
  return out;
}

double Regressor::predict_one(const Eigen::VectorXd& x) const {
  check_ready(x.size());
  return do_predict(x);
}

// ---------------------------------------------------------------------------
// CART
// ---------------------------------------------------------------------------

namespace {

double weighted_gini(const std::vector<double>& class_w, double total) {
  if (total <= 0.0) return 0.0;
  double s = 0.0;
  for (double w : class_w) s += (w / total) * (w / total);
  return 1.0 - s;
}

int weighted_majority(const std::vector<double>& class_w) {
  int best = 0;
  for (size_t c = 1; c < class_w.size(); ++c)
    if (class_w[c] > class_w[best]) best = static_cast<int>(c);
  return best;
}

}  // namespace

void DecisionTree::fit(const Eigen::MatrixXd& X, std::span<const double> y,
                       std::span<const double> weights, int n_classes, const Options& opts,
                       uint64_t seed) {
  const int n = static_cast<int>(X.rows());
  if (n == 0 || static_cast<int>(y.size()) != n)
    throw std::invalid_argument("DecisionTree::fit: bad shapes");
  opts_ = opts;
  n_classes_ = n_classes;
  nodes_.clear();

  std::vector<double> w(weights.begin(), weights.end());
  if (w.empty()) w.assign(n, 1.0);
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  auto rng = make_rng(seed);
  build(X, y, w, idx, 0, n, 0, rng);
}

int DecisionTree::build(const Eigen::MatrixXd& X, std::span<const double> y,
                        std::span<const double> w, std::vector<int>& idx, int begin, int end,
                        int depth, std::mt19937_64& rng) {
  const int node_id = static_cast<int>(nodes_.size());
  nodes_.emplace_back();

  double total_w = 0.0;
  for (int i = begin; i < end; ++i) total_w += w[idx[i]];

  double node_impurity;
  double leaf_value;
  std::vector<double> class_w;
  if (opts_.classification) {
    class_w.assign(std::max(n_classes_, 1), 0.0);
    for (int i = begin; i < end; ++i) class_w[static_cast<int>(y[idx[i]])] += w[idx[i]];
    node_impurity = weighted_gini(class_w, total_w);
    leaf_value = weighted_majority(class_w);
  } else {
    double sy = 0.0, syy = 0.0;
    for (int i = begin; i < end; ++i) {
      sy += w[idx[i]] * y[idx[i]];
      syy += w[idx[i]] * y[idx[i]] * y[idx[i]];
    }
    leaf_value = total_w > 0.0 ? sy / total_w : 0.0;
    node_impurity = std::max(0.0, syy - sy * leaf_value);  // weighted SSE
  }
  nodes_[node_id].value = leaf_value;

  const bool depth_capped = opts_.max_depth >= 0 && depth >= opts_.max_depth;
  if (end - begin < 2 || node_impurity <= 1e-12 || depth_capped || total_w <= 0.0) return node_id;

  // Candidate features, optionally a random subset, scanned in ascending
  // order so equal gains resolve to the lowest feature index.
  const int m = static_cast<int>(X.cols());
  std::vector<int> features(m);
  std::iota(features.begin(), features.end(), 0);
  if (opts_.max_features > 0 && opts_.max_features < m) {
    for (int i = 0; i < opts_.max_features; ++i) {
      std::uniform_int_distribution<int> pick(i, m - 1);
      std::swap(features[i], features[pick(rng)]);
    }
    features.resize(opts_.max_features);
    std::sort(features.begin(), features.end());
  }

  struct Best {
    double gain = 0.0;
    int feature = -1;
    double threshold = 0.0;
  } best;

  std::vector<std::pair<double, int>> order;  // (value, sample)
  std::vector<double> left_class;
  for (int f : features) {
    order.clear();
    for (int i = begin; i < end; ++i) order.emplace_back(X(idx[i], f), idx[i]);
    std::sort(order.begin(), order.end());
    if (order.front().first == order.back().first) continue;

    if (opts_.classification) {
      left_class.assign(class_w.size(), 0.0);
      double left_w = 0.0;
      for (size_t i = 0; i + 1 < order.size(); ++i) {
        const int s = order[i].second;
        left_class[static_cast<int>(y[s])] += w[s];
        left_w += w[s];
        if (order[i].first == order[i + 1].first) continue;
        const double right_w = total_w - left_w;
        double right_gini_sum = 0.0;
        for (size_t c = 0; c < class_w.size(); ++c) {
          const double rc = class_w[c] - left_class[c];
          right_gini_sum += rc * rc;
        }
        const double gl = weighted_gini(left_class, left_w);
        const double gr = right_w > 0.0 ? 1.0 - right_gini_sum / (right_w * right_w) : 0.0;
        const double child = (left_w * gl + right_w * gr) / total_w;
        const double gain = node_impurity - child;
        if (gain > best.gain + 1e-12) {
          best = {gain, f, 0.5 * (order[i].first + order[i + 1].first)};
        }
      }
    } else {
      double sy = 0.0, syy = 0.0;
      for (int i = begin; i < end; ++i) {
        sy += w[idx[i]] * y[idx[i]];
        syy += w[idx[i]] * y[idx[i]] * y[idx[i]];
      }
      double lw = 0.0, lsy = 0.0, lsyy = 0.0;
      for (size_t i = 0; i + 1 < order.size(); ++i) {
        const int s = order[i].second;
        lw += w[s];
        lsy += w[s] * y[s];
        lsyy += w[s] * y[s] * y[s];
        if (order[i].first == order[i + 1].first) continue;
        const double rw = total_w - lw;
        if (lw <= 0.0 || rw <= 0.0) continue;
        const double lsse = std::max(0.0, lsyy - lsy * lsy / lw);
        const double rsy = sy - lsy, rsyy = syy - lsyy;
        const double rsse = std::max(0.0, rsyy - rsy * rsy / rw);
        const double gain = node_impurity - (lsse + rsse);
        if (gain > best.gain + 1e-12) {
          best = {gain, f, 0.5 * (order[i].first + order[i + 1].first)};
        }
      }
    }
  }
  if (best.feature < 0) return node_id;  // nothing separates the samples

  const auto mid = std::partition(idx.begin() + begin, idx.begin() + end,
                                  [&](int s) { return X(s, best.feature) <= best.threshold; });
  const int split_at = static_cast<int>(mid - idx.begin());
  if (split_at == begin || split_at == end) return node_id;

  nodes_[node_id].feature = best.feature;
  nodes_[node_id].threshold = best.threshold;
  const int left = build(X, y, w, idx, begin, split_at, depth + 1, rng);
  nodes_[node_id].left = left;
  const int right = build(X, y, w, idx, split_at, end, depth + 1, rng);
  nodes_[node_id].right = right;
  return node_id;
}

int DecisionTree::leaf_index(const Eigen::VectorXd& x) const {
  if (nodes_.empty()) throw std::runtime_error("DecisionTree: not fitted");
  int node = 0;
  while (nodes_[node].feature >= 0)
    node = x[nodes_[node].feature] <= nodes_[node].threshold ? nodes_[node].left
                                                             : nodes_[node].right;
  return node;
}

double DecisionTree::predict_one(const Eigen::VectorXd& x) const {
  return nodes_[leaf_index(x)].value;
}

void DecisionTree::set_leaf_value(int leaf, double value) {
  if (leaf < 0 || leaf >= static_cast<int>(nodes_.size()) || nodes_[leaf].feature >= 0)
    throw std::invalid_argument("set_leaf_value: not a leaf");
  nodes_[leaf].value = value;
}

// ---------------------------------------------------------------------------
// Concrete learners
// ---------------------------------------------------------------------------

namespace {

std::vector<double> to_double(const std::vector<int>& y) {
  return std::vector<double>(y.begin(), y.end());
}

/// Inverse-CDF bootstrap draw; keeps sampling identical across platforms.
std::vector<int> weighted_bootstrap(std::span<const double> w, int count,
                                    std::mt19937_64& rng) {
  std::vector<double> cdf(w.size());
  double acc = 0.0;
  for (size_t i = 0; i < w.size(); ++i) {
    acc += w[i];
    cdf[i] = acc;
  }
  std::uniform_real_distribution<double> u(0.0, acc);
  std::vector<int> out(count);
  for (int i = 0; i < count; ++i) {
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u(rng));
    out[i] = static_cast<int>(std::min<size_t>(it - cdf.begin(), w.size() - 1));
  }
  return out;
}

class DTClassifier final : public Classifier {
 public:
  explicit DTClassifier(int max_depth = -1) { opts_.max_depth = max_depth; }

 protected:
  void do_fit(const Eigen::MatrixXd& X, const std::vector<int>& y, uint64_t seed) override {
    opts_.classification = true;
    tree_.fit(X, to_double(y), {}, n_classes_, opts_, seed);
  }
  int do_predict(const Eigen::VectorXd& x) const override {
    return static_cast<int>(tree_.predict_one(x));
  }

 private:
  DecisionTree tree_;
  DecisionTree::Options opts_;
};

class DTRegressor final : public Regressor {
 public:
  explicit DTRegressor(int max_depth = -1) { opts_.max_depth = max_depth; }

 protected:
  void do_fit(const Eigen::MatrixXd& X, const std::vector<double>& y, uint64_t seed) override {
    opts_.classification = false;
    tree_.fit(X, y, {}, 0, opts_, seed);
  }
  double do_predict(const Eigen::VectorXd& x) const override { return tree_.predict_one(x); }

 private:
  DecisionTree tree_;
  DecisionTree::Options opts_;
};

class KnnClassifier final : public Classifier {
 public:
  explicit KnnClassifier(int k = 5) : k_(k) {}

 protected:
  void do_fit(const Eigen::MatrixXd& X, const std::vector<int>& y, uint64_t) override {
    X_ = X;
    y_ = y;
  }
  int do_predict(const Eigen::VectorXd& x) const override {
    const int k = std::min<int>(k_, static_cast<int>(X_.rows()));
    std::vector<std::pair<double, int>> d(X_.rows());
    for (Eigen::Index i = 0; i < X_.rows(); ++i)
      d[i] = {(X_.row(i).transpose() - x).norm(), static_cast<int>(i)};
    std::partial_sort(d.begin(), d.begin() + k, d.end());
    std::vector<int> votes(n_classes_, 0);
    for (int i = 0; i < k; ++i) ++votes[y_[d[i].second]];
    return static_cast<int>(std::max_element(votes.begin(), votes.end()) - votes.begin());
  }

 private:
  int k_;
  Eigen::MatrixXd X_;
  std::vector<int> y_;
};

class KnnRegressor final : public Regressor {
 public:
  explicit KnnRegressor(int k = 5) : k_(k) {}

 protected:
  void do_fit(const Eigen::MatrixXd& X, const std::vector<double>& y, uint64_t) override {
    X_ = X;
    y_ = y;
  }
  double do_predict(const Eigen::VectorXd& x) const override {
    const int k = std::min<int>(k_, static_cast<int>(X_.rows()));
    std::vector<std::pair<double, int>> d(X_.rows());
    for (Eigen::Index i = 0; i < X_.rows(); ++i)
      d[i] = {(X_.row(i).transpose() - x).norm(), static_cast<int>(i)};
    std::partial_sort(d.begin(), d.begin() + k, d.end());
    double acc = 0.0;
    for (int i = 0; i < k; ++i) acc += y_[d[i].second];
    return acc / k;
  }

 private:
  int k_;
  Eigen::MatrixXd X_;
  std::vector<double> y_;
};

class NearestCentroidClassifier final : public Classifier {
 protected:
  void do_fit(const Eigen::MatrixXd& X, const std::vector<int>& y, uint64_t) override {
    centroids_ = Eigen::MatrixXd::Zero(n_classes_, X.cols());
    std::vector<int> counts(n_classes_, 0);
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
      centroids_.row(y[i]) += X.row(i);
      ++counts[y[i]];
    }
    for (int c = 0; c < n_classes_; ++c)
      if (counts[c] > 0) centroids_.row(c) /= counts[c];
  }
  int do_predict(const Eigen::VectorXd& x) const override {
    int best = 0;
    double best_d = (centroids_.row(0).transpose() - x).norm();
    for (int c = 1; c < n_classes_; ++c) {
      const double d = (centroids_.row(c).transpose() - x).norm();
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    return best;
  }

 private:
  Eigen::MatrixXd centroids_;
};

class GaussianNBClassifier final : public Classifier {
 protected:
  void do_fit(const Eigen::MatrixXd& X, const std::vector<int>& y, uint64_t) override {
    const Eigen::Index m = X.cols();
    mean_ = Eigen::MatrixXd::Zero(n_classes_, m);
    var_ = Eigen::MatrixXd::Zero(n_classes_, m);
    log_prior_.assign(n_classes_, 0.0);
    std::vector<int> counts(n_classes_, 0);
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
      mean_.row(y[i]) += X.row(i);
      ++counts[y[i]];
    }
    for (int c = 0; c < n_classes_; ++c)
      if (counts[c] > 0) mean_.row(c) /= counts[c];
    for (Eigen::Index i = 0; i < X.rows(); ++i)
      var_.row(y[i]) += (X.row(i) - mean_.row(y[i])).array().square().matrix();
    for (int c = 0; c < n_classes_; ++c) {
      if (counts[c] > 0) var_.row(c) /= counts[c];
      log_prior_[c] = counts[c] > 0
                          ? std::log(static_cast<double>(counts[c]) / X.rows())
                          : -1e30;
    }
    var_ = var_.cwiseMax(1e-9);  // floor survives constant features
  }
  int do_predict(const Eigen::VectorXd& x) const override {
    int best = 0;
    double best_lp = -1e300;
    for (int c = 0; c < n_classes_; ++c) {
      double lp = log_prior_[c];
      for (Eigen::Index f = 0; f < x.size(); ++f) {
        const double v = var_(c, f);
        const double d = x[f] - mean_(c, f);
        lp += -0.5 * std::log(2.0 * M_PI * v) - d * d / (2.0 * v);
      }
      if (lp > best_lp) {
        best_lp = lp;
        best = c;
      }
    }
    return best;
  }

 private:
  Eigen::MatrixXd mean_, var_;
  std::vector<double> log_prior_;
};

class LogisticRegressionClassifier final : public Classifier {
 protected:
  void do_fit(const Eigen::MatrixXd& X, const std::vector<int>& y, uint64_t) override {
    const Eigen::Index n = X.rows(), m = X.cols();
    W_ = Eigen::MatrixXd::Zero(n_classes_, m);
    b_ = Eigen::VectorXd::Zero(n_classes_);
    const double step = 0.1, l2 = 1e-4;
    Eigen::MatrixXd P(n, n_classes_);
    for (int it = 0; it < 1000; ++it) {
      P = (X * W_.transpose()).rowwise() + b_.transpose();
      for (Eigen::Index i = 0; i < n; ++i) {
        const double mx = P.row(i).maxCoeff();
        P.row(i) = (P.row(i).array() - mx).exp();
        P.row(i) /= P.row(i).sum();
      }
      for (Eigen::Index i = 0; i < n; ++i) P(i, y[i]) -= 1.0;
      P /= static_cast<double>(n);
      W_ -= step * (P.transpose() * X + l2 * W_);
      b_ -= step * P.colwise().sum().transpose();
    }
  }
  int do_predict(const Eigen::VectorXd& x) const override {
    Eigen::VectorXd z = W_ * x + b_;
    int best = 0;
    for (int c = 1; c < n_classes_; ++c)
      if (z[c] > z[best]) best = c;
    return best;
  }

 private:
  Eigen::MatrixXd W_;
  Eigen::VectorXd b_;
};

class LinearSvmClassifier final : public Classifier {
 protected:
  void do_fit(const Eigen::MatrixXd& X, const std::vector<int>& y, uint64_t) override {
    models_.clear();
    for (int c = 0; c < n_classes_; ++c) {
      std::vector<int> rest(y.size());
      for (size_t i = 0; i < y.size(); ++i) rest[i] = y[i] == c ? 1 : 0;
      models_.push_back(train_linear_svm(X, rest));
    }
  }
  int do_predict(const Eigen::VectorXd& x) const override {
    int best = 0;
    double best_d = models_[0].decision(x);
    for (int c = 1; c < n_classes_; ++c) {
      const double d = models_[c].decision(x);
      if (d > best_d) {
        best_d = d;
        best = c;
      }
    }
    return best;
  }

 private:
  std::vector<LinearModel> models_;
};

class LinearRegressionModel final : public Regressor {
 protected:
  void do_fit(const Eigen::MatrixXd& X, const std::vector<double>& y, uint64_t) override {
    Eigen::MatrixXd A(X.rows(), X.cols() + 1);
    A.leftCols(X.cols()) = X;
    A.col(X.cols()).setOnes();
    const Eigen::VectorXd t = Eigen::Map<const Eigen::VectorXd>(y.data(), y.size());
    coef_ = A.colPivHouseholderQr().solve(t);
  }
  double do_predict(const Eigen::VectorXd& x) const override {
    return coef_.head(x.size()).dot(x) + coef_[x.size()];
  }

 private:
  Eigen::VectorXd coef_;
};

class RandomForestClassifier final : public Classifier {
 public:
  RandomForestClassifier(int n_trees = 10, bool bootstrap = true)
      : n_trees_(n_trees), bootstrap_(bootstrap) {}

  std::vector<int> tree_votes(const Eigen::VectorXd& x) const {
    std::vector<int> votes;
    votes.reserve(trees_.size());
    for (const auto& t : trees_) votes.push_back(static_cast<int>(t.predict_one(x)));
    return votes;
  }

 protected:
  void do_fit(const Eigen::MatrixXd& X, const std::vector<int>& y, uint64_t seed) override {
    trees_.assign(n_trees_, DecisionTree{});
    const auto yd = to_double(y);
    DecisionTree::Options opts;
    opts.classification = true;
    opts.max_features =
        std::max(1, static_cast<int>(std::sqrt(static_cast<double>(X.cols()))));
    std::vector<double> uniform(X.rows(), 1.0);
    for (int t = 0; t < n_trees_; ++t) {
      auto rng = make_rng(mix_seed(seed, {0x8f, static_cast<uint64_t>(t)}));
      if (bootstrap_) {
        const auto pick = weighted_bootstrap(uniform, static_cast<int>(X.rows()), rng);
        std::vector<double> w(X.rows(), 0.0);
        for (int i : pick) w[i] += 1.0;
        trees_[t].fit(X, yd, w, n_classes_, opts, mix_seed(seed, {0x7e, (uint64_t)t}));
      } else {
        trees_[t].fit(X, yd, {}, n_classes_, opts, mix_seed(seed, {0x7e, (uint64_t)t}));
      }
    }
  }
  int do_predict(const Eigen::VectorXd& x) const override {
    std::vector<int> votes(n_classes_, 0);
    for (const auto& t : trees_) ++votes[static_cast<int>(t.predict_one(x))];
    return static_cast<int>(std::max_element(votes.begin(), votes.end()) - votes.begin());
  }

 private:
  int n_trees_;
  bool bootstrap_;
  std::vector<DecisionTree> trees_;
};

class RandomForestRegressor final : public Regressor {
 public:
  explicit RandomForestRegressor(int n_trees = 10) : n_trees_(n_trees) {}

 protected:
  void do_fit(const Eigen::MatrixXd& X, const std::vector<double>& y, uint64_t seed) override {
    trees_.assign(n_trees_, DecisionTree{});
    DecisionTree::Options opts;
    opts.classification = false;
    std::vector<double> uniform(X.rows(), 1.0);
    for (int t = 0; t < n_trees_; ++t) {
      auto rng = make_rng(mix_seed(seed, {0x90, static_cast<uint64_t>(t)}));
      const auto pick = weighted_bootstrap(uniform, static_cast<int>(X.rows()), rng);
      std::vector<double> w(X.rows(), 0.0);
      for (int i : pick) w[i] += 1.0;
      trees_[t].fit(X, y, w, 0, opts, mix_seed(seed, {0x91, (uint64_t)t}));
    }
  }
  double do_predict(const Eigen::VectorXd& x) const override {
    double acc = 0.0;
    for (const auto& t : trees_) acc += t.predict_one(x);
    return acc / trees_.size();
  }

 private:
  int n_trees_;
  std::vector<DecisionTree> trees_;
};

class BaggingClassifier final : public Classifier {
 public:
  explicit BaggingClassifier(int n_trees = 10) : n_trees_(n_trees) {}

 protected:
  void do_fit(const Eigen::MatrixXd& X, const std::vector<int>& y, uint64_t seed) override {
    trees_.assign(n_trees_, DecisionTree{});
    const auto yd = to_double(y);
    DecisionTree::Options opts;
    opts.classification = true;
    std::vector<double> uniform(X.rows(), 1.0);
    for (int t = 0; t < n_trees_; ++t) {
      auto rng = make_rng(mix_seed(seed, {0xb6, static_cast<uint64_t>(t)}));
      const auto pick = weighted_bootstrap(uniform, static_cast<int>(X.rows()), rng);
      std::vector<double> w(X.rows(), 0.0);
      for (int i : pick) w[i] += 1.0;
      trees_[t].fit(X, yd, w, n_classes_, opts);
    }
  }
  int do_predict(const Eigen::VectorXd& x) const override {
    std::vector<int> votes(n_classes_, 0);
    for (const auto& t : trees_) ++votes[static_cast<int>(t.predict_one(x))];
    return static_cast<int>(std::max_element(votes.begin(), votes.end()) - votes.begin());
  }

 private:
  int n_trees_;
  std::vector<DecisionTree> trees_;
};

class BaggingRegressor final : public Regressor {
 public:
  explicit BaggingRegressor(int n_trees = 10) : n_trees_(n_trees) {}

 protected:
  void do_fit(const Eigen::MatrixXd& X, const std::vector<double>& y, uint64_t seed) override {
    trees_.assign(n_trees_, DecisionTree{});
    DecisionTree::Options opts;
    opts.classification = false;
    std::vector<double> uniform(X.rows(), 1.0);
    for (int t = 0; t < n_trees_; ++t) {
      auto rng = make_rng(mix_seed(seed, {0xb7, static_cast<uint64_t>(t)}));
      const auto pick = weighted_bootstrap(uniform, static_cast<int>(X.rows()), rng);
      std::vector<double> w(X.rows(), 0.0);
      for (int i : pick) w[i] += 1.0;
      trees_[t].fit(X, y, w, 0, opts);
    }
  }
  double do_predict(const Eigen::VectorXd& x) const override {
    double acc = 0.0;
    for (const auto& t : trees_) acc += t.predict_one(x);
    return acc / trees_.size();
  }

 private:
  int n_trees_;
  std::vector<DecisionTree> trees_;
};

/// SAMME boosting with full CART base learners. Stops early when a learner
/// is perfect or no better than chance for the class count.
class AdaBoostClassifier final : public Classifier {
 public:
  explicit AdaBoostClassifier(int n_estimators = 50) : n_estimators_(n_estimators) {}

  const std::vector<double>& stage_errors() const { return stage_errors_; }

 protected:
  void do_fit(const Eigen::MatrixXd& X, const std::vector<int>& y, uint64_t seed) override {
    trees_.clear();
    alphas_.clear();
    stage_errors_.clear();
    const auto yd = to_double(y);
    const int n = static_cast<int>(X.rows());
    DecisionTree::Options opts;
    opts.classification = true;
    std::vector<double> w(n, 1.0 / n);
    const double chance = 1.0 - 1.0 / std::max(n_classes_, 2);
    for (int t = 0; t < n_estimators_; ++t) {
      DecisionTree tree;
      tree.fit(X, yd, w, n_classes_, opts, mix_seed(seed, {0xada, (uint64_t)t}));
      double err = 0.0;
      std::vector<char> wrong(n, 0);
      for (int i = 0; i < n; ++i) {
        wrong[i] = static_cast<int>(tree.predict_one(X.row(i).transpose())) != y[i];
        if (wrong[i]) err += w[i];
      }
      stage_errors_.push_back(err);
      if (err <= 0.0) {
        trees_.push_back(std::move(tree));
        alphas_.push_back(1.0);
        break;
      }
      if (err >= chance) {
        if (trees_.empty()) {
          trees_.push_back(std::move(tree));
          alphas_.push_back(1.0);
        }
        break;
      }
      const double alpha =
          std::log((1.0 - err) / err) + std::log(static_cast<double>(n_classes_) - 1.0);
      trees_.push_back(std::move(tree));
      alphas_.push_back(alpha);
      double sum = 0.0;
      for (int i = 0; i < n; ++i) {
        if (wrong[i]) w[i] *= std::exp(alpha);
        sum += w[i];
      }
      for (double& wi : w) wi /= sum;
    }
  }
  int do_predict(const Eigen::VectorXd& x) const override {
    std::vector<double> score(n_classes_, 0.0);
    for (size_t t = 0; t < trees_.size(); ++t)
      score[static_cast<int>(trees_[t].predict_one(x))] += alphas_[t];
    return static_cast<int>(std::max_element(score.begin(), score.end()) - score.begin());
  }

 private:
  int n_estimators_;
  std::vector<DecisionTree> trees_;
  std::vector<double> alphas_;
  std::vector<double> stage_errors_;
};

/// AdaBoost.R2 with the linear loss and weighted-median aggregation.
class AdaBoostRegressor final : public Regressor {
 public:
  explicit AdaBoostRegressor(int n_estimators = 50) : n_estimators_(n_estimators) {}

 protected:
  void do_fit(const Eigen::MatrixXd& X, const std::vector<double>& y, uint64_t seed) override {
    trees_.clear();
    log_betas_.clear();
    const int n = static_cast<int>(X.rows());
    DecisionTree::Options opts;
    opts.classification = false;
    std::vector<double> w(n, 1.0 / n);
    for (int t = 0; t < n_estimators_; ++t) {
      auto rng = make_rng(mix_seed(seed, {0xadb, (uint64_t)t}));
      const auto pick = weighted_bootstrap(w, n, rng);
      Eigen::MatrixXd Xb(n, X.cols());
      std::vector<double> yb(n);
      for (int i = 0; i < n; ++i) {
        Xb.row(i) = X.row(pick[i]);
        yb[i] = y[pick[i]];
      }
      DecisionTree tree;
      tree.fit(Xb, yb, {}, 0, opts);

      std::vector<double> err(n);
      double max_err = 0.0;
      for (int i = 0; i < n; ++i) {
        err[i] = std::abs(tree.predict_one(X.row(i).transpose()) - y[i]);
        max_err = std::max(max_err, err[i]);
      }
      if (max_err <= 0.0) {
        trees_.push_back(std::move(tree));
        log_betas_.push_back(std::log(1e12));
        break;
      }
      double avg_loss = 0.0;
      for (int i = 0; i < n; ++i) avg_loss += w[i] * (err[i] / max_err);
      if (avg_loss >= 0.5) {
        if (trees_.empty()) {
          trees_.push_back(std::move(tree));
          log_betas_.push_back(1.0);
        }
        break;
      }
      const double beta = avg_loss / (1.0 - avg_loss);
      trees_.push_back(std::move(tree));
      log_betas_.push_back(std::log(1.0 / beta));
      double sum = 0.0;
      for (int i = 0; i < n; ++i) {
        w[i] *= std::pow(beta, 1.0 - err[i] / max_err);
        sum += w[i];
      }
      for (double& wi : w) wi /= sum;
    }
  }
  double do_predict(const Eigen::VectorXd& x) const override {
    std::vector<std::pair<double, double>> preds;  // (prediction, weight)
    preds.reserve(trees_.size());
    for (size_t t = 0; t < trees_.size(); ++t)
      preds.emplace_back(trees_[t].predict_one(x), log_betas_[t]);
    std::sort(preds.begin(), preds.end());
    double total = 0.0;
    for (const auto& p : preds) total += p.second;
    double acc = 0.0;
    for (const auto& p : preds) {
      acc += p.second;
      if (acc >= 0.5 * total) return p.first;
    }
    return preds.back().first;
  }

 private:
  int n_estimators_;
  std::vector<DecisionTree> trees_;
  std::vector<double> log_betas_;
};

/// Multinomial gradient boosting: depth-3 regression trees on the softmax
/// residuals, newton leaf updates, shrinkage 0.1, 100 stages.
class GradientBoostClassifier final : public Classifier {
 public:
  GradientBoostClassifier(int n_stages = 100, double learning_rate = 0.1, int depth = 3)
      : n_stages_(n_stages), lr_(learning_rate), depth_(depth) {}

 protected:
  void do_fit(const Eigen::MatrixXd& X, const std::vector<int>& y, uint64_t seed) override {
    const int n = static_cast<int>(X.rows());
    const int k = n_classes_;
    init_score_.assign(k, 0.0);
    std::vector<int> counts(k, 0);
    for (int yi : y) ++counts[yi];
    for (int c = 0; c < k; ++c)
      init_score_[c] = std::log(std::max(1e-12, static_cast<double>(counts[c]) / n));

    stages_.clear();
    if (k < 2) return;
    Eigen::MatrixXd F(n, k);
    for (int c = 0; c < k; ++c) F.col(c).setConstant(init_score_[c]);

    DecisionTree::Options opts;
    opts.classification = false;
    opts.max_depth = depth_;
    std::vector<double> residual(n);
    for (int stage = 0; stage < n_stages_; ++stage) {
      Eigen::MatrixXd P = F;
      for (int i = 0; i < n; ++i) {
        const double mx = P.row(i).maxCoeff();
        P.row(i) = (P.row(i).array() - mx).exp();
        P.row(i) /= P.row(i).sum();
      }
      std::vector<DecisionTree> stage_trees;
      stage_trees.reserve(k);
      for (int c = 0; c < k; ++c) {
        for (int i = 0; i < n; ++i) residual[i] = (y[i] == c ? 1.0 : 0.0) - P(i, c);
        DecisionTree tree;
        tree.fit(X, residual, {}, 0, opts, mix_seed(seed, {0x6b, (uint64_t)stage, (uint64_t)c}));

        // Newton step per leaf.
        std::map<int, std::pair<double, double>> leaf_sums;  // leaf -> (num, den)
        for (int i = 0; i < n; ++i) {
          const int leaf = tree.leaf_index(X.row(i).transpose());
          const double r = residual[i];
          const double p_abs = std::abs(r);
          leaf_sums[leaf].first += r;
          leaf_sums[leaf].second += p_abs * (1.0 - p_abs);
        }
        const double scale = (k - 1.0) / k;
        for (const auto& [leaf, sums] : leaf_sums) {
          const double gamma = sums.second > 1e-150 ? scale * sums.first / sums.second : 0.0;
          tree.set_leaf_value(leaf, gamma);
        }
        for (int i = 0; i < n; ++i) F(i, c) += lr_ * tree.predict_one(X.row(i).transpose());
        stage_trees.push_back(std::move(tree));
      }
      stages_.push_back(std::move(stage_trees));
    }
  }
  int do_predict(const Eigen::VectorXd& x) const override {
    std::vector<double> score(init_score_);
    for (const auto& stage : stages_)
      for (size_t c = 0; c < stage.size(); ++c) score[c] += lr_ * stage[c].predict_one(x);
    return static_cast<int>(std::max_element(score.begin(), score.end()) - score.begin());
  }

 private:
  int n_stages_;
  double lr_;
  int depth_;
  std::vector<double> init_score_;
  std::vector<std::vector<DecisionTree>> stages_;
};

}  // namespace

const std::vector<std::string>& classifier_kind_names() {
  static const std::vector<std::string> names = {
      "DT",  "SVM", "SVM-Linear",         "NaiveBayes",  "kNN",         "NearestCentroid",
      "LogisticRegression", "RF", "Ensemble-AB", "Ensemble-Bg", "Ensemble-GB"};
  return names;
}

const std::vector<std::string>& regressor_kind_names() {
  static const std::vector<std::string> names = {"DTR",      "kNNR",    "Linear Regression",
                                                 "Adaboost", "Bagging", "RF"};
  return names;
}

std::unique_ptr<Classifier> make_classifier(const std::string& kind) {
  if (kind == "DT") return std::make_unique<DTClassifier>();
  if (kind == "SVM" || kind == "SVM-Linear") return std::make_unique<LinearSvmClassifier>();
  if (kind == "NaiveBayes") return std::make_unique<GaussianNBClassifier>();
  if (kind == "kNN") return std::make_unique<KnnClassifier>(5);
  if (kind == "NearestCentroid") return std::make_unique<NearestCentroidClassifier>();
  if (kind == "LogisticRegression") return std::make_unique<LogisticRegressionClassifier>();
  if (kind == "RF") return std::make_unique<RandomForestClassifier>(10);
  if (kind == "RF-nobootstrap") return std::make_unique<RandomForestClassifier>(10, false);
  if (kind == "Ensemble-AB") return std::make_unique<AdaBoostClassifier>(50);
  if (kind == "Ensemble-Bg" || kind == "Bagging") return std::make_unique<BaggingClassifier>(10);
  if (kind == "Ensemble-GB") return std::make_unique<GradientBoostClassifier>();
  throw std::invalid_argument("unknown classifier kind '" + kind + "'");
}

std::vector<double> adaboost_stage_errors(const Classifier& model) {
  if (const auto* ab = dynamic_cast<const AdaBoostClassifier*>(&model))
    return ab->stage_errors();
  return {};
}

std::vector<int> forest_tree_votes(const Classifier& model, const Eigen::VectorXd& x) {
  if (const auto* rf = dynamic_cast<const RandomForestClassifier*>(&model))
    return rf->tree_votes(x);
  return {};
}

std::unique_ptr<Regressor> make_regressor(const std::string& kind) {
  if (kind == "DTR") return std::make_unique<DTRegressor>();
  if (kind == "kNNR") return std::make_unique<KnnRegressor>(5);
  if (kind == "Linear Regression") return std::make_unique<LinearRegressionModel>();
  if (kind == "Adaboost") return std::make_unique<AdaBoostRegressor>(50);
  if (kind == "Bagging") return std::make_unique<BaggingRegressor>(10);
  if (kind == "RF") return std::make_unique<RandomForestRegressor>(10);
  throw std::invalid_argument("unknown regressor kind '" + kind + "'");
}

}  // namespace qarp
