#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace qarp {

double accuracy(std::span<const int> y_true, std::span<const int> y_pred);
double mean_absolute_error(std::span<const double> y_true, std::span<const double> y_pred);

/// Binary linear hinge-loss classifier (the "linear SVM" used both as a
/// meta-learner and inside the linearity complexity measures). Labels are
/// 0/1, mapped to -1/+1 internally. Trained by deterministic full-batch
/// subgradient descent: J = mean hinge + |w|^2 / (2 C n).
struct LinearModel {
  Eigen::VectorXd w;
  double b = 0.0;

  double decision(const Eigen::VectorXd& x) const { return w.dot(x) + b; }
  int predict(const Eigen::VectorXd& x) const { return decision(x) >= 0.0 ? 1 : 0; }
};

LinearModel train_linear_svm(const Eigen::MatrixXd& X, std::span<const int> y01, double C = 1.0,
                             int iterations = 1000, double step = 0.01);

class Classifier {
 public:
  virtual ~Classifier() = default;
  void fit(const Eigen::MatrixXd& X, const std::vector<int>& y, uint64_t seed = 0);
  std::vector<int> predict(const Eigen::MatrixXd& X) const;
  int predict_one(const Eigen::VectorXd& x) const;
  int n_classes() const { return n_classes_; }

 protected:
  virtual void do_fit(const Eigen::MatrixXd& X, const std::vector<int>& y, uint64_t seed) = 0;
  virtual int do_predict(const Eigen::VectorXd& x) const = 0;
  void check_ready(Eigen::Index width) const;

  bool fitted_ = false;
  int n_features_ = 0;
  int n_classes_ = 0;
};

class Regressor {
 public:
  virtual ~Regressor() = default;
  void fit(const Eigen::MatrixXd& X, const std::vector<double>& y, uint64_t seed = 0);
  std::vector<double> predict(const Eigen::MatrixXd& X) const;
  double predict_one(const Eigen::VectorXd& x) const;

 protected:
  virtual void do_fit(const Eigen::MatrixXd& X, const std::vector<double>& y, uint64_t seed) = 0;
  virtual double do_predict(const Eigen::VectorXd& x) const = 0;
  void check_ready(Eigen::Index width) const;

  bool fitted_ = false;
  int n_features_ = 0;
};

/// CART tree used directly and as the base learner of every ensemble.
/// Classification splits on weighted Gini, regression on weighted variance;
/// ties go to the lowest feature index, then the lowest threshold.
class DecisionTree {
 public:
  struct Options {
    bool classification = true;
    int max_depth = -1;       // unlimited
    int max_features = -1;    // all
    double min_weight_split = 0.0;
  };

  void fit(const Eigen::MatrixXd& X, std::span<const double> y, std::span<const double> weights,
           int n_classes, const Options& opts, uint64_t seed = 0);
  double predict_one(const Eigen::VectorXd& x) const;
  int leaf_index(const Eigen::VectorXd& x) const;
  void set_leaf_value(int leaf, double value);
  int node_count() const { return static_cast<int>(nodes_.size()); }

 private:
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1, right = -1;
    double value = 0.0;
  };
  int build(const Eigen::MatrixXd& X, std::span<const double> y, std::span<const double> w,
            std::vector<int>& idx, int begin, int end, int depth, std::mt19937_64& rng);

  std::vector<Node> nodes_;
  Options opts_;
  int n_classes_ = 0;
};

/// Table-3 model acronyms (the report row keys).
const std::vector<std::string>& classifier_kind_names();
const std::vector<std::string>& regressor_kind_names();

std::unique_ptr<Classifier> make_classifier(const std::string& kind);
std::unique_ptr<Regressor> make_regressor(const std::string& kind);

/// Weighted training error of each boosting stage from the last fit of an
/// Ensemble-AB model. Empty for other kinds.
std::vector<double> adaboost_stage_errors(const Classifier& model);

/// Per-tree votes of a fitted RF model on one query. Empty for other kinds.
std::vector<int> forest_tree_votes(const Classifier& model, const Eigen::VectorXd& x);

}  // namespace qarp
