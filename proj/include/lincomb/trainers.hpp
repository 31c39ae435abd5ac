#pragma once

// Supervised trainers producing a LinearModel from a binary dataset:
// Fisher LDA, logistic regression, a single sigmoid unit trained by SGD,
// nearest centroid (bisector plane), and a linear soft-margin SVM.

#include "lincomb/core.hpp"

#include <optional>

namespace lincomb {

enum class TrainerKind { flda, logistic, mlp, nearest_centroid, linear_svm };

const char* trainer_name(TrainerKind k);
TrainerKind trainer_from_name(const std::string& name);

struct TrainerConfig {
    TrainerKind kind = TrainerKind::flda;
    int max_iters = 500;
    double learning_rate = 0.1;   // initial rate, decayed as 1/t
    double regularization = 0.0;  // ridge for LR, C for SVM
    std::uint64_t seed = 0;

    void validate() const;
};

// Per-kind defaults: LR ridge 1e-8, SVM C = 1.0, 500 iterations at
// learning rate 0.1 for the iterative trainers.
TrainerConfig default_config(TrainerKind kind);

struct TrainDiagnostics {
    bool converged = true;
    bool degenerate = false;
    int iterations = 0;
    std::string note;
};

struct TrainResult {
    LinearModel model;
    TrainDiagnostics diag;
};

// Fisher LDA: n proportional to Sw^-1 (mu_plus - mu_minus) with the pooled
// within-class covariance regularized by lambda = 1e-6 * trace(Sw)/d; the
// offset places the boundary at the midpoint of the projected class means.
TrainResult train_flda(const LabeledDataset& data);

// L2-regularized logistic regression by full-batch gradient ascent with a
// 1/t-decayed step. Returns the best iterate with diag.converged = false if
// the gradient norm never falls below tolerance.
TrainResult train_logistic(const LabeledDataset& data, const TrainerConfig& cfg);

// Single sigmoid unit (no hidden layer) trained by seeded SGD on squared
// loss, so the exported boundary is exactly linear.
TrainResult train_mlp(const LabeledDataset& data, const TrainerConfig& cfg);

// Perpendicular bisector plane of the two class centroids. The full
// Mahalanobis decision surface lives in geometry.hpp; this exports the
// member plane the combination methods work with.
TrainResult train_nearest_centroid(const LabeledDataset& data);

// Soft-margin linear SVM by Pegasos-style subgradient descent on the primal,
// averaged over the tail iterates. cfg.regularization is the usual C.
TrainResult train_linear_svm(const LabeledDataset& data, const TrainerConfig& cfg);

// Dispatch on cfg.kind.
TrainResult train(const LabeledDataset& data, const TrainerConfig& cfg);

}  // namespace lincomb
