#pragma once

// Train-fitted preprocessing: per-attribute standardization, PCA keeping the
// leading components up to a cumulative explained-variance target, and a
// second standardization of the retained components. Constant attributes are
// dropped with a warning before anything else runs.

#include <string>
#include <utility>
#include <vector>

#include "lincomb/core.hpp"

namespace lincomb {

struct PreprocessConfig {
    bool standardize = true;
    bool pca = true;
    double explained_variance = 0.95;  // in (0, 1]; 1.0 keeps the full rank

    void validate() const;
};

struct FittedTransform {
    std::vector<int> kept_columns;  // input columns with nonzero variance
    Vector mean1, scale1;           // per kept column
    Matrix components;              // kept_dim x n_components, sign-canonical
    Vector eigenvalues;             // descending, all of them
    int n_components = 0;
    Vector mean2, scale2;  // per retained component
    bool use_standardize = true;
    bool use_pca = true;

    int output_dim() const;
    Matrix apply(const Matrix& x) const;
    Vector apply_row(const Vector& x) const;
};

// Fits on training rows only. Warnings (e.g. dropped constant attributes)
// are appended to *warnings when given.
FittedTransform fit_transform(const Matrix& train, const PreprocessConfig& cfg,
                              std::vector<std::string>* warnings = nullptr);

LabeledDataset apply_transform(const FittedTransform& t, const LabeledDataset& data);

// Full default pipeline fitted on `data`: standardize, PCA at the given
// cumulative explained-variance target, re-standardize.
std::pair<LabeledDataset, FittedTransform> preprocess(
    const LabeledDataset& data, double pca_variance,
    std::vector<std::string>* warnings = nullptr);

}  // namespace lincomb
