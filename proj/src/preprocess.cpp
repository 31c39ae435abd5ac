#include "lincomb/preprocess.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace lincomb {

void PreprocessConfig::validate() const {
    if (!(explained_variance > 0.0 && explained_variance <= 1.0)) {
        throw std::invalid_argument("explained_variance must lie in (0, 1]");
    }
}

int FittedTransform::output_dim() const {
    if (use_pca) return n_components;
    return static_cast<int>(kept_columns.size());
}

Matrix FittedTransform::apply(const Matrix& x) const {
    if (x.cols() < static_cast<long>(kept_columns.size())) {
        throw std::invalid_argument("apply: input has fewer columns than the fit");
    }
    Matrix z(x.rows(), kept_columns.size());
    for (std::size_t j = 0; j < kept_columns.size(); ++j) {
        z.col(j) = x.col(kept_columns[j]);
    }
    if (use_standardize) {
        z.rowwise() -= mean1.transpose();
        z.array().rowwise() /= scale1.transpose().array();
    }
    if (use_pca) {
        z = z * components;
        z.rowwise() -= mean2.transpose();
        z.array().rowwise() /= scale2.transpose().array();
    }
    return z;
}

Vector FittedTransform::apply_row(const Vector& x) const {
    Matrix m(1, x.size());
    m.row(0) = x.transpose();
    return apply(m).row(0).transpose();
}

FittedTransform fit_transform(const Matrix& train, const PreprocessConfig& cfg,
                              std::vector<std::string>* warnings) {
    cfg.validate();
    const int n = static_cast<int>(train.rows());
    const int d = static_cast<int>(train.cols());
    if (n < 2 || d < 1) throw std::invalid_argument("fit_transform: need >= 2 rows");
    if (!train.allFinite()) throw std::invalid_argument("fit_transform: non-finite input");

    FittedTransform t;
    t.use_standardize = cfg.standardize;
    t.use_pca = cfg.pca;

    const Vector col_mean = train.colwise().mean();
    for (int j = 0; j < d; ++j) {
        const double var = (train.col(j).array() - col_mean[j]).square().sum() / (n - 1);
        if (var > 0.0) {
            t.kept_columns.push_back(j);
        } else if (warnings) {
            warnings->push_back("dropping constant attribute " + std::to_string(j));
        }
    }
    if (t.kept_columns.empty()) {
        throw std::invalid_argument("fit_transform: every attribute is constant");
    }
    const int dk = static_cast<int>(t.kept_columns.size());

    Matrix z(n, dk);
    for (int j = 0; j < dk; ++j) z.col(j) = train.col(t.kept_columns[j]);

    t.mean1 = z.colwise().mean();
    t.scale1 = Vector::Ones(dk);
    if (cfg.standardize) {
        for (int j = 0; j < dk; ++j) {
            const double var = (z.col(j).array() - t.mean1[j]).square().sum() / (n - 1);
            t.scale1[j] = std::sqrt(var);
        }
        z.rowwise() -= t.mean1.transpose();
        z.array().rowwise() /= t.scale1.transpose().array();
    } else {
        t.mean1 = Vector::Zero(dk);
    }

    if (!cfg.pca) return t;

    const Matrix cov = (z.transpose() * z) / (n - 1);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
    if (eig.info() != Eigen::Success) {
        throw std::runtime_error("fit_transform: eigendecomposition failed");
    }

    // Eigen returns ascending order; flip to descending.
    Vector vals = eig.eigenvalues().reverse();
    Matrix vecs = eig.eigenvectors().rowwise().reverse();
    for (int j = 0; j < dk; ++j) {
        if (vals[j] < 0.0) vals[j] = 0.0;
        int arg = 0;
        vecs.col(j).cwiseAbs().maxCoeff(&arg);
        if (vecs(arg, j) < 0.0) vecs.col(j) = -vecs.col(j);
    }
    t.eigenvalues = vals;

    const double total = vals.sum();
    if (total <= 0.0) throw std::runtime_error("fit_transform: degenerate covariance");
    int keep = 0;
    if (cfg.explained_variance >= 1.0) {
        const double tol = vals[0] * 1e-12;
        while (keep < dk && vals[keep] > tol) ++keep;
    } else {
        double cum = 0.0;
        while (keep < dk) {
            cum += vals[keep];
            ++keep;
            if (cum / total >= cfg.explained_variance) break;
        }
    }
    t.n_components = std::max(1, keep);
    t.components = vecs.leftCols(t.n_components);

    Matrix projected = z * t.components;
    t.mean2 = projected.colwise().mean();
    t.scale2 = Vector::Ones(t.n_components);
    for (int j = 0; j < t.n_components; ++j) {
        const double var =
            (projected.col(j).array() - t.mean2[j]).square().sum() / (n - 1);
        const double sd = std::sqrt(var);
        t.scale2[j] = sd > 0.0 ? sd : 1.0;
    }
    return t;
}

LabeledDataset apply_transform(const FittedTransform& t, const LabeledDataset& data) {
    return data.with_features(t.apply(data.features()));
}

std::pair<LabeledDataset, FittedTransform> preprocess(const LabeledDataset& data,
                                                      double pca_variance,
                                                      std::vector<std::string>* warnings) {
    PreprocessConfig cfg;
    cfg.explained_variance = pca_variance;
    FittedTransform t = fit_transform(data.features(), cfg, warnings);
    return {apply_transform(t, data), std::move(t)};
}

}  // namespace lincomb
