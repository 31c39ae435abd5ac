#include "lincomb/geometry.hpp"

#include <cmath>
#include <limits>

namespace lincomb {

void PotentialParams::validate() const {
    if (!(beta >= 0.0 && beta <= 1.0)) {
        throw std::invalid_argument("potential beta must lie in [0, 1]");
    }
    if (!(gamma > 0.0)) {
        throw std::invalid_argument("potential gamma must be positive");
    }
}

void ZetaParam::validate() const {
    if (!(zeta > 0.0)) {
        throw std::invalid_argument("zeta must be positive");
    }
}

namespace {

std::vector<int> class_rows(const LabeledDataset& data, BinaryLabel m) {
    std::vector<int> rows;
    for (int i = 0; i < data.size(); ++i) {
        if (data.binary_label(i) == m) rows.push_back(i);
    }
    return rows;
}

void check_dim(const ClassGeometry& g, const Vector& x) {
    if (g.centroid.size() != x.size()) {
        throw std::invalid_argument("class geometry: dimensionality mismatch");
    }
}

}  // namespace

Vector class_centroid(const LabeledDataset& data, BinaryLabel m) {
    const auto rows = class_rows(data, m);
    if (rows.empty()) {
        throw std::invalid_argument("class_centroid: class has no instances");
    }
    Vector c = Vector::Zero(data.dim());
    for (int r : rows) c += data.features().row(r).transpose();
    return c / static_cast<double>(rows.size());
}

ClassGeometry fit_class_geometry(const LabeledDataset& data, BinaryLabel m,
                                 const LinearModel& model) {
    const auto rows = class_rows(data, m);
    const int k = static_cast<int>(rows.size());
    const int d = data.dim();
    if (k < 2) {
        throw std::invalid_argument("fit_class_geometry: class needs at least 2 instances");
    }

    ClassGeometry g;
    g.class_label = m;
    g.centroid = Vector::Zero(d);
    for (int r : rows) g.centroid += data.features().row(r).transpose();
    g.centroid /= k;

    Matrix centered(k, d);
    for (int i = 0; i < k; ++i) {
        centered.row(i) = data.features().row(rows[i]) - g.centroid.transpose();
    }

    // Sample covariance, 1/(k-1). Few samples relative to d give an unstable
    // full matrix, so fall back to the diagonal, and to the identity when a
    // variance vanishes.
    Matrix cov;
    if (k >= d + 1) {
        cov = centered.transpose() * centered / (k - 1.0);
    } else {
        Vector var = centered.array().square().colwise().sum() / (k - 1.0);
        if ((var.array() <= 0.0).any()) {
            cov = Matrix::Identity(d, d);
        } else {
            cov = var.asDiagonal();
        }
    }

    const double lambda = 1e-6 * cov.trace() / d;
    cov += lambda * Matrix::Identity(d, d);

    Eigen::LLT<Matrix> llt(cov);
    if (llt.info() != Eigen::Success) {
        throw std::runtime_error("fit_class_geometry: covariance not positive definite");
    }
    g.cov_inverse = llt.solve(Matrix::Identity(d, d));
    // Symmetrize away the round-off from the solve.
    g.cov_inverse = 0.5 * (g.cov_inverse + g.cov_inverse.transpose()).eval();

    // Variance of the signed projections onto the plane normal, with the same
    // regularization rule (d = 1 here); zero spread falls back to 1.
    double var_n = 0.0;
    for (int i = 0; i < k; ++i) {
        const double t = centered.row(i).dot(model.normal);
        var_n += t * t;
    }
    var_n /= (k - 1.0);
    if (var_n > 0.0) {
        var_n += 1e-6 * var_n;
    } else {
        var_n = 1.0;
    }
    g.normal_var_inverse = 1.0 / var_n;
    return g;
}

ClassGeometryPair fit_class_geometry_pair(const LabeledDataset& data,
                                          const LinearModel& model) {
    return ClassGeometryPair{fit_class_geometry(data, BinaryLabel::plus, model),
                             fit_class_geometry(data, BinaryLabel::minus, model)};
}

double mahalanobis_dc(const ClassGeometry& g, const Vector& x) {
    check_dim(g, x);
    const Vector v = x - g.centroid;
    const double q = v.dot(g.cov_inverse * v);
    return std::sqrt(std::max(q, 0.0));
}

double normal_distance_dn(const ClassGeometry& g, const Vector& x,
                          const LinearModel& model) {
    check_dim(g, x);
    if (model.normal.size() != x.size()) {
        throw std::invalid_argument("normal_distance_dn: dimensionality mismatch");
    }
    const double t = (x - g.centroid).dot(model.normal);
    return std::abs(t) * std::sqrt(g.normal_var_inverse);
}

double class_potential(const ClassGeometry& g, const Vector& x,
                       const LinearModel& model, const PotentialParams& p) {
    p.validate();
    const double dc = mahalanobis_dc(g, x);
    const double dn = normal_distance_dn(g, x, model);
    return p.beta * std::exp(-p.gamma * dc * dc) +
           (1.0 - p.beta) * std::exp(-p.gamma * dn * dn);
}

double pc_discriminant(const ClassGeometryPair& geoms, const Vector& x,
                       const LinearModel& model, const PotentialParams& p) {
    if (geoms.plus.class_label != BinaryLabel::plus ||
        geoms.minus.class_label != BinaryLabel::minus) {
        throw std::invalid_argument("pc_discriminant: geometry pair labels out of order");
    }
    return class_potential(geoms.plus, x, model, p) -
           class_potential(geoms.minus, x, model, p);
}

double pf_transform(double z, const ZetaParam& zp) {
    zp.validate();
    const double val = z * std::exp(-zp.zeta * z * z + 0.5) * std::sqrt(2.0 * zp.zeta);
    if (val == 0.0 && z != 0.0) {
        // exp underflow far from the origin; keep the transform sign-preserving
        return std::copysign(std::numeric_limits<double>::denorm_min(), z);
    }
    return val;
}

}  // namespace lincomb
