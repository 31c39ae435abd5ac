#pragma once

// Class-conditional geometric statistics and the two bounded potential
// functions used to combine linear classifiers: the symmetric transform
// g(z) of the raw discriminant, and the class-specific potential built
// from centroid and decision-plane-normal distances.

#include "lincomb/core.hpp"

namespace lincomb {

// Mixing and steepness coefficients of the class-specific potential.
struct PotentialParams {
    double beta = 0.5;   // in [0, 1]: weight of the centroid term
    double gamma = 1.0;  // > 0: steepness of peak and ridge

    void validate() const;
};

// Steepness/peak-position coefficient of the symmetric transform.
struct ZetaParam {
    double zeta = 0.5;  // > 0

    void validate() const;
};

// Per-class second-order description of the training cloud, relative to one
// member's decision plane: centroid, inverted (regularized) covariance, and
// the inverted variance of the signed projections onto the plane normal.
struct ClassGeometry {
    Vector centroid;
    Matrix cov_inverse;
    double normal_var_inverse = 1.0;
    BinaryLabel class_label = BinaryLabel::plus;
};

// One geometry per binary class, in fixed (+1, -1) order.
struct ClassGeometryPair {
    ClassGeometry plus;
    ClassGeometry minus;
};

// Arithmetic mean of the class-m feature vectors. Throws if class m is empty.
Vector class_centroid(const LabeledDataset& data, BinaryLabel m);

// Fits centroid, regularized inverse covariance and the projected variance
// for class m. The covariance uses the 1/(k-1) estimator and is regularized
// with lambda = 1e-6 * trace(S)/d before inversion. Classes with fewer than
// d+1 instances fall back to a diagonal covariance, and to the identity if
// any variance is zero. Requires at least 2 instances of class m.
ClassGeometry fit_class_geometry(const LabeledDataset& data, BinaryLabel m,
                                 const LinearModel& model);

ClassGeometryPair fit_class_geometry_pair(const LabeledDataset& data,
                                          const LinearModel& model);

// Mahalanobis distance sqrt((x-C)^T S^-1 (x-C)) to the class centroid.
double mahalanobis_dc(const ClassGeometry& g, const Vector& x);

// One-dimensional Mahalanobis distance of x's signed projection onto the
// plane normal, measured from the class centroid:
//   |<x - C, n>| * sqrt(normal_var_inverse).
// Invariant along directions orthogonal to n.
double normal_distance_dn(const ClassGeometry& g, const Vector& x,
                          const LinearModel& model);

// Class-specific potential
//   beta * exp(-gamma dc^2) + (1-beta) * exp(-gamma dn^2),
// in (0, 1]; equals 1 exactly at the class centroid.
double class_potential(const ClassGeometry& g, const Vector& x,
                       const LinearModel& model, const PotentialParams& p);

// Signed potential discriminant (+1)*w_plus(x) + (-1)*w_minus(x), in [-1, 1].
// The sign decision rule of core.hpp turns it into a prediction.
double pc_discriminant(const ClassGeometryPair& geoms, const Vector& x,
                       const LinearModel& model, const PotentialParams& p);

// Symmetric potential transform of a raw discriminant value:
//   g(z) = z * exp(-zeta z^2 + 0.5) * sqrt(2 zeta).
// Odd, sign-preserving, with peaks of exactly +-1 at z = +-1/sqrt(2 zeta).
double pf_transform(double z, const ZetaParam& zp);

}  // namespace lincomb
