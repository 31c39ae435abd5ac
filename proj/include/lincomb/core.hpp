#pragma once

// Feature-space primitives: vectors, labeled datasets, hyperplane models
// and the sign decision rule shared by every classifier in this library.

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lincomb {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// The two admissible labels of a binary problem.
enum class BinaryLabel : int { minus = -1, plus = +1 };

inline double label_value(BinaryLabel m) { return m == BinaryLabel::plus ? 1.0 : -1.0; }
inline BinaryLabel opposite(BinaryLabel m) {
    return m == BinaryLabel::plus ? BinaryLabel::minus : BinaryLabel::plus;
}

// sign(z) with the fixed tie-break sign(0) = +1, so that vote counting and
// ensemble decisions stay deterministic.
inline BinaryLabel sign_label(double z) {
    return z < 0.0 ? BinaryLabel::minus : BinaryLabel::plus;
}

// splitmix64 mixing; derives decorrelated child RNG streams from a parent
// seed and a salt (member index, fold index, cell id, ...).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Instances with class indices into a shared class-name table. Multiclass
// datasets are handled by the pairwise decomposition in ensemble.hpp; every
// trainer in trainers.hpp expects exactly two classes.
class LabeledDataset {
public:
    // Rows of `features` are instances; `labels[i]` indexes into `class_names`.
    // Requires at least two instances, at least two distinct labels present,
    // and all feature entries finite.
    LabeledDataset(Matrix features, std::vector<int> labels,
                   std::vector<std::string> class_names);

    // Binary convenience constructor: plus maps to class index 0.
    static LabeledDataset from_binary(Matrix features,
                                      const std::vector<BinaryLabel>& labels);

    int size() const { return static_cast<int>(features_.rows()); }
    int dim() const { return static_cast<int>(features_.cols()); }
    int n_classes() const { return static_cast<int>(class_names_.size()); }

    const Matrix& features() const { return features_; }
    Vector instance(int i) const { return features_.row(i).transpose(); }
    int label(int i) const { return labels_[i]; }
    const std::vector<int>& labels() const { return labels_; }
    const std::vector<std::string>& class_names() const { return class_names_; }

    // Binary view: class index 0 is +1, class index 1 is -1.
    BinaryLabel binary_label(int i) const;
    std::vector<int> class_counts() const;
    // Average imbalance ratio: mean over classes of |largest class| / |class|.
    double imbalance_ratio() const;

    // Row subset, preserving the class-name table. The subset must still
    // contain at least two distinct labels.
    LabeledDataset subset(const std::vector<int>& rows) const;
    // Binary dataset of the instances belonging to the two given classes;
    // class_a becomes index 0 (+1), class_b index 1 (-1).
    LabeledDataset pair_subset(int class_a, int class_b) const;
    // Same instances, different feature matrix (e.g. after preprocessing).
    LabeledDataset with_features(Matrix features) const;

private:
    Matrix features_;
    std::vector<int> labels_;
    std::vector<std::string> class_names_;
};

// Decision hyperplane {x : <n,x> + b = 0}. The constructor normalizes the
// pair (n, b) jointly so that ||n|| = 1; trainers may hand in unnormalized
// planes. A zero normal vector is rejected.
struct LinearModel {
    Vector normal;
    double offset = 0.0;

    LinearModel(Vector n, double b);
    int dim() const { return static_cast<int>(normal.size()); }
};

// Dot product with an explicit dimensionality check.
double dot(const Vector& a, const Vector& b);

// Euclidean norm.
double norm(const Vector& x);

// Signed perpendicular distance from the decision plane to x.
double discriminant(const LinearModel& m, const Vector& x);

// Sign decision rule; an exact zero maps to +1.
BinaryLabel classify(const LinearModel& m, const Vector& x);

// Orthogonal projection of v onto the direction of n. Throws on a zero n.
Vector project_onto_normal(const Vector& v, const Vector& n);

}  // namespace lincomb
