#include "lincomb/core.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace lincomb {

namespace {

void check_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
    if (a != b) {
        throw std::invalid_argument(std::string(what) + ": dimensionality mismatch (" +
                                    std::to_string(a) + " vs " + std::to_string(b) + ")");
    }
}

}  // namespace

LabeledDataset::LabeledDataset(Matrix features, std::vector<int> labels,
                               std::vector<std::string> class_names)
    : features_(std::move(features)),
      labels_(std::move(labels)),
      class_names_(std::move(class_names)) {
    if (features_.rows() < 2) {
        throw std::invalid_argument("dataset needs at least two instances");
    }
    if (static_cast<Eigen::Index>(labels_.size()) != features_.rows()) {
        throw std::invalid_argument("label count does not match instance count");
    }
    if (!features_.allFinite()) {
        throw std::invalid_argument("dataset contains non-finite feature values");
    }
    std::set<int> present;
    for (int y : labels_) {
        if (y < 0 || y >= n_classes()) {
            throw std::invalid_argument("label index out of range: " + std::to_string(y));
        }
        present.insert(y);
    }
    if (present.size() < 2) {
        throw std::invalid_argument("dataset needs at least two distinct labels");
    }
}

LabeledDataset LabeledDataset::from_binary(Matrix features,
                                           const std::vector<BinaryLabel>& labels) {
    std::vector<int> idx(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        idx[i] = labels[i] == BinaryLabel::plus ? 0 : 1;
    }
    return LabeledDataset(std::move(features), std::move(idx), {"+1", "-1"});
}

BinaryLabel LabeledDataset::binary_label(int i) const {
    if (n_classes() != 2) {
        throw std::logic_error("binary_label requires a two-class dataset");
    }
    return labels_[i] == 0 ? BinaryLabel::plus : BinaryLabel::minus;
}

std::vector<int> LabeledDataset::class_counts() const {
    std::vector<int> counts(n_classes(), 0);
    for (int y : labels_) counts[y]++;
    return counts;
}

double LabeledDataset::imbalance_ratio() const {
    const auto counts = class_counts();
    const int largest = *std::max_element(counts.begin(), counts.end());
    double sum = 0.0;
    int present = 0;
    for (int c : counts) {
        if (c > 0) {
            sum += static_cast<double>(largest) / c;
            present++;
        }
    }
    return sum / present;
}

LabeledDataset LabeledDataset::subset(const std::vector<int>& rows) const {
    Matrix x(rows.size(), dim());
    std::vector<int> y(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] < 0 || rows[i] >= size()) {
            throw std::out_of_range("subset row index out of range");
        }
        x.row(i) = features_.row(rows[i]);
        y[i] = labels_[rows[i]];
    }
    return LabeledDataset(std::move(x), std::move(y), class_names_);
}

LabeledDataset LabeledDataset::pair_subset(int class_a, int class_b) const {
    if (class_a == class_b || class_a < 0 || class_b < 0 || class_a >= n_classes() ||
        class_b >= n_classes()) {
        throw std::invalid_argument("pair_subset needs two distinct valid class indices");
    }
    std::vector<int> rows;
    std::vector<int> y;
    for (int i = 0; i < size(); ++i) {
        if (labels_[i] == class_a || labels_[i] == class_b) {
            rows.push_back(i);
            y.push_back(labels_[i] == class_a ? 0 : 1);
        }
    }
    Matrix x(rows.size(), dim());
    for (std::size_t i = 0; i < rows.size(); ++i) x.row(i) = features_.row(rows[i]);
    return LabeledDataset(std::move(x), std::move(y),
                          {class_names_[class_a], class_names_[class_b]});
}

LabeledDataset LabeledDataset::with_features(Matrix features) const {
    if (features.rows() != features_.rows()) {
        throw std::invalid_argument("with_features: instance count changed");
    }
    return LabeledDataset(std::move(features), labels_, class_names_);
}

LinearModel::LinearModel(Vector n, double b) : normal(std::move(n)), offset(b) {
    const double len = normal.norm();
    if (!(len > 0.0) || !std::isfinite(len)) {
        throw std::invalid_argument("degenerate decision plane: zero or non-finite normal");
    }
    normal /= len;
    offset /= len;
}

double dot(const Vector& a, const Vector& b) {
    check_same_dim(a.size(), b.size(), "dot");
    return a.dot(b);
}

double norm(const Vector& x) { return std::sqrt(x.dot(x)); }

double discriminant(const LinearModel& m, const Vector& x) {
    check_same_dim(m.normal.size(), x.size(), "discriminant");
    return m.normal.dot(x) + m.offset;
}

BinaryLabel classify(const LinearModel& m, const Vector& x) {
    return sign_label(discriminant(m, x));
}

Vector project_onto_normal(const Vector& v, const Vector& n) {
    check_same_dim(v.size(), n.size(), "project_onto_normal");
    const double nn = n.dot(n);
    if (!(nn > 0.0)) {
        throw std::invalid_argument("project_onto_normal: zero normal vector");
    }
    return (v.dot(n) / nn) * n;
}

}  // namespace lincomb
