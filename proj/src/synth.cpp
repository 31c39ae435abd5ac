#include "lincomb/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace lincomb {

namespace {

LabeledDataset assemble(Matrix features, std::vector<int> labels) {
    return LabeledDataset(std::move(features), std::move(labels), {"A", "B"});
}

void check_n(int n) {
    if (n < 4) throw std::invalid_argument("generator: need at least 4 instances");
}

}  // namespace

LabeledDataset make_banana(int n, std::uint64_t seed, double noise) {
    check_n(n);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
    std::normal_distribution<double> jitter(0.0, noise);

    const int n_a = n / 2;
    Matrix x(n, 2);
    std::vector<int> y(n);
    for (int i = 0; i < n; ++i) {
        const double t = angle(rng);
        if (i < n_a) {
            x(i, 0) = std::cos(t) + jitter(rng);
            x(i, 1) = std::sin(t) + jitter(rng);
            y[i] = 0;
        } else {
            x(i, 0) = 1.0 - std::cos(t) + jitter(rng);
            x(i, 1) = 0.25 - std::sin(t) + jitter(rng);
            y[i] = 1;
        }
    }
    return assemble(std::move(x), std::move(y));
}

LabeledDataset make_spirals(int n, std::uint64_t seed, double noise, double turns) {
    check_n(n);
    if (turns <= 0.0) throw std::invalid_argument("make_spirals: turns must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> jitter(0.0, noise);

    const int n_a = n / 2;
    Matrix x(n, 2);
    std::vector<int> y(n);
    for (int i = 0; i < n; ++i) {
        const double u = unit(rng);
        const double theta = 2.0 * std::numbers::pi * turns * std::sqrt(u);
        const double r = 0.25 + theta / (2.0 * std::numbers::pi * turns) * 1.75;
        const double phase = (i < n_a) ? 0.0 : std::numbers::pi;
        x(i, 0) = r * std::cos(theta + phase) + jitter(rng);
        x(i, 1) = r * std::sin(theta + phase) + jitter(rng);
        y[i] = (i < n_a) ? 0 : 1;
    }
    return assemble(std::move(x), std::move(y));
}

LabeledDataset make_gaussians(int n, std::uint64_t seed, double separation, int dim) {
    check_n(n);
    if (dim < 1) throw std::invalid_argument("make_gaussians: dim must be >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    const int n_a = n / 2;
    Matrix x(n, dim);
    std::vector<int> y(n);
    for (int i = 0; i < n; ++i) {
        const double offset = (i < n_a) ? -separation / 2.0 : separation / 2.0;
        for (int j = 0; j < dim; ++j) x(i, j) = gauss(rng);
        x(i, 0) += offset;
        y[i] = (i < n_a) ? 0 : 1;
    }
    return assemble(std::move(x), std::move(y));
}

}  // namespace lincomb
