#include "lincomb/trainers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace lincomb {

const char* trainer_name(TrainerKind k) {
    switch (k) {
        case TrainerKind::flda: return "FLDA";
        case TrainerKind::logistic: return "LR";
        case TrainerKind::mlp: return "MLP";
        case TrainerKind::nearest_centroid: return "NC";
        case TrainerKind::linear_svm: return "SVM";
    }
    throw std::logic_error("unknown trainer kind");
}

TrainerKind trainer_from_name(const std::string& name) {
    if (name == "FLDA") return TrainerKind::flda;
    if (name == "LR") return TrainerKind::logistic;
    if (name == "MLP") return TrainerKind::mlp;
    if (name == "NC") return TrainerKind::nearest_centroid;
    if (name == "SVM") return TrainerKind::linear_svm;
    throw std::invalid_argument("unknown base learner: " + name);
}

void TrainerConfig::validate() const {
    if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
    if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be > 0");
    if (regularization < 0.0) throw std::invalid_argument("regularization must be >= 0");
}

TrainerConfig default_config(TrainerKind kind) {
    TrainerConfig cfg;
    cfg.kind = kind;
    switch (kind) {
        case TrainerKind::logistic: cfg.regularization = 1e-8; break;
        case TrainerKind::linear_svm: cfg.regularization = 1.0; break;
        default: break;
    }
    return cfg;
}

namespace {

struct BinaryView {
    Matrix x;             // instances
    std::vector<double> y;  // +-1 targets
    int n = 0;
    int d = 0;
    int n_plus = 0;
    int n_minus = 0;
};

BinaryView binary_view(const LabeledDataset& data, const char* who, int min_per_class) {
    if (data.n_classes() != 2) {
        throw std::invalid_argument(std::string(who) + ": expected a two-class dataset");
    }
    BinaryView v;
    v.n = data.size();
    v.d = data.dim();
    v.x = data.features();
    v.y.resize(v.n);
    for (int i = 0; i < v.n; ++i) {
        v.y[i] = label_value(data.binary_label(i));
        (v.y[i] > 0 ? v.n_plus : v.n_minus)++;
    }
    if (v.n_plus < min_per_class || v.n_minus < min_per_class) {
        throw std::invalid_argument(std::string(who) + ": each class needs at least " +
                                    std::to_string(min_per_class) + " instances");
    }
    return v;
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

TrainResult train_flda(const LabeledDataset& data) {
    const auto v = binary_view(data, "train_flda", 2);
    const int d = v.d;

    Vector mu_plus = Vector::Zero(d), mu_minus = Vector::Zero(d);
    for (int i = 0; i < v.n; ++i) {
        (v.y[i] > 0 ? mu_plus : mu_minus) += v.x.row(i).transpose();
    }
    mu_plus /= v.n_plus;
    mu_minus /= v.n_minus;

    // Pooled within-class covariance.
    Matrix sw = Matrix::Zero(d, d);
    for (int i = 0; i < v.n; ++i) {
        const Vector c = v.x.row(i).transpose() - (v.y[i] > 0 ? mu_plus : mu_minus);
        sw += c * c.transpose();
    }
    sw /= (v.n - 2.0);
    sw += (1e-6 * sw.trace() / d) * Matrix::Identity(d, d);

    Eigen::LLT<Matrix> llt(sw);
    if (llt.info() != Eigen::Success) {
        throw std::runtime_error("train_flda: within-class scatter not invertible");
    }
    const Vector n = llt.solve(mu_plus - mu_minus);
    const double b = -n.dot(0.5 * (mu_plus + mu_minus));
    return TrainResult{LinearModel(n, b), {}};
}

TrainResult train_logistic(const LabeledDataset& data, const TrainerConfig& cfg) {
    cfg.validate();
    const auto v = binary_view(data, "train_logistic", 1);
    const double lambda = cfg.regularization;

    Vector w = Vector::Zero(v.d);
    double b = 0.0;
    Vector best_w = w;
    double best_b = b, best_obj = std::numeric_limits<double>::infinity();

    // Penalized negative mean log-likelihood; the offset is not penalized.
    const auto objective = [&](const Vector& wc, double bc) {
        double obj = 0.0;
        for (int i = 0; i < v.n; ++i) {
            const double margin = v.y[i] * (v.x.row(i).dot(wc) + bc);
            // log(1 + exp(-m)), stable for large |m|
            obj += margin > 0 ? std::log1p(std::exp(-margin))
                              : -margin + std::log1p(std::exp(margin));
        }
        return obj / v.n + 0.5 * lambda * wc.squaredNorm();
    };

    TrainDiagnostics diag;
    diag.converged = false;
    for (int t = 1; t <= cfg.max_iters; ++t) {
        Vector grad_w = lambda * w;
        double grad_b = 0.0;
        for (int i = 0; i < v.n; ++i) {
            const double z = v.x.row(i).dot(w) + b;
            const double s = sigmoid(-v.y[i] * z);  // 1 - P(correct label)
            grad_w -= (v.y[i] * s / v.n) * v.x.row(i).transpose();
            grad_b -= v.y[i] * s / v.n;
        }
        const double step = cfg.learning_rate / t;
        w -= step * grad_w;
        b -= step * grad_b;

        const double obj = objective(w, b);
        if (obj < best_obj) {
            best_obj = obj;
            best_w = w;
            best_b = b;
        }
        diag.iterations = t;
        if (std::max(grad_w.cwiseAbs().maxCoeff(), std::abs(grad_b)) < 1e-6) {
            diag.converged = true;
            break;
        }
    }
    if (!diag.converged) diag.note = "gradient tolerance not reached; best iterate returned";
    return TrainResult{LinearModel(best_w, best_b), diag};
}

TrainResult train_mlp(const LabeledDataset& data, const TrainerConfig& cfg) {
    cfg.validate();
    const auto v = binary_view(data, "train_mlp", 1);

    Vector w = Vector::Zero(v.d);
    double b = 0.0;
    std::mt19937_64 rng(cfg.seed);
    std::vector<int> order(v.n);
    for (int i = 0; i < v.n; ++i) order[i] = i;

    for (int epoch = 1; epoch <= cfg.max_iters; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        const double step = cfg.learning_rate / epoch;
        for (int i : order) {
            const double target = v.y[i] > 0 ? 1.0 : 0.0;
            const double a = sigmoid(v.x.row(i).dot(w) + b);
            const double delta = (a - target) * a * (1.0 - a);  // squared-loss delta rule
            w -= step * delta * v.x.row(i).transpose();
            b -= step * delta;
        }
    }

    TrainDiagnostics diag;
    diag.iterations = cfg.max_iters;
    if (w.norm() == 0.0) {
        throw std::runtime_error("train_mlp: degenerate zero-weight unit after training");
    }
    return TrainResult{LinearModel(w, b), diag};
}

TrainResult train_nearest_centroid(const LabeledDataset& data) {
    const auto v = binary_view(data, "train_nearest_centroid", 2);
    Vector c_plus = Vector::Zero(v.d), c_minus = Vector::Zero(v.d);
    for (int i = 0; i < v.n; ++i) {
        (v.y[i] > 0 ? c_plus : c_minus) += v.x.row(i).transpose();
    }
    c_plus /= v.n_plus;
    c_minus /= v.n_minus;

    const Vector n = c_plus - c_minus;
    if (n.norm() <= 1e-12 * std::max(1.0, std::max(c_plus.norm(), c_minus.norm()))) {
        throw std::runtime_error("train_nearest_centroid: coincident class centroids");
    }
    const double b = -n.dot(0.5 * (c_plus + c_minus));
    return TrainResult{LinearModel(n, b), {}};
}

TrainResult train_linear_svm(const LabeledDataset& data, const TrainerConfig& cfg) {
    cfg.validate();
    const auto v = binary_view(data, "train_linear_svm", 1);

    TrainDiagnostics diag;
    const bool degenerate = cfg.regularization == 0.0;
    const double lambda = degenerate ? 1e9 : 1.0 / (cfg.regularization * v.n);

    Vector w = Vector::Zero(v.d);
    double b = 0.0;
    Vector w_avg = Vector::Zero(v.d);
    double b_avg = 0.0;
    long averaged = 0;

    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> pick(0, v.n - 1);
    const long total_steps = static_cast<long>(cfg.max_iters) * v.n;
    const long tail_start = total_steps / 2;  // suffix averaging
    const double radius = 1.0 / std::sqrt(lambda);

    for (long t = 1; t <= total_steps; ++t) {
        const int i = pick(rng);
        const double eta = 1.0 / (lambda * t);
        const double margin = v.y[i] * (v.x.row(i).dot(w) + b);
        w *= (1.0 - eta * lambda);
        if (margin < 1.0) {
            w += eta * v.y[i] * v.x.row(i).transpose();
            b += eta * v.y[i];  // offset follows the hinge subgradient, unregularized
        }
        const double wn = w.norm();
        if (wn > radius) w *= radius / wn;
        if (t > tail_start) {
            w_avg += w;
            b_avg += b;
            averaged++;
        }
    }
    w_avg /= averaged;
    b_avg /= averaged;
    diag.iterations = cfg.max_iters;

    if (degenerate) {
        diag.degenerate = true;
        diag.converged = false;
        diag.note = "C = 0: maximally regularized, near-zero weights";
    }
    if (w_avg.norm() == 0.0) {
        throw std::runtime_error("train_linear_svm: zero weight vector after training");
    }
    return TrainResult{LinearModel(w_avg, b_avg), diag};
}

TrainResult train(const LabeledDataset& data, const TrainerConfig& cfg) {
    switch (cfg.kind) {
        case TrainerKind::flda: return train_flda(data);
        case TrainerKind::logistic: return train_logistic(data, cfg);
        case TrainerKind::mlp: return train_mlp(data, cfg);
        case TrainerKind::nearest_centroid: return train_nearest_centroid(data);
        case TrainerKind::linear_svm: return train_linear_svm(data, cfg);
    }
    throw std::logic_error("unknown trainer kind");
}

}  // namespace lincomb
