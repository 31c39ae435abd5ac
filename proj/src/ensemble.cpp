#include "lincomb/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace lincomb {

const char* combiner_name(CombinerKind k) {
    switch (k) {
        case CombinerKind::sm: return "SM";
        case CombinerKind::ma: return "MA";
        case CombinerKind::mv: return "MV";
        case CombinerKind::pf: return "PF";
        case CombinerKind::pc: return "PC";
    }
    throw std::logic_error("unknown combiner kind");
}

CombinerKind combiner_from_name(const std::string& name) {
    if (name == "SM") return CombinerKind::sm;
    if (name == "MA") return CombinerKind::ma;
    if (name == "MV") return CombinerKind::mv;
    if (name == "PF") return CombinerKind::pf;
    if (name == "PC") return CombinerKind::pc;
    throw std::invalid_argument("unknown combiner: " + name);
}

void BagSpec::validate() const {
    if (n_members < 1) throw std::invalid_argument("bagging needs at least one member");
    if (!(sample_fraction > 0.0 && sample_fraction <= 1.0)) {
        throw std::invalid_argument("sample_fraction must lie in (0, 1]");
    }
}

namespace {

// k indices out of n without replacement (partial Fisher-Yates), sorted so
// that a full-sample bag reproduces the original instance order.
std::vector<int> sample_without_replacement(int n, int k, std::mt19937_64& rng) {
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    for (int i = 0; i < k; ++i) {
        std::uniform_int_distribution<int> pick(i, n - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

bool bag_usable(const LabeledDataset& data, const std::vector<int>& rows) {
    int plus = 0, minus = 0;
    for (int r : rows) {
        (data.binary_label(r) == BinaryLabel::plus ? plus : minus)++;
    }
    // Trainers and geometry fits need two instances per class, so a bag
    // leaving a class below that is redrawn like a class-free bag.
    return plus >= 2 && minus >= 2;
}

}  // namespace

Ensemble bag_train(const LabeledDataset& data, const TrainerConfig& trainer,
                   const BagSpec& spec, const CombinerConfig& combiner) {
    spec.validate();
    if (combiner.kind == CombinerKind::pc) combiner.potential_params.validate();
    if (combiner.kind == CombinerKind::pf) combiner.zeta.validate();

    const int n = data.size();
    const int k = std::max(2, static_cast<int>(std::ceil(spec.sample_fraction * n)));

    Ensemble e;
    e.combiner = combiner.kind;
    if (combiner.kind == CombinerKind::pc) e.potential_params = combiner.potential_params;
    if (combiner.kind == CombinerKind::pf) e.zeta = combiner.zeta;

    for (int member = 0; member < spec.n_members; ++member) {
        std::mt19937_64 rng(mix_seed(spec.seed, member));
        std::vector<int> rows;
        bool ok = false;
        for (int attempt = 0; attempt < 100; ++attempt) {
            rows = sample_without_replacement(n, k, rng);
            if (bag_usable(data, rows)) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            throw std::runtime_error("bag_train: bags keep missing a class after 100 redraws");
        }
        const LabeledDataset bag = data.subset(rows);
        TrainResult result = train(bag, trainer);
        if (combiner.kind == CombinerKind::pc) {
            e.member_geometry.push_back(fit_class_geometry_pair(bag, result.model));
        }
        e.members.push_back(std::move(result.model));
    }
    return e;
}

double combine_mv(const Ensemble& e, const Vector& x) {
    double votes = 0.0;
    for (const auto& m : e.members) votes += label_value(classify(m, x));
    return votes;
}

double combine_ma(const Ensemble& e, const Vector& x) {
    double sum = 0.0;
    for (const auto& m : e.members) sum += discriminant(m, x);
    return sum / e.n_members();
}

double combine_sm(const Ensemble& e, const Vector& x) {
    double sum = 0.0;
    for (const auto& m : e.members) sum += 1.0 / (1.0 + std::exp(-discriminant(m, x)));
    return sum / e.n_members();
}

double combine_pf(const Ensemble& e, const Vector& x) {
    if (!e.zeta) throw std::invalid_argument("PF combiner needs a zeta parameter");
    double sum = 0.0;
    for (const auto& m : e.members) sum += pf_transform(discriminant(m, x), *e.zeta);
    return sum / e.n_members();
}

double combine_pc(const Ensemble& e, const Vector& x) {
    if (!e.potential_params) {
        throw std::invalid_argument("PC combiner needs potential parameters");
    }
    if (static_cast<int>(e.member_geometry.size()) != e.n_members()) {
        throw std::invalid_argument("PC combiner needs geometry for every member");
    }
    double sum = 0.0;
    for (int i = 0; i < e.n_members(); ++i) {
        sum += pc_discriminant(e.member_geometry[i], x, e.members[i], *e.potential_params);
    }
    return sum / e.n_members();
}

double ensemble_discriminant(const Ensemble& e, const Vector& x) {
    if (e.members.empty()) throw std::invalid_argument("empty ensemble");
    switch (e.combiner) {
        case CombinerKind::sm: return combine_sm(e, x);
        case CombinerKind::ma: return combine_ma(e, x);
        case CombinerKind::mv: return combine_mv(e, x);
        case CombinerKind::pf: return combine_pf(e, x);
        case CombinerKind::pc: return combine_pc(e, x);
    }
    throw std::logic_error("unknown combiner kind");
}

BinaryLabel ensemble_classify(const Ensemble& e, const Vector& x) {
    const double value = ensemble_discriminant(e, x);
    // The softmax mean lives in (0,1); its natural threshold is 1/2.
    return sign_label(e.combiner == CombinerKind::sm ? value - 0.5 : value);
}

OvoModel ovo_train(const LabeledDataset& data, const TrainerConfig& trainer,
                   const BagSpec& spec, const CombinerConfig& combiner) {
    OvoModel model;
    model.class_names = data.class_names();
    const int c = data.n_classes();
    if (c < 2) throw std::invalid_argument("ovo_train: need at least two classes");

    int pair_index = 0;
    for (int a = 0; a < c; ++a) {
        for (int b = a + 1; b < c; ++b, ++pair_index) {
            LabeledDataset pair_data = [&] {
                try {
                    return data.pair_subset(a, b);
                } catch (const std::exception&) {
                    throw std::runtime_error("ovo_train: class pair (" +
                                             data.class_names()[a] + ", " +
                                             data.class_names()[b] +
                                             ") has an empty or singleton class");
                }
            }();
            BagSpec pair_spec = spec;
            pair_spec.seed = mix_seed(spec.seed, 0x0707ULL + pair_index);
            model.class_pairs.emplace_back(a, b);
            model.pair_ensembles.push_back(bag_train(pair_data, trainer, pair_spec, combiner));
        }
    }
    return model;
}

int ovo_predict(const OvoModel& m, const Vector& x) {
    std::vector<int> wins(m.n_classes(), 0);
    for (std::size_t p = 0; p < m.class_pairs.size(); ++p) {
        const auto [a, b] = m.class_pairs[p];
        const BinaryLabel decision = ensemble_classify(m.pair_ensembles[p], x);
        wins[decision == BinaryLabel::plus ? a : b]++;
    }
    int best = 0;
    for (int c = 1; c < m.n_classes(); ++c) {
        if (wins[c] > wins[best]) best = c;  // ties keep the smaller index
    }
    return best;
}

std::vector<int> ovo_predict_all(const OvoModel& m, const Matrix& features) {
    std::vector<int> out(features.rows());
    for (Eigen::Index i = 0; i < features.rows(); ++i) {
        out[i] = ovo_predict(m, features.row(i).transpose());
    }
    return out;
}

}  // namespace lincomb
