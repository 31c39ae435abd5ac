#include "lincomb/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

namespace lincomb {

namespace {

constexpr std::uint64_t kInnerFoldSalt = 0x1f01d5ULL;

}  // namespace

ConfusionCounts confusion(const std::vector<int>& truth,
                          const std::vector<int>& predicted, int n_classes) {
    if (truth.empty()) throw std::invalid_argument("confusion: empty inputs");
    if (truth.size() != predicted.size()) {
        throw std::invalid_argument("confusion: truth/prediction length mismatch");
    }
    ConfusionCounts c;
    c.total = static_cast<long>(truth.size());
    c.tp.assign(n_classes, 0);
    c.tn.assign(n_classes, 0);
    c.fp.assign(n_classes, 0);
    c.fn.assign(n_classes, 0);
    for (std::size_t k = 0; k < truth.size(); ++k) {
        const int t = truth[k], p = predicted[k];
        if (t < 0 || t >= n_classes || p < 0 || p >= n_classes) {
            throw std::invalid_argument("confusion: label outside the class set at row " +
                                        std::to_string(k));
        }
        for (int i = 0; i < n_classes; ++i) {
            const bool truth_is_i = (t == i), pred_is_i = (p == i);
            if (pred_is_i && truth_is_i) c.tp[i]++;
            else if (pred_is_i && !truth_is_i) c.fp[i]++;
            else if (!pred_is_i && truth_is_i) c.fn[i]++;
            else c.tn[i]++;
        }
    }
    return c;
}

MacroMicro macro_metrics(const ConfusionCounts& c) {
    MacroMicro m;
    const int k = c.n_classes();
    for (int i = 0; i < k; ++i) {
        const double fdr_den = static_cast<double>(c.tp[i] + c.fp[i]);
        const double fnr_den = static_cast<double>(c.tp[i] + c.fn[i]);
        const double f1_den = static_cast<double>(2 * c.tp[i] + c.fp[i] + c.fn[i]);
        if (fdr_den > 0) m.fdr += c.fp[i] / fdr_den;
        if (fnr_den > 0) m.fnr += c.fn[i] / fnr_den;
        if (f1_den > 0) m.f1_loss += (c.fp[i] + c.fn[i]) / f1_den;
    }
    m.fdr /= k;
    m.fnr /= k;
    m.f1_loss /= k;
    return m;
}

MacroMicro micro_metrics(const ConfusionCounts& c) {
    long tp = 0, fp = 0, fn = 0;
    for (int i = 0; i < c.n_classes(); ++i) {
        tp += c.tp[i];
        fp += c.fp[i];
        fn += c.fn[i];
    }
    MacroMicro m;
    m.fdr = (tp + fp) > 0 ? static_cast<double>(fp) / (tp + fp) : 0.0;
    m.fnr = (tp + fn) > 0 ? static_cast<double>(fn) / (tp + fn) : 0.0;
    m.f1_loss = (2 * tp + fp + fn) > 0 ? static_cast<double>(fp + fn) / (2 * tp + fp + fn) : 0.0;
    return m;
}

double cohen_kappa(const std::vector<int>& truth, const std::vector<int>& predicted) {
    if (truth.empty() || truth.size() != predicted.size()) {
        throw std::invalid_argument("cohen_kappa: inputs must be nonempty and equal length");
    }
    std::map<int, double> row, col;
    std::map<std::pair<int, int>, double> joint;
    const double n = static_cast<double>(truth.size());
    for (std::size_t i = 0; i < truth.size(); ++i) {
        row[truth[i]] += 1.0;
        col[predicted[i]] += 1.0;
        joint[{truth[i], predicted[i]}] += 1.0;
    }
    double agree = 0.0;
    for (const auto& [key, count] : joint) {
        if (key.first == key.second) agree += count;
    }
    const double p_o = agree / n;  // one division keeps perfect agreement at exactly 1
    double p_e = 0.0;
    for (const auto& [label, r] : row) {
        auto it = col.find(label);
        if (it != col.end()) p_e += (r / n) * (it->second / n);
    }
    if (p_e >= 1.0) return 1.0;  // both sides constant and identical
    return (p_o - p_e) / (1.0 - p_e);
}

MetricSet evaluate_predictions(const std::vector<int>& truth,
                               const std::vector<int>& predicted, int n_classes) {
    const ConfusionCounts c = confusion(truth, predicted, n_classes);
    const MacroMicro macro = macro_metrics(c);
    const MacroMicro micro = micro_metrics(c);
    MetricSet m;
    m.macro_fdr = macro.fdr;
    m.macro_fnr = macro.fnr;
    m.macro_f1_loss = macro.f1_loss;
    m.micro_fdr = micro.fdr;
    m.micro_fnr = micro.fnr;
    m.micro_f1_loss = micro.f1_loss;
    m.kappa = cohen_kappa(truth, predicted);
    return m;
}

const std::vector<std::string>& criterion_names() {
    static const std::vector<std::string> names = {
        "macro_fdr", "macro_fnr", "macro_f1_loss",
        "micro_fdr", "micro_fnr", "micro_f1_loss"};
    return names;
}

double criterion_value(const MetricSet& m, const std::string& criterion) {
    if (criterion == "macro_fdr") return m.macro_fdr;
    if (criterion == "macro_fnr") return m.macro_fnr;
    if (criterion == "macro_f1_loss") return m.macro_f1_loss;
    if (criterion == "micro_fdr") return m.micro_fdr;
    if (criterion == "micro_fnr") return m.micro_fnr;
    if (criterion == "micro_f1_loss") return m.micro_f1_loss;
    if (criterion == "kappa") return m.kappa;
    throw std::invalid_argument("unknown criterion: " + criterion);
}

GridSpec GridSpec::defaults() {
    GridSpec g;
    for (int i = 0; i <= 10; ++i) g.betas.push_back(i / 10.0);
    g.gammas = {0.25, 0.5, 1.0, 2.0, 4.0};
    g.inner_folds = 3;
    return g;
}

void GridSpec::validate() const {
    if (betas.empty() || gammas.empty()) throw std::invalid_argument("empty tuning grid");
    for (double b : betas) {
        if (!(b >= 0.0 && b <= 1.0)) throw std::invalid_argument("grid beta outside [0, 1]");
    }
    for (double g : gammas) {
        if (!(g > 0.0)) throw std::invalid_argument("grid gamma must be positive");
    }
    if (inner_folds < 2) throw std::invalid_argument("inner_folds must be >= 2");
}

FoldAssignment stratified_folds(const std::vector<int>& labels, int k,
                                std::uint64_t seed) {
    if (labels.empty()) throw std::invalid_argument("stratified_folds: no labels");
    if (k < 2) throw std::invalid_argument("stratified_folds: need k >= 2");

    std::map<int, std::vector<int>> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        by_class[labels[i]].push_back(static_cast<int>(i));
    }
    int min_count = std::numeric_limits<int>::max();
    for (const auto& [label, rows] : by_class) {
        min_count = std::min(min_count, static_cast<int>(rows.size()));
    }
    if (min_count < 2) {
        throw std::invalid_argument("stratified_folds: a class has fewer than 2 instances");
    }

    FoldAssignment out;
    out.n_folds = std::min(k, min_count);
    out.lowered = out.n_folds < k;
    out.fold_of.assign(labels.size(), 0);

    for (auto& [label, rows] : by_class) {
        std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(label)));
        std::shuffle(rows.begin(), rows.end(), rng);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            out.fold_of[rows[i]] = static_cast<int>(i % out.n_folds);
        }
    }
    return out;
}

namespace {

struct FoldModels {
    std::vector<std::optional<OvoModel>> models;  // one per fold; nullopt = training failed
    std::vector<std::vector<int>> val_rows;
    const LabeledDataset* data = nullptr;
};

// Trains one bagged one-vs-one model per inner fold. The trained members do
// not depend on the candidate cell, so a grid scan can reuse them.
FoldModels train_fold_models(const LabeledDataset& data, const TrainerConfig& trainer,
                             const BagSpec& bag, const GridSpec& grid,
                             CombinerKind kind) {
    grid.validate();
    const FoldAssignment folds =
        stratified_folds(data.labels(), grid.inner_folds, mix_seed(bag.seed, kInnerFoldSalt));

    FoldModels out;
    out.data = &data;
    for (int f = 0; f < folds.n_folds; ++f) {
        std::vector<int> train_rows, val_rows;
        for (int i = 0; i < data.size(); ++i) {
            (folds.fold_of[i] == f ? val_rows : train_rows).push_back(i);
        }
        out.val_rows.push_back(std::move(val_rows));
        CombinerConfig cfg;
        cfg.kind = kind;  // placeholder parameters, swapped per cell
        BagSpec fold_bag = bag;
        fold_bag.seed = mix_seed(bag.seed, 0xf01dULL + f);
        try {
            out.models.emplace_back(
                ovo_train(data.subset(train_rows), trainer, fold_bag, cfg));
        } catch (const std::exception&) {
            out.models.emplace_back(std::nullopt);
        }
    }
    return out;
}

// Mean held-out kappa over the folds that trained, or NaN if none did.
template <typename SetParams>
double eval_fold_models(FoldModels& fm, SetParams&& set_params) {
    double sum = 0.0;
    int used = 0;
    for (std::size_t f = 0; f < fm.models.size(); ++f) {
        if (!fm.models[f]) continue;
        OvoModel& model = *fm.models[f];
        for (auto& e : model.pair_ensembles) set_params(e);
        std::vector<int> truth;
        Matrix feats(fm.val_rows[f].size(), fm.data->dim());
        for (std::size_t i = 0; i < fm.val_rows[f].size(); ++i) {
            truth.push_back(fm.data->label(fm.val_rows[f][i]));
            feats.row(i) = fm.data->features().row(fm.val_rows[f][i]);
        }
        const std::vector<int> pred = ovo_predict_all(model, feats);
        sum += cohen_kappa(truth, pred);
        used++;
    }
    if (used == 0) return std::numeric_limits<double>::quiet_NaN();
    return sum / used;
}

}  // namespace

double pc_cell_kappa(const LabeledDataset& data, const TrainerConfig& trainer,
                     const BagSpec& bag, const GridSpec& grid,
                     const PotentialParams& cell) {
    cell.validate();
    FoldModels fm = train_fold_models(data, trainer, bag, grid, CombinerKind::pc);
    return eval_fold_models(fm, [&](Ensemble& e) { e.potential_params = cell; });
}

double pf_cell_kappa(const LabeledDataset& data, const TrainerConfig& trainer,
                     const BagSpec& bag, const GridSpec& grid, const ZetaParam& cell) {
    cell.validate();
    FoldModels fm = train_fold_models(data, trainer, bag, grid, CombinerKind::pf);
    return eval_fold_models(fm, [&](Ensemble& e) { e.zeta = cell; });
}

PotentialParams grid_search(const LabeledDataset& data, const TrainerConfig& trainer,
                            const BagSpec& bag, const GridSpec& grid) {
    FoldModels fm = train_fold_models(data, trainer, bag, grid, CombinerKind::pc);

    bool found = false;
    PotentialParams best;
    double best_kappa = -std::numeric_limits<double>::infinity();
    for (double beta : grid.betas) {
        for (double gamma : grid.gammas) {
            const PotentialParams cell{beta, gamma};
            const double kappa =
                eval_fold_models(fm, [&](Ensemble& e) { e.potential_params = cell; });
            if (std::isnan(kappa)) continue;  // untrainable cell, skip
            if (kappa > best_kappa) {
                best_kappa = kappa;
                best = cell;
                found = true;
            }
        }
    }
    if (!found) {
        throw std::runtime_error("grid_search: no grid cell could be evaluated");
    }
    return best;
}

ZetaParam tune_zeta(const LabeledDataset& data, const TrainerConfig& trainer,
                    const BagSpec& bag, const GridSpec& grid) {
    FoldModels fm = train_fold_models(data, trainer, bag, grid, CombinerKind::pf);

    bool found = false;
    ZetaParam best;
    double best_kappa = -std::numeric_limits<double>::infinity();
    for (double zeta : grid.gammas) {
        const ZetaParam cell{zeta};
        const double kappa = eval_fold_models(fm, [&](Ensemble& e) { e.zeta = cell; });
        if (std::isnan(kappa)) continue;
        if (kappa > best_kappa) {
            best_kappa = kappa;
            best = cell;
            found = true;
        }
    }
    if (!found) {
        throw std::runtime_error("tune_zeta: no grid cell could be evaluated");
    }
    return best;
}

}  // namespace lincomb
