#pragma once

// Classification quality criteria: one-vs-rest confusion quadruples, the six
// macro/micro losses (FDR, FNR, F1-loss), Cohen's kappa, and the grid search
// tuning the potential-combiner coefficients by inner cross-validated kappa.

#include "lincomb/ensemble.hpp"

namespace lincomb {

// Per-class one-vs-rest counts; for every class i,
// tp[i] + tn[i] + fp[i] + fn[i] equals the number of evaluated instances.
struct ConfusionCounts {
    std::vector<long> tp, tn, fp, fn;
    long total = 0;

    int n_classes() const { return static_cast<int>(tp.size()); }
};

ConfusionCounts confusion(const std::vector<int>& truth,
                          const std::vector<int>& predicted, int n_classes);

struct MacroMicro {
    double fdr = 0.0;
    double fnr = 0.0;
    double f1_loss = 0.0;
};

// Unweighted class means of FP/(TP+FP), FN/(TP+FN), (FP+FN)/(2TP+FP+FN).
// Classes with a zero denominator contribute zero loss.
MacroMicro macro_metrics(const ConfusionCounts& c);

// Pooled-count versions of the same three losses.
MacroMicro micro_metrics(const ConfusionCounts& c);

// Cohen's (unweighted) kappa; defined as 1 when both sides are constant and
// identical, so chance agreement of one never divides by zero.
double cohen_kappa(const std::vector<int>& truth, const std::vector<int>& predicted);

// The six losses plus kappa for one (truth, prediction) set.
struct MetricSet {
    double macro_fdr = 0.0, macro_fnr = 0.0, macro_f1_loss = 0.0;
    double micro_fdr = 0.0, micro_fnr = 0.0, micro_f1_loss = 0.0;
    double kappa = 0.0;
};

MetricSet evaluate_predictions(const std::vector<int>& truth,
                               const std::vector<int>& predicted, int n_classes);

// Names of the rankable criteria, in report order.
const std::vector<std::string>& criterion_names();
double criterion_value(const MetricSet& m, const std::string& criterion);

// Tuning grid: beta in {0.0, 0.1, ..., 1.0}, gamma in {2^-2, ..., 2^2},
// evaluated with stratified inner cross-validation.
struct GridSpec {
    std::vector<double> betas;
    std::vector<double> gammas;
    int inner_folds = 3;

    static GridSpec defaults();
    void validate() const;
};

// Deterministic stratified k-fold assignment; fold_of[i] in [0, k). k is
// lowered (with a note via the return value) when a class has fewer than k
// instances.
struct FoldAssignment {
    std::vector<int> fold_of;
    int n_folds = 0;
    bool lowered = false;
};

FoldAssignment stratified_folds(const std::vector<int>& labels, int k,
                                std::uint64_t seed);

// Mean inner-CV kappa of one (beta, gamma) grid cell: per fold, a bagged
// PC-combined one-vs-one model is trained on the fold's training part and
// scored on the held-out part. Deterministic given (bag.seed, trainer.seed).
double pc_cell_kappa(const LabeledDataset& data, const TrainerConfig& trainer,
                     const BagSpec& bag, const GridSpec& grid,
                     const PotentialParams& cell);

// Same protocol for the symmetric-potential combiner and one zeta value.
double pf_cell_kappa(const LabeledDataset& data, const TrainerConfig& trainer,
                     const BagSpec& bag, const GridSpec& grid, const ZetaParam& cell);

// Exhaustive search over the full grid, maximizing inner-CV kappa; ties break
// toward the smaller beta, then the smaller gamma. Cells where every fold
// fails to train are skipped.
PotentialParams grid_search(const LabeledDataset& data, const TrainerConfig& trainer,
                            const BagSpec& bag, const GridSpec& grid);

// Zeta for the symmetric potential is tuned on the gamma grid by the same
// kappa objective; ties break toward the smaller zeta.
ZetaParam tune_zeta(const LabeledDataset& data, const TrainerConfig& trainer,
                    const BagSpec& bag, const GridSpec& grid);

}  // namespace lincomb
