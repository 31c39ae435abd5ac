#pragma once

// Bagged ensembles of linear classifiers, the five combination strategies
// (softmax mean, model averaging, majority voting, symmetric potential,
// class-centroid potential) and pairwise one-vs-one multiclass decomposition.

#include "lincomb/geometry.hpp"
#include "lincomb/trainers.hpp"

#include <optional>
#include <utility>

namespace lincomb {

enum class CombinerKind { sm, ma, mv, pf, pc };

const char* combiner_name(CombinerKind k);
CombinerKind combiner_from_name(const std::string& name);

// Bagging protocol: n_members subsamples of sample_fraction * |T| instances
// drawn without replacement.
struct BagSpec {
    int n_members = 11;
    double sample_fraction = 0.8;
    std::uint64_t seed = 0;

    void validate() const;
};

struct Ensemble {
    std::vector<LinearModel> members;
    CombinerKind combiner = CombinerKind::ma;
    // One geometry pair per member, fitted on that member's bag (PC only).
    std::vector<ClassGeometryPair> member_geometry;
    std::optional<PotentialParams> potential_params;  // PC
    std::optional<ZetaParam> zeta;                    // PF

    int n_members() const { return static_cast<int>(members.size()); }
};

// Combiner selection plus the parameters the potential combiners need.
struct CombinerConfig {
    CombinerKind kind = CombinerKind::ma;
    PotentialParams potential_params;
    ZetaParam zeta;
};

// Trains spec.n_members models on independent random subsamples of
// ceil(sample_fraction * |T|) instances drawn without replacement.
// Bags leaving any class with fewer than two instances are redrawn
// (at most 100 times per member). Deterministic given spec.seed; every
// member uses the same trainer configuration.
Ensemble bag_train(const LabeledDataset& data, const TrainerConfig& trainer,
                   const BagSpec& spec, const CombinerConfig& combiner);

// Majority voting: sum of member decision signs, an integer in [-N, N].
double combine_mv(const Ensemble& e, const Vector& x);

// Model averaging: mean raw discriminant.
double combine_ma(const Ensemble& e, const Vector& x);

// Softmax (sigmoid) normalization followed by averaging; value in (0, 1)
// with decision threshold 0.5.
double combine_sm(const Ensemble& e, const Vector& x);

// Mean symmetric-potential-transformed discriminant, in [-1, 1].
double combine_pf(const Ensemble& e, const Vector& x);

// Mean class-centroid potential discriminant, in [-1, 1].
double combine_pc(const Ensemble& e, const Vector& x);

// Dispatches on e.combiner.
double ensemble_discriminant(const Ensemble& e, const Vector& x);

// Applies the sign rule, shifted by 0.5 for the softmax combiner.
BinaryLabel ensemble_classify(const Ensemble& e, const Vector& x);

// One bagged ensemble per unordered class pair.
struct OvoModel {
    std::vector<std::pair<int, int>> class_pairs;  // (a, b) with a < b
    std::vector<Ensemble> pair_ensembles;
    std::vector<std::string> class_names;

    int n_classes() const { return static_cast<int>(class_names.size()); }
};

// Trains one bagged ensemble per unordered class pair on the pair's
// instances only. For a pair (a, b), class a plays the +1 role.
OvoModel ovo_train(const LabeledDataset& data, const TrainerConfig& trainer,
                   const BagSpec& spec, const CombinerConfig& combiner);

// Pairwise-win voting; ties go to the smallest class index.
int ovo_predict(const OvoModel& m, const Vector& x);

std::vector<int> ovo_predict_all(const OvoModel& m, const Matrix& features);

}  // namespace lincomb
