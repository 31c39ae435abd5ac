#pragma once

// Benchmark engine: loads the configured datasets, runs stratified outer
// cross-validation for every (dataset, learner, combiner) combination with
// per-fold preprocessing and inner tuning, and returns one record per fold.
// Fully deterministic given the seed; cells may run on worker threads.

#include <optional>
#include <string>
#include <vector>

#include "lincomb/dataset_io.hpp"
#include "lincomb/metrics.hpp"
#include "lincomb/preprocess.hpp"

namespace lincomb {

struct DatasetRef {
    std::string name;
    std::string path;
};

struct ExperimentConfig {
    std::vector<DatasetRef> datasets;
    std::vector<TrainerKind> learners;
    std::vector<CombinerKind> combiners;
    int outer_folds = 10;
    int bag_members = 11;
    double bag_fraction = 0.8;
    GridSpec grid = GridSpec::defaults();
    double pca_variance = 0.95;
    std::uint64_t seed = 1;
    std::string output = "report";

    void validate() const;
};

// Reads a JSON config file mirroring the ExperimentConfig fields.
ExperimentConfig load_config(const std::string& path);

struct RunRecord {
    std::string dataset;
    std::string learner;
    std::string combiner;
    int fold = 0;
    MetricSet metrics;
    std::optional<PotentialParams> potential;  // tuned, PC only
    std::optional<ZetaParam> zeta;             // tuned, PF only
    double wall_ms = 0.0;  // informational; reports never serialize it
};

// One record per (dataset, learner, combiner, outer fold), in a fixed
// order independent of `jobs`. Warnings (lowered fold counts, dropped
// attributes) are appended to *warnings when given.
std::vector<RunRecord> cross_validate(const ExperimentConfig& cfg, int jobs = 1,
                                      std::vector<std::string>* warnings = nullptr);

}  // namespace lincomb
