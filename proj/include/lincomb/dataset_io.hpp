#pragma once

// CSV ingestion and emission. Format: one header row, numeric feature
// columns, class label in the last column. Parse errors name the offending
// row and column.

#include <string>

#include "lincomb/core.hpp"

namespace lincomb {

struct DatasetSummary {
    std::string name;
    int instances = 0;
    int attributes = 0;
    int classes = 0;
    double imbalance_ratio = 1.0;
};

LabeledDataset load_csv(const std::string& path);
void save_csv(const LabeledDataset& data, const std::string& path);

DatasetSummary summarize(const std::string& name, const LabeledDataset& data);

}  // namespace lincomb
