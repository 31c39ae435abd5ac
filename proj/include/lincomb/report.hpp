#pragma once

// Report assembly: per-fold result records on disk (JSON lines), and per
// criterion a rank summary with the Friedman p-value and the pairwise
// Wilcoxon matrix (raw and Holm-adjusted). Methods are the combination
// rules; every (dataset, learner) pair contributes one fold-averaged block.

#include <string>
#include <vector>

#include "lincomb/experiment.hpp"
#include "lincomb/stats.hpp"

namespace lincomb {

struct RankTable {
    std::string criterion;
    std::vector<std::string> methods;
    int n_blocks = 0;
    std::vector<double> mean_losses;  // per method, over blocks
    std::vector<double> mean_ranks;   // per method, over blocks
    double friedman_p = 0.0;          // NaN renders as NA
    Matrix wilcoxon_p;                // methods x methods, NaN off-pairs
    Matrix wilcoxon_holm_p;           // Holm-adjusted over the pair family
};

// Fold-averages each (dataset, learner, combiner) cell, ranks the combiners
// within every (dataset, learner) block, and runs the tests. Throws when a
// block is missing a method.
RankTable build_rank_table(const std::vector<RunRecord>& records,
                           const std::string& criterion);

void write_results_jsonl(const std::vector<RunRecord>& records, const std::string& path);
std::vector<RunRecord> read_results_jsonl(const std::string& path);

// Writes results.jsonl, summary.csv (one row per method, one column per
// criterion) and summary_<criterion>.csv files into the directory.
// Byte-identical for identical records.
void emit_report(const std::vector<RunRecord>& records, const std::string& out_dir);

// Paper-style p rendering: values below 1e-3 print as ".000", NaN as "NA".
std::string format_p(double p);

// Text rendering of one table for the console.
std::string render_rank_table(const RankTable& t);

}  // namespace lincomb
