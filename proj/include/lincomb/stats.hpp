#pragma once

// Rank statistics behind the comparison reports: tie-averaged ranks, the
// Friedman chi-square test over blocked rankings, the paired Wilcoxon
// signed-rank test, and Holm's step-down multiple-test adjustment.

#include <vector>

#include "lincomb/core.hpp"

namespace lincomb {

// Ascending 1-based ranks; tied values share the average of their positions.
std::vector<double> tie_ranks(const std::vector<double>& values);

// Mean rank per column: each row is ranked independently (smaller is better,
// rank 1), then ranks are averaged down the rows.
std::vector<double> average_ranks(const Matrix& losses);

struct FriedmanResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::vector<double> mean_ranks;
    int n_blocks = 0;
    int n_treatments = 0;
};

// Friedman test on a blocks-by-treatments loss matrix. Needs at least two
// blocks and two treatments.
FriedmanResult friedman_test(const Matrix& losses);

struct WilcoxonResult {
    double statistic = 0.0;  // min(T+, T-) over the nonzero differences
    double p_value = 1.0;
    int n_nonzero = 0;
    bool exact = false;
};

// Two-sided signed-rank test on paired samples. Zero differences are
// dropped; if every difference is zero the p-value is 1. Throws when only
// 1..4 nonzero pairs remain (no attainable significance either way).
// Exact null distribution up to 20 pairs, normal approximation with tie and
// continuity corrections beyond that.
WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a,
                                    const std::vector<double>& b);

// Holm step-down adjustment; adjusted p-values in the input order.
std::vector<double> holm_adjust(const std::vector<double>& p_values);

}  // namespace lincomb
