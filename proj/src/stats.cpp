#include "lincomb/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

namespace lincomb {

std::vector<double> tie_ranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return values[a] < values[b]; });

    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

std::vector<double> average_ranks(const Matrix& losses) {
    const int n = static_cast<int>(losses.rows());
    const int k = static_cast<int>(losses.cols());
    if (n < 1 || k < 2) {
        throw std::invalid_argument("average_ranks: need >= 1 row and >= 2 columns");
    }
    std::vector<double> mean(k, 0.0);
    std::vector<double> row(k);
    for (int b = 0; b < n; ++b) {
        for (int j = 0; j < k; ++j) row[j] = losses(b, j);
        const std::vector<double> r = tie_ranks(row);
        for (int j = 0; j < k; ++j) mean[j] += r[j];
    }
    for (double& v : mean) v /= n;
    return mean;
}

FriedmanResult friedman_test(const Matrix& losses) {
    const int n = static_cast<int>(losses.rows());
    const int k = static_cast<int>(losses.cols());
    if (n < 2 || k < 2) {
        throw std::invalid_argument("friedman_test: need >= 2 blocks and >= 2 treatments");
    }
    FriedmanResult r;
    r.n_blocks = n;
    r.n_treatments = k;
    r.mean_ranks = average_ranks(losses);

    const double center = (k + 1) / 2.0;
    double ss = 0.0;
    for (double rank : r.mean_ranks) ss += (rank - center) * (rank - center);
    r.statistic = 12.0 * n / (k * (k + 1.0)) * ss;

    const boost::math::chi_squared dist(k - 1);
    r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
    return r;
}

WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a,
                                    const std::vector<double>& b) {
    if (a.empty() || a.size() != b.size()) {
        throw std::invalid_argument("wilcoxon: inputs must be nonempty and equal length");
    }
    std::vector<double> diffs;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        if (d != 0.0) diffs.push_back(d);
    }

    WilcoxonResult r;
    r.n_nonzero = static_cast<int>(diffs.size());
    if (r.n_nonzero == 0) {
        r.exact = true;
        r.p_value = 1.0;
        return r;
    }
    if (r.n_nonzero < 5) {
        throw std::invalid_argument(
            "wilcoxon: fewer than 5 nonzero pairs, test not meaningful");
    }

    std::vector<double> abs_d(diffs.size());
    for (std::size_t i = 0; i < diffs.size(); ++i) abs_d[i] = std::fabs(diffs[i]);
    const std::vector<double> ranks = tie_ranks(abs_d);

    double t_plus = 0.0, t_minus = 0.0;
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        (diffs[i] > 0.0 ? t_plus : t_minus) += ranks[i];
    }
    r.statistic = std::min(t_plus, t_minus);

    const int n = r.n_nonzero;
    if (n <= 20) {
        // Exact null distribution of 2*T+ (doubling clears the .5 ranks that
        // tie-averaging can produce).
        std::vector<int> dr(diffs.size());
        int total = 0;
        for (std::size_t i = 0; i < ranks.size(); ++i) {
            dr[i] = static_cast<int>(std::llround(2.0 * ranks[i]));
            total += dr[i];
        }
        std::vector<std::uint64_t> count(total + 1, 0);
        count[0] = 1;
        for (int w : dr) {
            for (int s = total; s >= w; --s) count[s] += count[s - w];
        }
        const int t2 = static_cast<int>(std::llround(2.0 * t_plus));
        std::uint64_t le = 0, ge = 0;
        for (int s = 0; s <= t2; ++s) le += count[s];
        for (int s = t2; s <= total; ++s) ge += count[s];
        const double denom = std::ldexp(1.0, n);  // 2^n subsets
        const double tail = static_cast<double>(std::min(le, ge)) / denom;
        r.p_value = std::min(1.0, 2.0 * tail);
        r.exact = true;
    } else {
        const double mu = n * (n + 1) / 4.0;
        double var = n * (n + 1) * (2.0 * n + 1) / 24.0;
        // tie correction: subtract sum(t^3 - t)/48 over tie groups
        std::vector<double> sorted_abs = abs_d;
        std::sort(sorted_abs.begin(), sorted_abs.end());
        std::size_t i = 0;
        while (i < sorted_abs.size()) {
            std::size_t j = i;
            while (j + 1 < sorted_abs.size() && sorted_abs[j + 1] == sorted_abs[i]) ++j;
            const double t = static_cast<double>(j - i + 1);
            var -= (t * t * t - t) / 48.0;
            i = j + 1;
        }
        const double num = std::max(0.0, std::fabs(t_plus - mu) - 0.5);
        const double z = var > 0.0 ? num / std::sqrt(var) : 0.0;
        const boost::math::normal dist;
        r.p_value = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, z)));
        r.exact = false;
    }
    return r;
}

std::vector<double> holm_adjust(const std::vector<double>& p_values) {
    const std::size_t m = p_values.size();
    if (m == 0) return {};
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return p_values[a] < p_values[b]; });

    std::vector<double> adjusted(m, 0.0);
    double running = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double scaled = std::min(1.0, (m - i) * p_values[order[i]]);
        running = std::max(running, scaled);
        adjusted[order[i]] = running;
    }
    return adjusted;
}

}  // namespace lincomb
