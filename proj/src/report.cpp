#include "lincomb/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

namespace lincomb {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::vector<std::string> present_methods(const std::vector<RunRecord>& records) {
    std::vector<std::string> out;
    for (CombinerKind k : {CombinerKind::sm, CombinerKind::ma, CombinerKind::mv,
                           CombinerKind::pf, CombinerKind::pc}) {
        const std::string name = combiner_name(k);
        for (const auto& r : records) {
            if (r.combiner == name) {
                out.push_back(name);
                break;
            }
        }
    }
    return out;
}

struct Accum {
    double sum = 0.0;
    int count = 0;
};

nlohmann::json record_to_json(const RunRecord& r) {
    nlohmann::json j;
    j["dataset"] = r.dataset;
    j["learner"] = r.learner;
    j["combiner"] = r.combiner;
    j["fold"] = r.fold;
    j["macro_fdr"] = r.metrics.macro_fdr;
    j["macro_fnr"] = r.metrics.macro_fnr;
    j["macro_f1_loss"] = r.metrics.macro_f1_loss;
    j["micro_fdr"] = r.metrics.micro_fdr;
    j["micro_fnr"] = r.metrics.micro_fnr;
    j["micro_f1_loss"] = r.metrics.micro_f1_loss;
    j["kappa"] = r.metrics.kappa;
    if (r.potential) {
        j["beta"] = r.potential->beta;
        j["gamma"] = r.potential->gamma;
    }
    if (r.zeta) j["zeta"] = r.zeta->zeta;
    return j;
}

RunRecord record_from_json(const nlohmann::json& j) {
    RunRecord r;
    r.dataset = j.at("dataset").get<std::string>();
    r.learner = j.at("learner").get<std::string>();
    r.combiner = j.at("combiner").get<std::string>();
    r.fold = j.at("fold").get<int>();
    r.metrics.macro_fdr = j.at("macro_fdr").get<double>();
    r.metrics.macro_fnr = j.at("macro_fnr").get<double>();
    r.metrics.macro_f1_loss = j.at("macro_f1_loss").get<double>();
    r.metrics.micro_fdr = j.at("micro_fdr").get<double>();
    r.metrics.micro_fnr = j.at("micro_fnr").get<double>();
    r.metrics.micro_f1_loss = j.at("micro_f1_loss").get<double>();
    r.metrics.kappa = j.at("kappa").get<double>();
    if (j.contains("beta") && j.contains("gamma")) {
        r.potential = PotentialParams{j["beta"].get<double>(), j["gamma"].get<double>()};
    }
    if (j.contains("zeta")) r.zeta = ZetaParam{j["zeta"].get<double>()};
    return r;
}

std::vector<RunRecord> sorted_records(std::vector<RunRecord> records) {
    std::sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
        if (a.dataset != b.dataset) return a.dataset < b.dataset;
        if (a.learner != b.learner) return a.learner < b.learner;
        if (a.combiner != b.combiner) return a.combiner < b.combiner;
        return a.fold < b.fold;
    });
    return records;
}

}  // namespace

RankTable build_rank_table(const std::vector<RunRecord>& records,
                           const std::string& criterion) {
    if (records.empty()) throw std::invalid_argument("rank table: no records");

    RankTable t;
    t.criterion = criterion;
    t.methods = present_methods(records);
    const int k = static_cast<int>(t.methods.size());
    if (k < 2) throw std::invalid_argument("rank table: need at least two methods");

    std::map<std::string, int> method_of;
    for (int j = 0; j < k; ++j) method_of[t.methods[j]] = j;

    // block key = (dataset, learner); fold-average each method inside it
    std::map<std::pair<std::string, std::string>, std::vector<Accum>> blocks;
    for (const auto& r : records) {
        auto& row = blocks[{r.dataset, r.learner}];
        row.resize(k);
        const int j = method_of.at(r.combiner);
        row[j].sum += criterion_value(r.metrics, criterion);
        row[j].count += 1;
    }

    t.n_blocks = static_cast<int>(blocks.size());
    Matrix losses(t.n_blocks, k);
    int b = 0;
    for (const auto& [key, row] : blocks) {
        for (int j = 0; j < k; ++j) {
            if (row[j].count == 0) {
                throw std::runtime_error("rank table: no record for dataset " + key.first +
                                         ", learner " + key.second + ", method " +
                                         t.methods[j]);
            }
            losses(b, j) = row[j].sum / row[j].count;
        }
        ++b;
    }

    t.mean_losses.assign(k, 0.0);
    for (int j = 0; j < k; ++j) t.mean_losses[j] = losses.col(j).mean();
    t.mean_ranks = average_ranks(losses);

    t.friedman_p = kNaN;
    if (t.n_blocks >= 2) t.friedman_p = friedman_test(losses).p_value;

    t.wilcoxon_p = Matrix::Constant(k, k, kNaN);
    t.wilcoxon_holm_p = Matrix::Constant(k, k, kNaN);
    std::vector<std::pair<int, int>> tested;
    std::vector<double> raw;
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            std::vector<double> a(t.n_blocks), c(t.n_blocks);
            for (int r = 0; r < t.n_blocks; ++r) {
                a[r] = losses(r, i);
                c[r] = losses(r, j);
            }
            try {
                const double p = wilcoxon_signed_rank(a, c).p_value;
                t.wilcoxon_p(i, j) = t.wilcoxon_p(j, i) = p;
                tested.emplace_back(i, j);
                raw.push_back(p);
            } catch (const std::invalid_argument&) {
                // too few nonzero pairs; leave as NA
            }
        }
    }
    const std::vector<double> adjusted = holm_adjust(raw);
    for (std::size_t m = 0; m < tested.size(); ++m) {
        const auto [i, j] = tested[m];
        t.wilcoxon_holm_p(i, j) = t.wilcoxon_holm_p(j, i) = adjusted[m];
    }
    return t;
}

void write_results_jsonl(const std::vector<RunRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot write");
    for (const auto& r : sorted_records(records)) {
        out << record_to_json(r).dump() << "\n";
    }
    if (!out) throw std::runtime_error(path + ": write failed");
}

std::vector<RunRecord> read_results_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    std::vector<RunRecord> records;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            records.push_back(record_from_json(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
            throw std::runtime_error(path + " line " + std::to_string(line_no) + ": " +
                                     e.what());
        }
    }
    if (records.empty()) throw std::runtime_error(path + ": no records");
    return records;
}

std::string format_p(double p) {
    if (std::isnan(p)) return "NA";
    if (p < 1e-3) return ".000";
    return fmt("%.3f", p);
}

namespace {

std::string significance(double p) { return (!std::isnan(p) && p < 0.05) ? "*" : ""; }

void write_matrix(std::ofstream& out, const std::string& label, const RankTable& t,
                  const Matrix& p) {
    out << label;
    for (const auto& m : t.methods) out << "," << m;
    out << "\n";
    for (std::size_t i = 0; i < t.methods.size(); ++i) {
        out << t.methods[i];
        for (std::size_t j = 0; j < t.methods.size(); ++j) {
            out << ",";
            if (i == j) continue;
            out << format_p(p(i, j)) << significance(p(i, j));
        }
        out << "\n";
    }
}

}  // namespace

void emit_report(const std::vector<RunRecord>& records, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    write_results_jsonl(records, (fs::path(out_dir) / "results.jsonl").string());

    std::vector<RankTable> tables;
    for (const auto& criterion : criterion_names()) {
        tables.push_back(build_rank_table(records, criterion));
    }

    {
        std::ofstream out(fs::path(out_dir) / "summary.csv");
        if (!out) throw std::runtime_error(out_dir + ": cannot write summary.csv");
        out << "method";
        for (const auto& criterion : criterion_names()) out << "," << criterion;
        out << "\n";
        const auto& methods = tables.front().methods;
        for (std::size_t j = 0; j < methods.size(); ++j) {
            out << methods[j];
            for (const auto& t : tables) out << "," << fmt("%.6f", t.mean_losses[j]);
            out << "\n";
        }
    }

    for (const auto& t : tables) {
        std::ofstream out(fs::path(out_dir) / ("summary_" + t.criterion + ".csv"));
        if (!out) throw std::runtime_error(out_dir + ": cannot write criterion summary");
        out << "criterion," << t.criterion << "\n";
        out << "blocks," << t.n_blocks << "\n";
        out << "friedman_p," << format_p(t.friedman_p) << significance(t.friedman_p)
            << "\n";
        out << "method,mean_loss,avg_rank\n";
        for (std::size_t j = 0; j < t.methods.size(); ++j) {
            out << t.methods[j] << "," << fmt("%.6f", t.mean_losses[j]) << ","
                << fmt("%.3f", t.mean_ranks[j]) << "\n";
        }
        write_matrix(out, "wilcoxon_p", t, t.wilcoxon_p);
        write_matrix(out, "wilcoxon_holm_p", t, t.wilcoxon_holm_p);
    }
}

std::string render_rank_table(const RankTable& t) {
    std::ostringstream out;
    out << "criterion: " << t.criterion << "   blocks: " << t.n_blocks
        << "   Friedman p: " << format_p(t.friedman_p) << significance(t.friedman_p)
        << "\n";
    out << "method  mean_loss  avg_rank\n";
    std::ostringstream body;
    for (std::size_t j = 0; j < t.methods.size(); ++j) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%-6s  %9.6f  %8.3f\n", t.methods[j].c_str(),
                      t.mean_losses[j], t.mean_ranks[j]);
        body << buf;
    }
    out << body.str();
    out << "pairwise Wilcoxon p (raw / Holm), * = p < 0.05\n";
    for (std::size_t i = 0; i < t.methods.size(); ++i) {
        for (std::size_t j = i + 1; j < t.methods.size(); ++j) {
            char buf[128];
            std::snprintf(buf, sizeof(buf), "%-6s vs %-6s  %s%s / %s%s\n",
                          t.methods[i].c_str(), t.methods[j].c_str(),
                          format_p(t.wilcoxon_p(i, j)).c_str(),
                          significance(t.wilcoxon_p(i, j)).c_str(),
                          format_p(t.wilcoxon_holm_p(i, j)).c_str(),
                          significance(t.wilcoxon_holm_p(i, j)).c_str());
            out << buf;
        }
    }
    return out.str();
}

}  // namespace lincomb
