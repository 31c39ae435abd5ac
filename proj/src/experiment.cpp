#include "lincomb/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace lincomb {

void ExperimentConfig::validate() const {
    if (datasets.empty()) throw std::invalid_argument("config: no datasets");
    if (learners.empty()) throw std::invalid_argument("config: no learners");
    if (combiners.empty()) throw std::invalid_argument("config: no combiners");
    if (outer_folds < 2) throw std::invalid_argument("config: outer_folds must be >= 2");
    if (bag_members < 1) throw std::invalid_argument("config: bag_members must be >= 1");
    if (!(bag_fraction > 0.0 && bag_fraction <= 1.0)) {
        throw std::invalid_argument("config: bag_fraction must lie in (0, 1]");
    }
    if (!(pca_variance > 0.0 && pca_variance <= 1.0)) {
        throw std::invalid_argument("config: pca_variance must lie in (0, 1]");
    }
    grid.validate();
    for (const auto& d : datasets) {
        if (d.name.empty() || d.path.empty()) {
            throw std::invalid_argument("config: dataset entries need name and path");
        }
    }
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open config");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path + ": bad config: " + e.what());
    }

    ExperimentConfig cfg;
    try {
        for (const auto& d : j.at("datasets")) {
            if (d.is_string()) {
                const std::string p = d.get<std::string>();
                // derive a name from the file stem
                std::string stem = p;
                const auto slash = stem.find_last_of("/\\");
                if (slash != std::string::npos) stem = stem.substr(slash + 1);
                const auto dot = stem.rfind('.');
                if (dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);
                cfg.datasets.push_back({stem, p});
            } else {
                cfg.datasets.push_back({d.at("name").get<std::string>(),
                                        d.at("path").get<std::string>()});
            }
        }
        for (const auto& s : j.at("learners")) {
            cfg.learners.push_back(trainer_from_name(s.get<std::string>()));
        }
        for (const auto& s : j.at("combiners")) {
            cfg.combiners.push_back(combiner_from_name(s.get<std::string>()));
        }
        cfg.outer_folds = j.value("outer_folds", cfg.outer_folds);
        cfg.bag_members = j.value("bag_members", cfg.bag_members);
        cfg.bag_fraction = j.value("bag_fraction", cfg.bag_fraction);
        cfg.pca_variance = j.value("pca_variance", cfg.pca_variance);
        cfg.seed = j.value("seed", cfg.seed);
        cfg.output = j.value("output", cfg.output);
        if (j.contains("grid")) {
            const auto& g = j["grid"];
            if (g.contains("betas")) cfg.grid.betas = g["betas"].get<std::vector<double>>();
            if (g.contains("gammas")) cfg.grid.gammas = g["gammas"].get<std::vector<double>>();
            cfg.grid.inner_folds = g.value("inner_folds", cfg.grid.inner_folds);
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path + ": bad config: " + e.what());
    }
    cfg.validate();
    return cfg;
}

namespace {

constexpr std::uint64_t kOuterFoldSalt = 0xda7aULL;

struct Cell {
    int dataset = 0;
    int fold = 0;
    int learner = 0;
};

}  // namespace

std::vector<RunRecord> cross_validate(const ExperimentConfig& cfg, int jobs,
                                      std::vector<std::string>* warnings) {
    cfg.validate();

    std::vector<LabeledDataset> data;
    std::vector<FoldAssignment> folds;
    std::vector<std::string> warn;
    for (std::size_t d = 0; d < cfg.datasets.size(); ++d) {
        data.push_back(load_csv(cfg.datasets[d].path));
        folds.push_back(stratified_folds(data[d].labels(), cfg.outer_folds,
                                         mix_seed(cfg.seed, kOuterFoldSalt + d)));
        if (folds[d].lowered) {
            warn.push_back(cfg.datasets[d].name + ": outer folds lowered to " +
                           std::to_string(folds[d].n_folds));
        }
    }

    std::vector<Cell> cells;
    for (std::size_t d = 0; d < cfg.datasets.size(); ++d) {
        for (int f = 0; f < folds[d].n_folds; ++f) {
            for (std::size_t l = 0; l < cfg.learners.size(); ++l) {
                cells.push_back({static_cast<int>(d), f, static_cast<int>(l)});
            }
        }
    }

    const int n_comb = static_cast<int>(cfg.combiners.size());
    std::vector<RunRecord> records(cells.size() * n_comb);
    std::mutex warn_mutex;

    const bool wants_pc =
        std::find(cfg.combiners.begin(), cfg.combiners.end(), CombinerKind::pc) !=
        cfg.combiners.end();
    const bool wants_pf =
        std::find(cfg.combiners.begin(), cfg.combiners.end(), CombinerKind::pf) !=
        cfg.combiners.end();

    auto run_cell = [&](std::size_t c) {
        const Cell& cell = cells[c];
        const LabeledDataset& full = data[cell.dataset];
        const auto t0 = std::chrono::steady_clock::now();

        std::vector<int> train_rows, test_rows;
        for (int i = 0; i < full.size(); ++i) {
            (folds[cell.dataset].fold_of[i] == cell.fold ? test_rows : train_rows)
                .push_back(i);
        }
        const LabeledDataset train_raw = full.subset(train_rows);
        const LabeledDataset test_raw = full.subset(test_rows);

        std::vector<std::string> local_warn;
        PreprocessConfig pre;
        pre.explained_variance = cfg.pca_variance;
        const FittedTransform fit = fit_transform(train_raw.features(), pre, &local_warn);
        const LabeledDataset train = apply_transform(fit, train_raw);
        const LabeledDataset test = apply_transform(fit, test_raw);

        const std::uint64_t cell_seed = mix_seed(
            mix_seed(mix_seed(cfg.seed, cell.dataset + 1), cell.fold + 1), cell.learner + 1);
        TrainerConfig trainer = default_config(cfg.learners[cell.learner]);
        trainer.seed = mix_seed(cell_seed, 3);
        BagSpec tune_bag{cfg.bag_members, cfg.bag_fraction, mix_seed(cell_seed, 1)};
        BagSpec final_bag{cfg.bag_members, cfg.bag_fraction, mix_seed(cell_seed, 2)};

        CombinerConfig train_cfg;
        train_cfg.kind = wants_pc ? CombinerKind::pc : cfg.combiners.front();
        std::optional<PotentialParams> tuned_potential;
        std::optional<ZetaParam> tuned_zeta;
        if (wants_pc) {
            tuned_potential = grid_search(train, trainer, tune_bag, cfg.grid);
            train_cfg.potential_params = *tuned_potential;
        }
        if (wants_pf) {
            tuned_zeta = tune_zeta(train, trainer, tune_bag, cfg.grid);
            train_cfg.zeta = *tuned_zeta;
        }

        // Members are seed-deterministic and combiner-independent, so one
        // trained model serves every requested combiner.
        const OvoModel base_model = ovo_train(train, trainer, final_bag, train_cfg);

        for (int k = 0; k < n_comb; ++k) {
            const CombinerKind kind = cfg.combiners[k];
            OvoModel model = base_model;
            for (Ensemble& e : model.pair_ensembles) {
                e.combiner = kind;
                if (kind == CombinerKind::pc) e.potential_params = *tuned_potential;
                if (kind == CombinerKind::pf) e.zeta = *tuned_zeta;
            }
            const std::vector<int> pred = ovo_predict_all(model, test.features());

            RunRecord& rec = records[c * n_comb + k];
            rec.dataset = cfg.datasets[cell.dataset].name;
            rec.learner = trainer_name(cfg.learners[cell.learner]);
            rec.combiner = combiner_name(kind);
            rec.fold = cell.fold;
            rec.metrics = evaluate_predictions(test.labels(), pred, full.n_classes());
            if (kind == CombinerKind::pc) rec.potential = tuned_potential;
            if (kind == CombinerKind::pf) rec.zeta = tuned_zeta;
            rec.wall_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
        }

        if (!local_warn.empty()) {
            std::lock_guard<std::mutex> lock(warn_mutex);
            for (const auto& w : local_warn) {
                warn.push_back(cfg.datasets[cell.dataset].name + " fold " +
                               std::to_string(cell.fold) + ": " + w);
            }
        }
    };

    jobs = std::max(1, jobs);
    if (jobs == 1 || cells.size() <= 1) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            try {
                run_cell(c);
            } catch (const std::exception& e) {
                throw std::runtime_error(cfg.datasets[cells[c].dataset].name + " fold " +
                                         std::to_string(cells[c].fold) + " " +
                                         trainer_name(cfg.learners[cells[c].learner]) +
                                         ": " + e.what());
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&] {
            for (;;) {
                const std::size_t c = next.fetch_add(1);
                if (c >= cells.size()) return;
                {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (failure) return;
                }
                try {
                    run_cell(c);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        const int n_threads = std::min<std::size_t>(jobs, cells.size());
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    if (warnings) {
        warnings->insert(warnings->end(), warn.begin(), warn.end());
    }
    return records;
}

}  // namespace lincomb
