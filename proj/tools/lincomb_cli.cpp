#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lincomb/dataset_io.hpp"
#include "lincomb/report.hpp"
#include "lincomb/synth.hpp"

namespace {

int cmd_run(const std::string& config_path, std::uint64_t* seed_override,
            std::string* output_override, int jobs) {
    lincomb::ExperimentConfig cfg = lincomb::load_config(config_path);
    if (seed_override) cfg.seed = *seed_override;
    if (output_override) cfg.output = *output_override;

    std::vector<std::string> warnings;
    const std::vector<lincomb::RunRecord> records =
        lincomb::cross_validate(cfg, jobs, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";

    lincomb::emit_report(records, cfg.output);
    std::cout << records.size() << " records -> " << cfg.output << "\n";
    for (const auto& criterion : lincomb::criterion_names()) {
        const lincomb::RankTable t = lincomb::build_rank_table(records, criterion);
        std::cout << criterion << ": Friedman p = " << lincomb::format_p(t.friedman_p)
                  << "\n";
    }
    return 0;
}

int cmd_evaluate(const std::string& results_path, const std::string& output_dir) {
    const std::vector<lincomb::RunRecord> records =
        lincomb::read_results_jsonl(results_path);
    lincomb::emit_report(records, output_dir);
    std::cout << records.size() << " records -> " << output_dir << "\n";
    return 0;
}

int cmd_rank(const std::string& results_path, const std::string& criterion) {
    const std::vector<lincomb::RunRecord> records =
        lincomb::read_results_jsonl(results_path);
    const lincomb::RankTable t = lincomb::build_rank_table(records, criterion);
    std::cout << lincomb::render_rank_table(t);
    return 0;
}

int cmd_gen(const std::string& kind, int n, std::uint64_t seed, double noise,
            const std::string& output) {
    lincomb::LabeledDataset data = [&] {
        if (kind == "banana") return lincomb::make_banana(n, seed, noise);
        if (kind == "spirals") return lincomb::make_spirals(n, seed, noise);
        if (kind == "gaussians") return lincomb::make_gaussians(n, seed);
        throw std::invalid_argument("unknown generator: " + kind);
    }();
    lincomb::save_csv(data, output);
    const lincomb::DatasetSummary s = lincomb::summarize(kind, data);
    std::printf("%s: |S|=%d d=%d C=%d IR=%.2f -> %s\n", s.name.c_str(), s.instances,
                s.attributes, s.classes, s.imbalance_ratio, output.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bagged linear-classifier ensembles with potential-function combining"};
    app.require_subcommand(1);

    std::string config_path, results_path, criterion, output, gen_kind = "banana";
    std::uint64_t seed = 0;
    bool seed_set = false;
    int jobs = 1, gen_n = 2000;
    double gen_noise = 0.2;

    CLI::App* run = app.add_subcommand("run", "run a benchmark described by a config file");
    run->add_option("--config", config_path, "JSON experiment config")->required();
    run->add_option("--seed", seed, "override the config seed")
        ->each([&](const std::string&) { seed_set = true; });
    run->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    run->add_option("--output", output, "override the report directory");

    CLI::App* evaluate = app.add_subcommand("evaluate", "rebuild summaries from results");
    evaluate->add_option("--results", results_path, "results.jsonl path")->required();
    evaluate->add_option("--output", output, "report directory")->required();

    CLI::App* rank = app.add_subcommand("rank", "print one criterion's rank table");
    rank->add_option("--results", results_path, "results.jsonl path")->required();
    rank->add_option("--criterion", criterion, "criterion name")->required();

    CLI::App* gen = app.add_subcommand("gen", "write a synthetic dataset CSV");
    gen->add_option("--kind", gen_kind, "banana | spirals | gaussians");
    gen->add_option("--n", gen_n, "instances")->check(CLI::PositiveNumber);
    gen->add_option("--seed", seed, "generator seed");
    gen->add_option("--noise", gen_noise, "jitter standard deviation");
    gen->add_option("--output", output, "CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return cmd_run(config_path, seed_set ? &seed : nullptr,
                           output.empty() ? nullptr : &output, jobs);
        }
        if (evaluate->parsed()) return cmd_evaluate(results_path, output);
        if (rank->parsed()) return cmd_rank(results_path, criterion);
        if (gen->parsed()) return cmd_gen(gen_kind, gen_n, seed, gen_noise, output);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
