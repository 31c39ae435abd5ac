#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>

#include "lincomb/report.hpp"
#include "lincomb/synth.hpp"

using namespace lincomb;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("lincomb_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& p, const std::string& body) {
    std::ofstream out(p);
    out << body;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

bool exact_eq(const Matrix& a, const Matrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() &&
           (a.array() == b.array()).all();
}

std::string message_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

bool records_equal(const RunRecord& a, const RunRecord& b, bool check_wall) {
    if (a.dataset != b.dataset || a.learner != b.learner ||
        a.combiner != b.combiner || a.fold != b.fold)
        return false;
    const MetricSet &m = a.metrics, &n = b.metrics;
    if (m.macro_fdr != n.macro_fdr || m.macro_fnr != n.macro_fnr ||
        m.macro_f1_loss != n.macro_f1_loss || m.micro_fdr != n.micro_fdr ||
        m.micro_fnr != n.micro_fnr || m.micro_f1_loss != n.micro_f1_loss ||
        m.kappa != n.kappa)
        return false;
    if (a.potential.has_value() != b.potential.has_value()) return false;
    if (a.potential &&
        (a.potential->beta != b.potential->beta || a.potential->gamma != b.potential->gamma))
        return false;
    if (a.zeta.has_value() != b.zeta.has_value()) return false;
    if (a.zeta && a.zeta->zeta != b.zeta->zeta) return false;
    if (check_wall && a.wall_ms != b.wall_ms) return false;
    return true;
}

RunRecord make_record(const std::string& ds, const std::string& comb, int fold,
                      double loss) {
    RunRecord r;
    r.dataset = ds;
    r.learner = "NC";
    r.combiner = comb;
    r.fold = fold;
    r.metrics.macro_fdr = loss;
    r.metrics.micro_fdr = loss;
    r.metrics.micro_fnr = loss;
    r.metrics.micro_f1_loss = loss;
    r.metrics.macro_fnr = loss;
    r.metrics.macro_f1_loss = loss;
    r.metrics.kappa = 1.0 - loss;
    return r;
}

}  // namespace

TEST_CASE("csv round trip preserves everything") {
    const fs::path dir = scratch_dir("csv");
    const LabeledDataset d = make_gaussians(60, 5, 3.0);
    const std::string path = (dir / "d.csv").string();
    save_csv(d, path);
    const LabeledDataset back = load_csv(path);
    CHECK(exact_eq(back.features(), d.features()));
    CHECK(back.labels() == d.labels());
    CHECK(back.class_names() == d.class_names());
}

TEST_CASE("csv loader sorts class names for order independence") {
    const fs::path dir = scratch_dir("csv_order");
    write_file(dir / "d.csv",
               "x1,x2,class\n1,2,zebra\n3,4,ant\n5,6,zebra\n7,8,ant\n");
    const LabeledDataset d = load_csv((dir / "d.csv").string());
    CHECK(d.class_names() == std::vector<std::string>{"ant", "zebra"});
    CHECK(d.label(0) == 1);  // zebra
    CHECK(d.label(1) == 0);  // ant
}

TEST_CASE("csv errors name the offending row and column") {
    const fs::path dir = scratch_dir("csv_bad");

    write_file(dir / "bad_cell.csv", "x1,x2,class\n1,2,a\n1,oops,b\n");
    std::string msg = message_of(
        [&] { load_csv((dir / "bad_cell.csv").string()); });
    CHECK(msg.find("row 3") != std::string::npos);
    CHECK(msg.find("column 2") != std::string::npos);
    CHECK(msg.find("oops") != std::string::npos);

    write_file(dir / "short_row.csv", "x1,x2,class\n1,2,a\n1,b\n");
    msg = message_of([&] { load_csv((dir / "short_row.csv").string()); });
    CHECK(msg.find("row 3") != std::string::npos);
    CHECK(msg.find("expected 3 fields, found 2") != std::string::npos);

    write_file(dir / "one_class.csv", "x1,x2,class\n1,2,a\n3,4,a\n");
    CHECK_THROWS(load_csv((dir / "one_class.csv").string()));

    write_file(dir / "empty.csv", "");
    msg = message_of([&] { load_csv((dir / "empty.csv").string()); });
    CHECK(msg.find("empty file") != std::string::npos);

    write_file(dir / "no_rows.csv", "x1,x2,class\n");
    msg = message_of([&] { load_csv((dir / "no_rows.csv").string()); });
    CHECK(msg.find("no data rows") != std::string::npos);

    CHECK_THROWS(load_csv((dir / "missing.csv").string()));
}

TEST_CASE("summaries carry the headline numbers") {
    const LabeledDataset d = make_gaussians(150, 7, 2.0, 4);
    const DatasetSummary s = summarize("blobs", d);
    CHECK(s.name == "blobs");
    CHECK(s.instances == 150);
    CHECK(s.attributes == 4);
    CHECK(s.classes == 2);
    CHECK(s.imbalance_ratio == d.imbalance_ratio());
    CHECK(s.imbalance_ratio == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("generators are deterministic, balanced, and bounded") {
    const LabeledDataset banana = make_banana(200, 9);
    const LabeledDataset banana2 = make_banana(200, 9);
    CHECK(exact_eq(banana.features(), banana2.features()));
    CHECK(banana.class_counts() == std::vector<int>{100, 100});
    CHECK(banana.features().cwiseAbs().maxCoeff() < 5.0);

    const LabeledDataset spirals = make_spirals(300, 11);
    CHECK(spirals.class_counts() == std::vector<int>{150, 150});
    CHECK(spirals.dim() == 2);

    const LabeledDataset blobs = make_gaussians(100, 13, 8.0, 3);
    CHECK(blobs.dim() == 3);
    int right = 0;
    for (int i = 0; i < blobs.size(); ++i) {
        if ((blobs.instance(i)(0) < 0.0) == (blobs.label(i) == 0)) ++right;
    }
    CHECK(right > 95);  // +-4 sigma apart along the first axis

    CHECK(make_banana(201, 9).size() == 201);  // odd n still works
    CHECK_THROWS_AS(make_banana(3, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_spirals(3, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_gaussians(3, 1), std::invalid_argument);
}

TEST_CASE("experiment config validation") {
    ExperimentConfig cfg;
    cfg.datasets = {{"d", "d.csv"}};
    cfg.learners = {TrainerKind::nearest_centroid};
    cfg.combiners = {CombinerKind::mv};
    CHECK_NOTHROW(cfg.validate());

    ExperimentConfig bad = cfg;
    bad.datasets.clear();
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.learners.clear();
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.combiners.clear();
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.outer_folds = 1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.bag_members = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.bag_fraction = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.pca_variance = 1.0001;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("config files load with defaults") {
    const fs::path dir = scratch_dir("config");
    write_file(dir / "full.json", R"({
        "datasets": [{"name": "first", "path": "a.csv"}, "data/second.csv"],
        "learners": ["NC", "FLDA"],
        "combiners": ["MV", "PC"],
        "outer_folds": 5,
        "bag_members": 7,
        "bag_fraction": 0.9,
        "pca_variance": 0.99,
        "seed": 42,
        "output": "out",
        "grid": {"betas": [0.0, 1.0], "gammas": [0.5], "inner_folds": 2}
    })");
    const ExperimentConfig cfg = load_config((dir / "full.json").string());
    REQUIRE(cfg.datasets.size() == 2);
    CHECK(cfg.datasets[0].name == "first");
    CHECK(cfg.datasets[1].name == "second");  // derived from the file stem
    CHECK(cfg.datasets[1].path == "data/second.csv");
    CHECK(cfg.learners ==
          std::vector<TrainerKind>{TrainerKind::nearest_centroid, TrainerKind::flda});
    CHECK(cfg.combiners ==
          std::vector<CombinerKind>{CombinerKind::mv, CombinerKind::pc});
    CHECK(cfg.outer_folds == 5);
    CHECK(cfg.bag_members == 7);
    CHECK(cfg.bag_fraction == 0.9);
    CHECK(cfg.pca_variance == 0.99);
    CHECK(cfg.seed == 42);
    CHECK(cfg.output == "out");
    CHECK(cfg.grid.betas == std::vector<double>{0.0, 1.0});
    CHECK(cfg.grid.gammas == std::vector<double>{0.5});
    CHECK(cfg.grid.inner_folds == 2);

    write_file(dir / "minimal.json", R"({
        "datasets": ["x.csv"],
        "learners": ["NC"],
        "combiners": ["MA"]
    })");
    const ExperimentConfig mini = load_config((dir / "minimal.json").string());
    CHECK(mini.outer_folds == 10);
    CHECK(mini.bag_members == 11);
    CHECK(mini.bag_fraction == 0.8);
    CHECK(mini.pca_variance == 0.95);
    CHECK(mini.seed == 1);
    CHECK(mini.grid.betas.size() == 11);

    write_file(dir / "broken.json", "{ not json");
    const std::string msg =
        message_of([&] { load_config((dir / "broken.json").string()); });
    CHECK(msg.find("broken.json") != std::string::npos);
    CHECK(msg.find("bad config") != std::string::npos);

    write_file(dir / "unknown.json",
               R"({"datasets": ["x.csv"], "learners": ["XYZ"], "combiners": ["MA"]})");
    CHECK_THROWS(load_config((dir / "unknown.json").string()));
}

TEST_CASE("cross-validation produces one record per cell and fold") {
    const fs::path dir = scratch_dir("cv");
    save_csv(make_gaussians(80, 17, 4.0), (dir / "blobs.csv").string());

    ExperimentConfig cfg;
    cfg.datasets = {{"blobs", (dir / "blobs.csv").string()}};
    cfg.learners = {TrainerKind::nearest_centroid};
    cfg.combiners = {CombinerKind::mv, CombinerKind::ma};
    cfg.outer_folds = 4;
    cfg.bag_members = 3;
    cfg.seed = 99;

    const std::vector<RunRecord> rec = cross_validate(cfg);
    REQUIRE(rec.size() == 8);
    std::set<std::pair<std::string, int>> seen;
    for (const RunRecord& r : rec) {
        CHECK(r.dataset == "blobs");
        CHECK(r.learner == "NC");
        CHECK((r.combiner == "MV" || r.combiner == "MA"));
        CHECK(r.fold >= 0);
        CHECK(r.fold < 4);
        seen.insert({r.combiner, r.fold});
        for (const std::string& c : criterion_names()) {
            const double v = criterion_value(r.metrics, c);
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
        CHECK(r.metrics.kappa >= -1.0);
        CHECK(r.metrics.kappa <= 1.0);
        CHECK_FALSE(r.potential.has_value());
        CHECK_FALSE(r.zeta.has_value());
        // the blobs are four sigmas apart: everything decent beats chance
        CHECK(r.metrics.micro_f1_loss < 0.3);
    }
    CHECK(seen.size() == 8);

    // reruns and thread counts change nothing
    const std::vector<RunRecord> again = cross_validate(cfg);
    const std::vector<RunRecord> threaded = cross_validate(cfg, 3);
    REQUIRE(again.size() == rec.size());
    REQUIRE(threaded.size() == rec.size());
    for (std::size_t i = 0; i < rec.size(); ++i) {
        CHECK(records_equal(rec[i], again[i], false));
        CHECK(records_equal(rec[i], threaded[i], false));
    }
}

TEST_CASE("tuned parameters ride along on the records") {
    const fs::path dir = scratch_dir("cv_tuned");
    save_csv(make_gaussians(60, 19, 3.0), (dir / "blobs.csv").string());

    ExperimentConfig cfg;
    cfg.datasets = {{"blobs", (dir / "blobs.csv").string()}};
    cfg.learners = {TrainerKind::nearest_centroid};
    cfg.combiners = {CombinerKind::pc, CombinerKind::pf};
    cfg.outer_folds = 3;
    cfg.bag_members = 3;
    cfg.grid.betas = {0.0, 1.0};
    cfg.grid.gammas = {0.5, 2.0};
    cfg.grid.inner_folds = 2;
    cfg.seed = 5;

    for (const RunRecord& r : cross_validate(cfg)) {
        if (r.combiner == "PC") {
            REQUIRE(r.potential.has_value());
            CHECK((r.potential->beta == 0.0 || r.potential->beta == 1.0));
            CHECK((r.potential->gamma == 0.5 || r.potential->gamma == 2.0));
            CHECK_FALSE(r.zeta.has_value());
        } else {
            REQUIRE(r.zeta.has_value());
            CHECK((r.zeta->zeta == 0.5 || r.zeta->zeta == 2.0));
            CHECK_FALSE(r.potential.has_value());
        }
    }
}

TEST_CASE("lowered outer folds surface as a warning") {
    const fs::path dir = scratch_dir("cv_lowered");
    Matrix x(13, 2);
    std::vector<int> y(13, 0);
    for (int i = 0; i < 13; ++i) {
        x(i, 0) = static_cast<double>(i);
        x(i, 1) = static_cast<double>(i % 4) - 1.5;
        if (i >= 10) y[i] = 1;
    }
    save_csv(LabeledDataset(x, y, {"a", "b"}), (dir / "tiny.csv").string());

    ExperimentConfig cfg;
    cfg.datasets = {{"tiny", (dir / "tiny.csv").string()}};
    cfg.learners = {TrainerKind::nearest_centroid};
    cfg.combiners = {CombinerKind::mv};
    cfg.outer_folds = 4;  // the minority class only supports 3
    cfg.bag_members = 2;
    cfg.bag_fraction = 1.0;
    cfg.seed = 2;

    std::vector<std::string> warnings;
    const std::vector<RunRecord> rec = cross_validate(cfg, 1, &warnings);
    CHECK(rec.size() == 3);
    bool found = false;
    for (const std::string& w : warnings) {
        if (w.find("tiny") != std::string::npos &&
            w.find("lowered to 3") != std::string::npos)
            found = true;
    }
    CHECK(found);
}

TEST_CASE("rank tables order methods canonically and rank per block") {
    std::vector<RunRecord> rec;
    // two blocks, PC always better; two folds per cell
    rec.push_back(make_record("d1", "PC", 0, 0.1));
    rec.push_back(make_record("d1", "PC", 1, 0.1));
    rec.push_back(make_record("d1", "MV", 0, 0.2));
    rec.push_back(make_record("d1", "MV", 1, 0.4));
    rec.push_back(make_record("d2", "MV", 0, 0.5));
    rec.push_back(make_record("d2", "MV", 1, 0.5));
    rec.push_back(make_record("d2", "PC", 0, 0.2));
    rec.push_back(make_record("d2", "PC", 1, 0.2));

    const RankTable t = build_rank_table(rec, "micro_fdr");
    CHECK(t.criterion == "micro_fdr");
    CHECK(t.methods == std::vector<std::string>{"MV", "PC"});
    CHECK(t.n_blocks == 2);
    REQUIRE(t.mean_losses.size() == 2);
    CHECK(t.mean_losses[0] == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(t.mean_losses[1] == doctest::Approx(0.15).epsilon(1e-15));
    CHECK(t.mean_ranks == std::vector<double>{2.0, 1.0});
    CHECK(t.friedman_p > 0.0);
    CHECK(t.friedman_p < 1.0);
    // two blocks cannot feed a signed-rank test
    CHECK(std::isnan(t.wilcoxon_p(0, 1)));
    CHECK(std::isnan(t.wilcoxon_holm_p(0, 1)));

    SUBCASE("ties average the ranks") {
        std::vector<RunRecord> tied = rec;
        for (RunRecord& r : tied) {
            r.metrics.micro_fnr = 0.25;  // every method identical
        }
        const RankTable tt = build_rank_table(tied, "micro_fnr");
        CHECK(tt.mean_ranks == std::vector<double>{1.5, 1.5});
    }
    SUBCASE("six blocks unlock the pairwise test") {
        std::vector<RunRecord> big;
        for (int d = 0; d < 6; ++d) {
            const std::string ds = "d" + std::to_string(d);
            big.push_back(make_record(ds, "MV", 0, 0.3 + 0.02 * d));
            big.push_back(make_record(ds, "PC", 0, 0.1 + 0.01 * d));
        }
        const RankTable tb = build_rank_table(big, "micro_fdr");
        CHECK(tb.n_blocks == 6);
        CHECK(tb.wilcoxon_p(0, 1) == 0.03125);
        CHECK(tb.wilcoxon_p(1, 0) == 0.03125);
        CHECK(tb.wilcoxon_holm_p(0, 1) == 0.03125);  // one pair: Holm is a no-op
        const std::string text = render_rank_table(tb);
        CHECK(text.find("micro_fdr") != std::string::npos);
        CHECK(text.find("PC") != std::string::npos);
        CHECK(text.find("Friedman") != std::string::npos);
    }
    SUBCASE("a missing cell is an error that names the block") {
        std::vector<RunRecord> broken = rec;
        broken.pop_back();
        broken.pop_back();  // block d2 lost its PC records
        const std::string msg =
            message_of([&] { build_rank_table(broken, "micro_fdr"); });
        CHECK(msg.find("d2") != std::string::npos);
        CHECK(msg.find("PC") != std::string::npos);
    }
}

TEST_CASE("result records survive the jsonl round trip") {
    // already in the file's sorted order (by dataset, learner, combiner, fold)
    std::vector<RunRecord> rec;
    rec.push_back(make_record("alpha", "MV", 0, 1.0 / 3.0));
    rec.push_back(make_record("alpha", "PC", 0, 0.125));
    rec.back().potential = PotentialParams{0.3, 2.0};
    rec.back().wall_ms = 123.0;  // informational only; never serialized
    rec.push_back(make_record("alpha", "PF", 0, 0.25));
    rec.back().zeta = ZetaParam{0.5};

    const fs::path dir = scratch_dir("jsonl");
    const std::string path = (dir / "results.jsonl").string();
    write_results_jsonl(rec, path);
    const std::vector<RunRecord> back = read_results_jsonl(path);
    REQUIRE(back.size() == rec.size());
    for (std::size_t i = 0; i < rec.size(); ++i) {
        CHECK(records_equal(rec[i], back[i], false));
        CHECK(back[i].wall_ms == 0.0);
    }

    // the writer sorts whatever order it is handed
    std::vector<RunRecord> shuffled = {rec[2], rec[0], rec[1]};
    write_results_jsonl(shuffled, path);
    const std::vector<RunRecord> sorted_back = read_results_jsonl(path);
    REQUIRE(sorted_back.size() == rec.size());
    for (std::size_t i = 0; i < rec.size(); ++i) {
        CHECK(records_equal(rec[i], sorted_back[i], false));
    }

    {
        std::ifstream in(path, std::ios::binary);
        std::string body(std::istreambuf_iterator<char>(in), {});
        std::ofstream out(dir / "garbage.jsonl", std::ios::binary);
        out << body.substr(0, body.find('\n') + 1) << "not json\n";
    }
    const std::string msg =
        message_of([&] { read_results_jsonl((dir / "garbage.jsonl").string()); });
    CHECK(msg.find("line 2") != std::string::npos);
    CHECK_THROWS(read_results_jsonl((dir / "nope.jsonl").string()));
}

TEST_CASE("reports are byte-stable") {
    std::vector<RunRecord> rec;
    for (int d = 0; d < 6; ++d) {
        const std::string ds = "d" + std::to_string(d);
        for (int f = 0; f < 2; ++f) {
            rec.push_back(make_record(ds, "MV", f, 0.3 + 0.02 * d + 0.01 * f));
            rec.push_back(make_record(ds, "PC", f, 0.1 + 0.01 * d));
            rec.push_back(make_record(ds, "SM", f, 0.4 - 0.03 * d));
        }
    }
    const fs::path a = scratch_dir("report_a");
    const fs::path b = scratch_dir("report_b");
    emit_report(rec, a.string());
    emit_report(rec, b.string());

    std::vector<std::string> files = {"results.jsonl", "summary.csv"};
    for (const std::string& c : criterion_names()) files.push_back("summary_" + c + ".csv");
    for (const std::string& f : files) {
        REQUIRE(fs::exists(a / f));
        CHECK(read_file(a / f) == read_file(b / f));
    }

    const std::string summary = read_file(a / "summary.csv");
    CHECK(summary.find("method,macro_fdr,macro_fnr,macro_f1_loss,"
                       "micro_fdr,micro_fnr,micro_f1_loss") == 0);
    CHECK(summary.find("\nSM,") != std::string::npos);
    CHECK(summary.find("\nMV,") != std::string::npos);
    CHECK(summary.find("\nPC,") != std::string::npos);

    const std::string detail = read_file(a / "summary_micro_fdr.csv");
    CHECK(detail.find("friedman_p") != std::string::npos);
    CHECK(detail.find("wilcoxon_p") != std::string::npos);
    CHECK(detail.find("wilcoxon_holm_p") != std::string::npos);

    // the emitted results file reads back to the same records (sorted)
    const std::vector<RunRecord> back =
        read_results_jsonl((a / "results.jsonl").string());
    CHECK(back.size() == rec.size());
}

TEST_CASE("p-value rendering") {
    CHECK(format_p(std::nan("")) == "NA");
    CHECK(format_p(0.0005) == ".000");
    CHECK(format_p(0.0) == ".000");
    CHECK(format_p(0.001) == "0.001");
    CHECK(format_p(0.0183) == "0.018");
    CHECK(format_p(0.05) == "0.050");
    CHECK(format_p(1.0) == "1.000");
}
