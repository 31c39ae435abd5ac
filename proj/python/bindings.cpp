// Python surface of the library: datasets, trainers, ensembles and the
// combination rules, tuning, metrics, rank statistics, preprocessing,
// synthetic generators and the experiment driver.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lincomb/report.hpp"
#include "lincomb/synth.hpp"

namespace py = pybind11;
using namespace lincomb;

namespace {

int as_int(BinaryLabel m) { return m == BinaryLabel::plus ? 1 : -1; }

py::dict metrics_dict(const MetricSet& m) {
    py::dict d;
    d["macro_fdr"] = m.macro_fdr;
    d["macro_fnr"] = m.macro_fnr;
    d["macro_f1_loss"] = m.macro_f1_loss;
    d["micro_fdr"] = m.micro_fdr;
    d["micro_fnr"] = m.micro_fnr;
    d["micro_f1_loss"] = m.micro_f1_loss;
    d["kappa"] = m.kappa;
    return d;
}

}  // namespace

PYBIND11_MODULE(_lincomb, m) {
    m.doc() = "Linear-classifier ensembles with potential-function combination";

    py::class_<LabeledDataset>(m, "Dataset")
        .def(py::init<Matrix, std::vector<int>, std::vector<std::string>>(),
             py::arg("features"), py::arg("labels"), py::arg("class_names"))
        .def_property_readonly("features", &LabeledDataset::features)
        .def_property_readonly("labels", &LabeledDataset::labels)
        .def_property_readonly("class_names", &LabeledDataset::class_names)
        .def_property_readonly("n_classes", &LabeledDataset::n_classes)
        .def_property_readonly("dim", &LabeledDataset::dim)
        .def("__len__", &LabeledDataset::size)
        .def("class_counts", &LabeledDataset::class_counts)
        .def("imbalance_ratio", &LabeledDataset::imbalance_ratio)
        .def("subset", &LabeledDataset::subset, py::arg("rows"))
        .def("pair_subset", &LabeledDataset::pair_subset, py::arg("class_a"),
             py::arg("class_b"));

    py::class_<LinearModel>(m, "LinearModel")
        .def(py::init<Vector, double>(), py::arg("normal"), py::arg("offset"))
        .def_readonly("normal", &LinearModel::normal)
        .def_readonly("offset", &LinearModel::offset)
        .def_property_readonly("dim", &LinearModel::dim)
        .def("discriminant",
             [](const LinearModel& s, const Vector& x) { return discriminant(s, x); })
        .def("classify", [](const LinearModel& s, const Vector& x) {
            return as_int(classify(s, x));
        });

    // --- trainers ---------------------------------------------------------
    py::class_<TrainerConfig>(m, "TrainerConfig")
        .def(py::init([](const std::string& kind, int max_iters, double learning_rate,
                         double regularization, std::uint64_t seed) {
                 TrainerConfig cfg = default_config(trainer_from_name(kind));
                 if (max_iters > 0) cfg.max_iters = max_iters;
                 if (learning_rate > 0.0) cfg.learning_rate = learning_rate;
                 if (regularization >= 0.0) cfg.regularization = regularization;
                 cfg.seed = seed;
                 return cfg;
             }),
             py::arg("kind"), py::arg("max_iters") = 0, py::arg("learning_rate") = 0.0,
             py::arg("regularization") = -1.0, py::arg("seed") = 0)
        .def_property_readonly(
            "kind", [](const TrainerConfig& c) { return std::string(trainer_name(c.kind)); })
        .def_readwrite("max_iters", &TrainerConfig::max_iters)
        .def_readwrite("learning_rate", &TrainerConfig::learning_rate)
        .def_readwrite("regularization", &TrainerConfig::regularization)
        .def_readwrite("seed", &TrainerConfig::seed);

    py::class_<TrainResult>(m, "TrainResult")
        .def_readonly("model", &TrainResult::model)
        .def_property_readonly("converged",
                               [](const TrainResult& r) { return r.diag.converged; })
        .def_property_readonly("degenerate",
                               [](const TrainResult& r) { return r.diag.degenerate; })
        .def_property_readonly("iterations",
                               [](const TrainResult& r) { return r.diag.iterations; });

    m.def("learner_names", [] {
        return std::vector<std::string>{"FLDA", "LR", "MLP", "NC", "SVM"};
    });
    m.def(
        "train",
        [](const LabeledDataset& d, const TrainerConfig& cfg) { return train(d, cfg); },
        py::arg("data"), py::arg("config"));
    m.def(
        "train",
        [](const LabeledDataset& d, const std::string& kind, std::uint64_t seed) {
            TrainerConfig cfg = default_config(trainer_from_name(kind));
            cfg.seed = seed;
            return train(d, cfg);
        },
        py::arg("data"), py::arg("kind"), py::arg("seed") = 0);

    // --- potential geometry -------------------------------------------------
    py::class_<PotentialParams>(m, "PotentialParams")
        .def(py::init([](double beta, double gamma) {
                 PotentialParams p{beta, gamma};
                 p.validate();
                 return p;
             }),
             py::arg("beta") = 0.5, py::arg("gamma") = 1.0)
        .def_readonly("beta", &PotentialParams::beta)
        .def_readonly("gamma", &PotentialParams::gamma)
        .def("__repr__", [](const PotentialParams& p) {
            return "PotentialParams(beta=" + std::to_string(p.beta) +
                   ", gamma=" + std::to_string(p.gamma) + ")";
        });

    py::class_<ClassGeometry>(m, "ClassGeometry")
        .def_readonly("centroid", &ClassGeometry::centroid)
        .def_readonly("cov_inverse", &ClassGeometry::cov_inverse)
        .def_readonly("normal_var_inverse", &ClassGeometry::normal_var_inverse);

    py::class_<ClassGeometryPair>(m, "ClassGeometryPair")
        .def_readonly("plus", &ClassGeometryPair::plus)
        .def_readonly("minus", &ClassGeometryPair::minus);

    m.def("pf_transform",
          [](double z, double zeta) { return pf_transform(z, ZetaParam{zeta}); },
          py::arg("z"), py::arg("zeta"));
    m.def("fit_class_geometry_pair", &fit_class_geometry_pair, py::arg("data"),
          py::arg("model"));
    m.def("mahalanobis_dc", &mahalanobis_dc, py::arg("geometry"), py::arg("x"));
    m.def("normal_distance_dn", &normal_distance_dn, py::arg("geometry"), py::arg("x"),
          py::arg("model"));
    m.def("class_potential", &class_potential, py::arg("geometry"), py::arg("x"),
          py::arg("model"), py::arg("params"));
    m.def("pc_discriminant", &pc_discriminant, py::arg("geometries"), py::arg("x"),
          py::arg("model"), py::arg("params"));

    // --- ensembles ----------------------------------------------------------
    py::class_<BagSpec>(m, "BagSpec")
        .def(py::init([](int n_members, double sample_fraction, std::uint64_t seed) {
                 BagSpec s{n_members, sample_fraction, seed};
                 s.validate();
                 return s;
             }),
             py::arg("n_members") = 11, py::arg("sample_fraction") = 0.8,
             py::arg("seed") = 0)
        .def_readonly("n_members", &BagSpec::n_members)
        .def_readonly("sample_fraction", &BagSpec::sample_fraction)
        .def_readonly("seed", &BagSpec::seed);

    py::class_<Ensemble>(m, "Ensemble")
        .def_readonly("members", &Ensemble::members)
        .def_property_readonly(
            "combiner", [](const Ensemble& e) { return std::string(combiner_name(e.combiner)); })
        .def_property_readonly("n_members", &Ensemble::n_members)
        .def("discriminant",
             [](const Ensemble& e, const Vector& x) { return ensemble_discriminant(e, x); })
        .def("classify", [](const Ensemble& e, const Vector& x) {
            return as_int(ensemble_classify(e, x));
        });

    py::class_<OvoModel>(m, "OvoModel")
        .def_readonly("class_pairs", &OvoModel::class_pairs)
        .def_readonly("class_names", &OvoModel::class_names)
        .def_property_readonly("n_classes", &OvoModel::n_classes)
        .def("predict",
             [](const OvoModel& s, const Vector& x) { return ovo_predict(s, x); })
        .def("predict_all", [](const OvoModel& s, const Matrix& features) {
            return ovo_predict_all(s, features);
        });

    const auto combiner_config = [](const std::string& kind,
                                    std::optional<PotentialParams> potential,
                                    std::optional<double> zeta) {
        CombinerConfig cc;
        cc.kind = combiner_from_name(kind);
        if (potential) cc.potential_params = *potential;
        if (zeta) cc.zeta = ZetaParam{*zeta};
        return cc;
    };
    m.def("combiner_names", [] {
        return std::vector<std::string>{"SM", "MA", "MV", "PF", "PC"};
    });
    m.def(
        "bag_train",
        [combiner_config](const LabeledDataset& d, const TrainerConfig& trainer,
                          const BagSpec& bag, const std::string& combiner,
                          std::optional<PotentialParams> potential,
                          std::optional<double> zeta) {
            return bag_train(d, trainer, bag, combiner_config(combiner, potential, zeta));
        },
        py::arg("data"), py::arg("trainer"), py::arg("bag"), py::arg("combiner"),
        py::arg("potential") = std::nullopt, py::arg("zeta") = std::nullopt);
    m.def(
        "ovo_train",
        [combiner_config](const LabeledDataset& d, const TrainerConfig& trainer,
                          const BagSpec& bag, const std::string& combiner,
                          std::optional<PotentialParams> potential,
                          std::optional<double> zeta) {
            return ovo_train(d, trainer, bag, combiner_config(combiner, potential, zeta));
        },
        py::arg("data"), py::arg("trainer"), py::arg("bag"), py::arg("combiner"),
        py::arg("potential") = std::nullopt, py::arg("zeta") = std::nullopt);

    // --- metrics and tuning ---------------------------------------------------
    m.def("evaluate_predictions",
          [](const std::vector<int>& truth, const std::vector<int>& pred, int n_classes) {
              return metrics_dict(evaluate_predictions(truth, pred, n_classes));
          },
          py::arg("truth"), py::arg("predicted"), py::arg("n_classes"));
    m.def("cohen_kappa", &cohen_kappa, py::arg("truth"), py::arg("predicted"));
    m.def("criterion_names", [] { return criterion_names(); });

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init(&GridSpec::defaults))
        .def_readwrite("betas", &GridSpec::betas)
        .def_readwrite("gammas", &GridSpec::gammas)
        .def_readwrite("inner_folds", &GridSpec::inner_folds);

    m.def("stratified_folds",
          [](const std::vector<int>& labels, int k, std::uint64_t seed) {
              const FoldAssignment fa = stratified_folds(labels, k, seed);
              return py::make_tuple(fa.fold_of, fa.n_folds, fa.lowered);
          },
          py::arg("labels"), py::arg("k"), py::arg("seed"));
    m.def("grid_search", &grid_search, py::arg("data"), py::arg("trainer"),
          py::arg("bag"), py::arg("grid"));
    m.def("tune_zeta",
          [](const LabeledDataset& d, const TrainerConfig& t, const BagSpec& b,
             const GridSpec& g) { return tune_zeta(d, t, b, g).zeta; },
          py::arg("data"), py::arg("trainer"), py::arg("bag"), py::arg("grid"));

    // --- rank statistics -------------------------------------------------------
    m.def("tie_ranks", &tie_ranks, py::arg("values"));
    m.def("average_ranks", &average_ranks, py::arg("losses"));
    m.def("friedman_test",
          [](const Matrix& losses) {
              const FriedmanResult r = friedman_test(losses);
              py::dict d;
              d["statistic"] = r.statistic;
              d["p_value"] = r.p_value;
              d["mean_ranks"] = r.mean_ranks;
              d["n_blocks"] = r.n_blocks;
              d["n_treatments"] = r.n_treatments;
              return d;
          },
          py::arg("losses"));
    m.def("wilcoxon_signed_rank",
          [](const std::vector<double>& a, const std::vector<double>& b) {
              const WilcoxonResult r = wilcoxon_signed_rank(a, b);
              py::dict d;
              d["statistic"] = r.statistic;
              d["p_value"] = r.p_value;
              d["n_nonzero"] = r.n_nonzero;
              d["exact"] = r.exact;
              return d;
          },
          py::arg("a"), py::arg("b"));
    m.def("holm_adjust", &holm_adjust, py::arg("p_values"));

    // --- preprocessing -----------------------------------------------------------
    py::class_<FittedTransform>(m, "FittedTransform")
        .def_readonly("kept_columns", &FittedTransform::kept_columns)
        .def_readonly("n_components", &FittedTransform::n_components)
        .def_readonly("eigenvalues", &FittedTransform::eigenvalues)
        .def_property_readonly("output_dim", &FittedTransform::output_dim)
        .def("apply", &FittedTransform::apply, py::arg("x"));

    m.def("preprocess",
          [](const LabeledDataset& d, double pca_variance) {
              std::vector<std::string> warnings;
              auto [out, t] = preprocess(d, pca_variance, &warnings);
              return py::make_tuple(out, t, warnings);
          },
          py::arg("data"), py::arg("pca_variance") = 0.95);

    // --- data in and out ------------------------------------------------------------
    m.def("load_csv", &load_csv, py::arg("path"));
    m.def("save_csv", &save_csv, py::arg("data"), py::arg("path"));
    m.def("summarize",
          [](const std::string& name, const LabeledDataset& d) {
              const DatasetSummary s = summarize(name, d);
              py::dict out;
              out["name"] = s.name;
              out["instances"] = s.instances;
              out["attributes"] = s.attributes;
              out["classes"] = s.classes;
              out["imbalance_ratio"] = s.imbalance_ratio;
              return out;
          },
          py::arg("name"), py::arg("data"));
    m.def("make_banana", &make_banana, py::arg("n"), py::arg("seed"),
          py::arg("noise") = 0.2);
    m.def("make_spirals", &make_spirals, py::arg("n"), py::arg("seed"),
          py::arg("noise") = 0.1, py::arg("turns") = 1.5);
    m.def("make_gaussians", &make_gaussians, py::arg("n"), py::arg("seed"),
          py::arg("separation") = 2.0, py::arg("dim") = 2);

    // --- experiments -------------------------------------------------------------------
    py::class_<RunRecord>(m, "RunRecord")
        .def_readonly("dataset", &RunRecord::dataset)
        .def_readonly("learner", &RunRecord::learner)
        .def_readonly("combiner", &RunRecord::combiner)
        .def_readonly("fold", &RunRecord::fold)
        .def_property_readonly("metrics",
                               [](const RunRecord& r) { return metrics_dict(r.metrics); })
        .def_property_readonly("beta",
                               [](const RunRecord& r) -> std::optional<double> {
                                   if (!r.potential) return std::nullopt;
                                   return r.potential->beta;
                               })
        .def_property_readonly("gamma",
                               [](const RunRecord& r) -> std::optional<double> {
                                   if (!r.potential) return std::nullopt;
                                   return r.potential->gamma;
                               })
        .def_property_readonly("zeta", [](const RunRecord& r) -> std::optional<double> {
            if (!r.zeta) return std::nullopt;
            return r.zeta->zeta;
        });

    m.def("run_experiment",
          [](const std::string& config_path, int jobs,
             std::optional<std::string> output) {
              ExperimentConfig cfg = load_config(config_path);
              std::vector<std::string> warnings;
              const std::vector<RunRecord> records = cross_validate(cfg, jobs, &warnings);
              emit_report(records, output.value_or(cfg.output));
              return py::make_tuple(records, warnings);
          },
          py::arg("config_path"), py::arg("jobs") = 1,
          py::arg("output") = std::nullopt);
    m.def("read_results", &read_results_jsonl, py::arg("path"));
    m.def("emit_report", &emit_report, py::arg("records"), py::arg("out_dir"));
}
