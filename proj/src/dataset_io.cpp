#include "lincomb/dataset_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace lincomb {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

LabeledDataset load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
    const std::size_t n_cols = split_fields(line).size();
    if (n_cols < 2) {
        throw std::runtime_error(path + ": header must list at least one feature and the label");
    }
    const std::size_t n_feats = n_cols - 1;

    std::vector<std::vector<double>> rows;
    std::vector<std::string> raw_labels;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() != n_cols) {
            throw std::runtime_error(path + " row " + std::to_string(line_no) + ": expected " +
                                     std::to_string(n_cols) + " fields, found " +
                                     std::to_string(fields.size()));
        }
        std::vector<double> feats(n_feats);
        for (std::size_t j = 0; j < n_feats; ++j) {
            const std::string cell = trim(fields[j]);
            std::size_t used = 0;
            bool ok = !cell.empty();
            double v = 0.0;
            if (ok) {
                try {
                    v = std::stod(cell, &used);
                } catch (const std::exception&) {
                    ok = false;
                }
            }
            if (!ok || used != cell.size()) {
                throw std::runtime_error(path + " row " + std::to_string(line_no) +
                                         ", column " + std::to_string(j + 1) +
                                         ": not a number: '" + cell + "'");
            }
            feats[j] = v;
        }
        const std::string label = trim(fields[n_feats]);
        if (label.empty()) {
            throw std::runtime_error(path + " row " + std::to_string(line_no) +
                                     ", column " + std::to_string(n_cols) + ": empty label");
        }
        rows.push_back(std::move(feats));
        raw_labels.push_back(label);
    }
    if (rows.empty()) throw std::runtime_error(path + ": no data rows");

    // Class indices follow the sorted raw names so the mapping does not
    // depend on row order.
    std::vector<std::string> names = raw_labels;
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < names.size(); ++i) index[names[i]] = static_cast<int>(i);

    Matrix features(rows.size(), n_feats);
    std::vector<int> labels(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < n_feats; ++j) features(i, j) = rows[i][j];
        labels[i] = index[raw_labels[i]];
    }
    return LabeledDataset(std::move(features), std::move(labels), std::move(names));
}

void save_csv(const LabeledDataset& data, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot write");
    out.precision(17);
    for (int j = 0; j < data.dim(); ++j) out << "x" << (j + 1) << ",";
    out << "class\n";
    for (int i = 0; i < data.size(); ++i) {
        for (int j = 0; j < data.dim(); ++j) out << data.features()(i, j) << ",";
        out << data.class_names()[data.label(i)] << "\n";
    }
    if (!out) throw std::runtime_error(path + ": write failed");
}

DatasetSummary summarize(const std::string& name, const LabeledDataset& data) {
    DatasetSummary s;
    s.name = name;
    s.instances = data.size();
    s.attributes = data.dim();
    s.classes = static_cast<int>(data.class_names().size());
    s.imbalance_ratio = data.imbalance_ratio();
    return s;
}

}  // namespace lincomb
