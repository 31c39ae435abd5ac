#include <doctest.h>

#include <cmath>
#include <limits>

#include "lincomb/core.hpp"

using namespace lincomb;

namespace {

Matrix make_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const int n = static_cast<int>(rows.size());
    const int d = static_cast<int>(rows.begin()->size());
    Matrix m(n, d);
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (double v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

Vector vec2(double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
}

}  // namespace

TEST_CASE("sign rule maps zero to plus") {
    CHECK(sign_label(0.0) == BinaryLabel::plus);
    CHECK(sign_label(1e-300) == BinaryLabel::plus);
    CHECK(sign_label(-1e-300) == BinaryLabel::minus);
    CHECK(sign_label(3.5) == BinaryLabel::plus);
    CHECK(sign_label(-2.0) == BinaryLabel::minus);
}

TEST_CASE("label helpers") {
    CHECK(label_value(BinaryLabel::plus) == 1.0);
    CHECK(label_value(BinaryLabel::minus) == -1.0);
    CHECK(opposite(BinaryLabel::plus) == BinaryLabel::minus);
    CHECK(opposite(opposite(BinaryLabel::minus)) == BinaryLabel::minus);
}

TEST_CASE("mix_seed is deterministic and salt-sensitive") {
    CHECK(mix_seed(42, 7) == mix_seed(42, 7));
    CHECK(mix_seed(42, 7) != mix_seed(42, 8));
    CHECK(mix_seed(42, 7) != mix_seed(43, 7));
}

TEST_CASE("dataset construction validates input") {
    CHECK_THROWS_AS(LabeledDataset(make_rows({{1.0, 2.0}}), {0}, {"a", "b"}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        LabeledDataset(make_rows({{1.0, 2.0}, {3.0, 4.0}}), {0, 0}, {"a", "b"}),
        std::invalid_argument);
    Matrix bad = make_rows({{1.0, 2.0}, {3.0, 4.0}});
    bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(LabeledDataset(bad, {0, 1}, {"a", "b"}), std::invalid_argument);
    CHECK_NOTHROW(
        LabeledDataset(make_rows({{1.0, 2.0}, {3.0, 4.0}}), {0, 1}, {"a", "b"}));
}

TEST_CASE("class counts and the imbalance ratio") {
    SUBCASE("balanced three classes give ratio one") {
        Matrix x = Matrix::Zero(150, 4);
        for (int i = 0; i < 150; ++i) x(i, 0) = i;
        std::vector<int> y(150);
        for (int i = 0; i < 150; ++i) y[i] = i / 50;
        LabeledDataset d(x, y, {"a", "b", "c"});
        CHECK(d.class_counts() == std::vector<int>{50, 50, 50});
        CHECK(d.imbalance_ratio() == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("225 against 81 gives the published 1.89") {
        Matrix x = Matrix::Zero(306, 1);
        for (int i = 0; i < 306; ++i) x(i, 0) = i;
        std::vector<int> y(306, 0);
        for (int i = 225; i < 306; ++i) y[i] = 1;
        LabeledDataset d(x, y, {"1", "2"});
        CHECK(d.imbalance_ratio() == doctest::Approx(1.8888888888888888).epsilon(1e-12));
        CHECK(d.imbalance_ratio() == doctest::Approx(1.89).epsilon(5e-3));
    }
    SUBCASE("1490 against 711 gives the published 1.55") {
        Matrix x = Matrix::Zero(2201, 1);
        for (int i = 0; i < 2201; ++i) x(i, 0) = i;
        std::vector<int> y(2201, 0);
        for (int i = 1490; i < 2201; ++i) y[i] = 1;
        LabeledDataset d(x, y, {"no", "yes"});
        CHECK(d.imbalance_ratio() == doctest::Approx(1.5478199718706047).epsilon(1e-12));
        CHECK(d.imbalance_ratio() == doctest::Approx(1.55).epsilon(5e-3));
    }
}

TEST_CASE("binary view maps class index zero to plus") {
    const LabeledDataset d = LabeledDataset::from_binary(
        make_rows({{0.0, 1.0}, {2.0, 3.0}, {4.0, 5.0}}),
        {BinaryLabel::plus, BinaryLabel::minus, BinaryLabel::plus});
    CHECK(d.label(0) == 0);
    CHECK(d.label(1) == 1);
    CHECK(d.binary_label(0) == BinaryLabel::plus);
    CHECK(d.binary_label(1) == BinaryLabel::minus);
    CHECK(d.binary_label(2) == BinaryLabel::plus);
}

TEST_CASE("pair subset puts the first class in the plus role") {
    Matrix x = make_rows({{0.0}, {1.0}, {2.0}, {3.0}, {4.0}, {5.0}});
    const LabeledDataset d(x, {0, 1, 2, 0, 1, 2}, {"a", "b", "c"});

    const LabeledDataset p = d.pair_subset(2, 0);
    CHECK(p.size() == 4);
    CHECK(p.n_classes() == 2);
    CHECK(p.class_names()[0] == "c");
    CHECK(p.class_names()[1] == "a");
    for (int i = 0; i < p.size(); ++i) {
        const bool from_c = p.features()(i, 0) == 2.0 || p.features()(i, 0) == 5.0;
        CHECK(p.binary_label(i) == (from_c ? BinaryLabel::plus : BinaryLabel::minus));
    }
}

TEST_CASE("row subsets keep the class table and reject single-class picks") {
    Matrix x = make_rows({{0.0}, {1.0}, {2.0}, {3.0}});
    const LabeledDataset d(x, {0, 0, 1, 1}, {"a", "b"});
    const LabeledDataset s = d.subset({0, 2, 3});
    CHECK(s.size() == 3);
    CHECK(s.class_names() == d.class_names());
    CHECK(s.label(0) == 0);
    CHECK_THROWS_AS(d.subset({0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(d.subset({}), std::invalid_argument);
}

TEST_CASE("linear model normalizes the plane jointly") {
    const LinearModel m(vec2(3.0, 4.0), 10.0);
    CHECK(m.normal(0) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(m.normal(1) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(m.offset == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(norm(m.normal) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(LinearModel(vec2(0.0, 0.0), 1.0), std::invalid_argument);
}

TEST_CASE("discriminant is the signed plane distance") {
    const LinearModel m(vec2(1.0, 0.0), -1.0);  // plane x1 = 1
    CHECK(discriminant(m, vec2(3.0, 5.0)) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(discriminant(m, vec2(0.0, -2.0)) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(classify(m, vec2(3.0, 5.0)) == BinaryLabel::plus);
    CHECK(classify(m, vec2(0.0, -2.0)) == BinaryLabel::minus);
    CHECK(classify(m, vec2(1.0, 7.0)) == BinaryLabel::plus);  // on the plane
    Vector wrong(3);
    wrong << 1.0, 2.0, 3.0;
    CHECK_THROWS_AS(discriminant(m, wrong), std::invalid_argument);
}

TEST_CASE("dot and norm check dimensions") {
    Vector a(2), b(3);
    a << 1.0, 2.0;
    b << 1.0, 2.0, 3.0;
    CHECK_THROWS_AS(dot(a, b), std::invalid_argument);
    CHECK(dot(a, a) == doctest::Approx(5.0));
    CHECK(norm(a) == doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("projection onto a normal direction") {
    const Vector p = project_onto_normal(vec2(3.0, 4.0), vec2(2.0, 0.0));
    CHECK(p(0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(p(1) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK_THROWS_AS(project_onto_normal(vec2(1.0, 1.0), vec2(0.0, 0.0)),
                    std::invalid_argument);
}
