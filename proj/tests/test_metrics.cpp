#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "driftgas/metrics.hpp"
#include "test_util.hpp"

using namespace driftgas;

TEST_CASE("prequential hand cases") {
    CHECK(prequential_error({0, 0, 0}, {0, 0, 0}) == std::vector<double>{0.0, 0.0, 0.0});
    CHECK(prequential_error({0, 0}, {1, 1}) == std::vector<double>{100.0, 100.0});

    const auto trace = prequential_error({0, 0, 0, 0}, {0, 1, 0, 0});
    REQUIRE(trace.size() == 4);
    CHECK(trace[0] == 0.0);
    CHECK(trace[1] == 50.0);
    CHECK(trace[2] == doctest::Approx(100.0 / 3.0).epsilon(1e-12));
    CHECK(trace[3] == 25.0);

    CHECK_THROWS(prequential_error({0, 1}, {0}));
    CHECK_THROWS(prequential_error({}, {}));
}

TEST_CASE("prequential final value recovers the misclassification count") {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> lab(0, 3);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<ClassId> truth, pred;
        std::size_t mistakes = 0;
        for (int i = 0; i < 257; ++i) {
            truth.push_back(lab(rng));
            pred.push_back(lab(rng));
            if (truth.back() != pred.back()) ++mistakes;
        }
        const auto trace = prequential_error(truth, pred);
        const double recovered = trace.back() * static_cast<double>(truth.size()) / 100.0;
        CHECK(recovered == doctest::Approx(static_cast<double>(mistakes)).epsilon(1e-12));
    }
}

TEST_CASE("macro F1 hand cases") {
    SUBCASE("perfect prediction") {
        const auto rep = macro_f1({0, 1, 2, 0}, {0, 1, 2, 0}, {0, 1, 2});
        CHECK(rep.macro_f1 == 1.0);
        for (const auto& [cls, prf] : rep.per_class) CHECK(prf.f1 == 1.0);
    }
    SUBCASE("symmetric half-errors") {
        const auto rep = macro_f1({0, 0, 1, 1}, {0, 1, 0, 1}, {0, 1});
        CHECK(rep.macro_f1 == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(rep.per_class.at(0).precision == doctest::Approx(0.5));
        CHECK(rep.per_class.at(0).recall == doctest::Approx(0.5));
        CHECK(rep.per_class.at(1).f1 == doctest::Approx(0.5));
    }
    SUBCASE("degenerate class with no predictions") {
        const auto rep = macro_f1({0, 0, 0, 1}, {0, 0, 0, 0}, {0, 1});
        CHECK(rep.per_class.at(0).precision == doctest::Approx(0.75).epsilon(1e-12));
        CHECK(rep.per_class.at(0).recall == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rep.per_class.at(0).f1 == doctest::Approx(6.0 / 7.0).epsilon(1e-12));
        CHECK(rep.per_class.at(1).f1 == 0.0);
        CHECK(rep.macro_f1 == doctest::Approx(3.0 / 7.0).epsilon(1e-12));
    }
    SUBCASE("errors") {
        CHECK_THROWS(macro_f1({0, 1}, {0}, {0, 1}));
        CHECK_THROWS(macro_f1({0, 5}, {0, 0}, {0, 1}));  // unknown label
    }
}

TEST_CASE("macro F1 confusion matrix is consistent") {
    const auto rep = macro_f1({0, 0, 1, 2, 2, 2}, {0, 1, 1, 2, 0, 2}, {0, 1, 2});
    long long total = 0;
    for (const auto& row : rep.confusion)
        for (long long v : row) total += v;
    CHECK(total == 6);
    CHECK(rep.confusion[0][0] == 1);
    CHECK(rep.confusion[0][1] == 1);
    CHECK(rep.confusion[2][0] == 1);
    CHECK(rep.confusion[2][2] == 2);
}

TEST_CASE("metrics match the naive oracle on random sequences") {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> lab(0, 4);
    const std::vector<ClassId> classes = {0, 1, 2, 3, 4};
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<ClassId> truth, pred;
        for (int i = 0; i < 301; ++i) {
            truth.push_back(lab(rng));
            pred.push_back(lab(rng));
        }
        const auto naive = testutil::naive_macro_f1(truth, pred, classes);
        const auto rep = macro_f1(truth, pred, classes);
        CHECK(rep.macro_f1 == doctest::Approx(naive.macro_f1).epsilon(1e-12));

        const auto naive_preq = testutil::naive_prequential(truth, pred);
        const auto preq = prequential_error(truth, pred);
        for (std::size_t t = 0; t < preq.size(); ++t)
            CHECK(preq[t] == doctest::Approx(naive_preq[t]).epsilon(1e-12));
    }
}

TEST_CASE("macro F1 invariant under consistent relabeling") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> lab(0, 2);
    std::vector<ClassId> truth, pred;
    for (int i = 0; i < 200; ++i) {
        truth.push_back(lab(rng));
        pred.push_back(lab(rng));
    }
    const auto base = macro_f1(truth, pred, {0, 1, 2});

    const int perm[3] = {2, 0, 1};
    std::vector<ClassId> truth2, pred2;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        truth2.push_back(perm[truth[i]]);
        pred2.push_back(perm[pred[i]]);
    }
    const auto permuted = macro_f1(truth2, pred2, {0, 1, 2});
    CHECK(base.macro_f1 == doctest::Approx(permuted.macro_f1).epsilon(1e-12));
}

TEST_CASE("windowed F1 stride arithmetic") {
    // length 10, window 4, overlap 0.5 -> stride 2 -> starts 0,2,4,6
    const std::vector<ClassId> truth = {0, 1, 0, 1, 0, 1, 0, 1, 0, 1};
    const auto points = windowed_f1(truth, truth, 4, 0.5);
    REQUIRE(points.size() == 4);
    CHECK(points[0].first == doctest::Approx(2.0));
    CHECK(points[1].first == doctest::Approx(4.0));
    CHECK(points[2].first == doctest::Approx(6.0));
    CHECK(points[3].first == doctest::Approx(8.0));
    for (const auto& [t, f1] : points) CHECK(f1 == 1.0);
}

TEST_CASE("full-length window equals global macro F1 exactly") {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> lab(0, 2);
    std::vector<ClassId> truth, pred;
    for (int i = 0; i < 90; ++i) {
        truth.push_back(lab(rng));
        pred.push_back(lab(rng));
    }
    // all three classes occur in truth, so the window class set matches Y
    const auto global = macro_f1(truth, pred, {0, 1, 2});
    const auto points = windowed_f1(truth, pred, truth.size(), 0.2);
    REQUIRE(points.size() == 1);
    CHECK(points[0].second == global.macro_f1);
}

TEST_CASE("windowed F1 input validation") {
    const std::vector<ClassId> seq = {0, 1, 0, 1};
    CHECK_THROWS(windowed_f1(seq, seq, 5, 0.2));
    CHECK_THROWS(windowed_f1(seq, seq, 2, 1.0));
    CHECK_THROWS(windowed_f1(seq, {0, 1}, 2, 0.2));
}

TEST_CASE("mean_std") {
    const auto [m, s] = mean_std({2.0, 4.0, 6.0});
    CHECK(m == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(s == doctest::Approx(std::sqrt(8.0 / 3.0)).epsilon(1e-12));
    CHECK_THROWS(mean_std({}));
}
