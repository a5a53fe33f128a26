#include "doctest.h"

#include "copd/errors.hpp"
#include "copd/knn.hpp"
#include "copd/rng.hpp"

#include <vector>

using namespace copd;

namespace {

Matrix points(const std::vector<std::vector<double>>& rows) {
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

void make_blobs(std::size_t n_per, Matrix& X, std::vector<int>& y,
                std::uint64_t seed, double gap = 8.0) {
    Rng rng = derive_stream(seed, "knn_test");
    X = Matrix(2 * n_per, 2);
    y.assign(2 * n_per, 0);
    for (std::size_t i = 0; i < n_per; ++i) {
        X.at(i, 0) = rng.normal();
        X.at(i, 1) = rng.normal();
        X.at(n_per + i, 0) = gap + rng.normal();
        X.at(n_per + i, 1) = gap + rng.normal();
        y[n_per + i] = 1;
    }
}

} // namespace

TEST_SUITE("knn") {

TEST_CASE("k = 1 on a training point returns its own label") {
    Matrix X = points({{0.0, 0.0}, {5.0, 5.0}, {9.0, 0.0}});
    std::vector<int> y = {0, 1, 0};
    KnnPrediction pred = knn_predict(X, y, X, 1);
    CHECK(pred.labels == std::vector<int>{0, 1, 0});
    CHECK(pred.proba.at(1, 1) == 1.0);
    CHECK(pred.proba.at(1, 0) == 0.0);
}

TEST_CASE("k = 3 vote counts become proportions") {
    // Query at origin; nearest three labeled {1, 1, 0}.
    Matrix train = points({{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {9.0, 9.0}});
    std::vector<int> y = {1, 1, 0, 0};
    Matrix query = points({{0.0, 0.0}});
    KnnPrediction pred = knn_predict(train, y, query, 3);
    CHECK(pred.labels[0] == 1);
    CHECK(pred.proba.at(0, 0) == doctest::Approx(1.0 / 3.0));
    CHECK(pred.proba.at(0, 1) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("equidistant candidates at the k-th slot admit the lower index") {
    // Both training points at distance 1 from the query; k = 1 must pick
    // index 0, whose label decides the vote.
    Matrix train = points({{1.0, 0.0}, {0.0, 1.0}});
    std::vector<int> y = {1, 0};
    Matrix query = points({{0.0, 0.0}});
    KnnPrediction pred = knn_predict(train, y, query, 1);
    CHECK(pred.labels[0] == 1);
    CHECK(pred.proba.at(0, 1) == 1.0);
}

TEST_CASE("k = n_train votes the global majority") {
    Matrix train = points({{0.0}, {1.0}, {2.0}, {50.0}, {51.0}});
    std::vector<int> y = {1, 1, 1, 0, 0};
    Matrix query = points({{100.0}});
    KnnPrediction pred = knn_predict(train, y, query, 5);
    CHECK(pred.labels[0] == 1);
    CHECK(pred.proba.at(0, 1) == doctest::Approx(0.6));
}

TEST_CASE("neighbor_prefixes orders by squared distance then index") {
    Matrix train = points({{3.0}, {1.0}, {2.0}, {1.0}});
    Matrix query = points({{0.0}});
    auto prefix = neighbor_prefixes(train, query, 4);
    REQUIRE(prefix.size() == 1);
    CHECK(prefix[0] == std::vector<std::size_t>{1, 3, 2, 0});
}

TEST_CASE("parameter validation") {
    Matrix X = points({{0.0}, {1.0}, {2.0}});
    std::vector<int> y = {0, 1, 0};
    CHECK_THROWS_WITH_AS(knn_predict(X, y, X, 2), doctest::Contains("odd"),
                         ConfigError);
    CHECK_THROWS_AS(knn_predict(X, y, X, 5), DataError); // k > n_train
    CHECK_THROWS_AS(knn_predict(X, y, X, 0), ConfigError);
}

TEST_CASE("select_k on separated blobs reports perfect accuracy for every k") {
    Matrix X;
    std::vector<int> y;
    make_blobs(30, X, y, 1);
    SelectKResult r = select_k(X, y, {1, 3, 5, 7}, 5, 42);
    REQUIRE(r.candidates == std::vector<std::size_t>{1, 3, 5, 7});
    REQUIRE(r.mean_accuracy.size() == 4);
    for (double acc : r.mean_accuracy) CHECK(acc == doctest::Approx(1.0));
    // All tie at 1.0 -> smallest k wins.
    CHECK(r.best_k == 1);
}

TEST_CASE("select_k default candidates are the odd numbers 1..29") {
    Matrix X;
    std::vector<int> y;
    make_blobs(40, X, y, 2);
    SelectKResult r = select_k(X, y);
    REQUIRE(r.candidates.size() == 15);
    for (std::size_t i = 0; i < 15; ++i) CHECK(r.candidates[i] == 2 * i + 1);
}

TEST_CASE("select_k prefers a larger k on noisy overlapping data") {
    // Heavily overlapping blobs: 1-NN overfits the noise, larger k smooths.
    Matrix X;
    std::vector<int> y;
    make_blobs(80, X, y, 3, 1.0);
    SelectKResult r = select_k(X, y, {1, 15}, 5, 42);
    REQUIRE(r.candidates.size() == 2);
    CHECK(r.mean_accuracy[1] > r.mean_accuracy[0]);
    CHECK(r.best_k == 15);
}

TEST_CASE("select_k is deterministic in the seed") {
    Matrix X;
    std::vector<int> y;
    make_blobs(25, X, y, 4, 2.0);
    SelectKResult a = select_k(X, y, {1, 3, 5}, 5, 7);
    SelectKResult b = select_k(X, y, {1, 3, 5}, 5, 7);
    CHECK(a.best_k == b.best_k);
    CHECK(a.mean_accuracy == b.mean_accuracy);
}

TEST_CASE("select_k rejects bad candidates") {
    Matrix X;
    std::vector<int> y;
    make_blobs(10, X, y, 5);
    CHECK_THROWS_AS(select_k(X, y, {2}, 5, 42), ConfigError); // even k
    CHECK_THROWS_AS(select_k(X, y, {}, 1, 42), ConfigError);  // folds < 2
}

TEST_CASE("accuracy ties pick the smallest k even in unsorted candidate lists") {
    Matrix X;
    std::vector<int> y;
    make_blobs(30, X, y, 6); // fully separable: every k scores 1.0
    SelectKResult r = select_k(X, y, {7, 3, 5, 1}, 5, 42);
    for (double acc : r.mean_accuracy) CHECK(acc == doctest::Approx(1.0));
    CHECK(r.best_k == 1);
}

} // TEST_SUITE
