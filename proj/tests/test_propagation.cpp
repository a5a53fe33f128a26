#include "doctest.h"

#include "copd/errors.hpp"
#include "copd/propagation.hpp"
#include "copd/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

using namespace copd;

namespace {

Matrix cluster_points(Rng& rng, std::size_t n_per, double cx0, double cx1) {
    Matrix X(2 * n_per, 2);
    for (std::size_t i = 0; i < n_per; ++i) {
        X.at(i, 0) = cx0 + rng.normal() * 0.1;
        X.at(i, 1) = rng.normal() * 0.1;
        X.at(n_per + i, 0) = cx1 + rng.normal() * 0.1;
        X.at(n_per + i, 1) = rng.normal() * 0.1;
    }
    return X;
}

std::vector<Severity> seeds_two_clusters(std::size_t n_per) {
    std::vector<Severity> y(2 * n_per, Severity::unlabeled);
    y[0] = Severity::mild_to_moderate;
    y[n_per] = Severity::severe;
    return y;
}

} // namespace

TEST_SUITE("propagation") {

TEST_CASE("two tight clusters, one seed each") {
    Rng rng = derive_stream(1, "prop_test");
    Matrix X = cluster_points(rng, 12, 0.0, 10.0);
    std::vector<Severity> y = seeds_two_clusters(12);
    AffinityConfig cfg;
    cfg.gamma = 1.0;

    using Fn = PropagationResult (*)(const Matrix&, const std::vector<Severity>&,
                                     const AffinityConfig&);
    for (Fn fn : {static_cast<Fn>(&label_propagation),
                  static_cast<Fn>(&label_spreading)}) {
        PropagationResult r = fn(X, y, cfg);
        REQUIRE(r.labels.size() == 24);
        for (std::size_t i = 0; i < 12; ++i) {
            CHECK(r.labels[i] == Severity::mild_to_moderate);
            CHECK(r.labels[12 + i] == Severity::severe);
        }
        CHECK(r.converged);
        for (std::size_t i = 0; i < 24; ++i) {
            CHECK(r.distributions.at(i, 0) + r.distributions.at(i, 1) ==
                  doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("propagation clamps seeded rows exactly") {
    Rng rng = derive_stream(2, "prop_test");
    Matrix X = cluster_points(rng, 8, 0.0, 4.0);
    std::vector<Severity> y = seeds_two_clusters(8);
    AffinityConfig cfg;
    cfg.gamma = 0.3;
    PropagationResult r = label_propagation(X, y, cfg);
    CHECK(r.distributions.at(0, 0) == 1.0);
    CHECK(r.distributions.at(0, 1) == 0.0);
    CHECK(r.distributions.at(8, 0) == 0.0);
    CHECK(r.distributions.at(8, 1) == 1.0);
}

TEST_CASE("spreading matches the closed form on random graphs") {
    // F_iter converges to (1-alpha) * F_closed; after row normalization the
    // two must agree and share the argmax.
    Rng rng = derive_stream(3, "prop_test");
    int checked_rows = 0;
    for (int inst = 0; inst < 100; ++inst) {
        std::size_t n = 10 + static_cast<std::size_t>(rng.bounded(41)); // 10..50
        Matrix X(n, 3);
        for (double& v : X.data) v = rng.uniform(-2.0, 2.0);
        std::vector<Severity> y(n, Severity::unlabeled);
        y[0] = Severity::mild_to_moderate;
        y[1] = Severity::severe;
        for (std::size_t i = 2; i < n; ++i) {
            if (rng.bernoulli(0.2)) {
                y[i] = rng.bernoulli(0.5) ? Severity::severe
                                          : Severity::mild_to_moderate;
            }
        }
        double alphas[] = {0.1, 0.2, 0.5};
        double alpha = alphas[inst % 3];

        AffinityConfig cfg;
        cfg.gamma = 0.5;
        cfg.alpha = alpha;
        cfg.tol = 1e-12;
        cfg.max_iter = 100000;
        PropagationResult r = label_spreading(X, y, cfg);
        REQUIRE(r.converged);

        AffinityMatrix W = build_affinity(X, cfg);
        Matrix F = closed_form_spreading(W.dense, seed_matrix(y), alpha);
        for (std::size_t i = 0; i < n; ++i) {
            double sum = F.at(i, 0) + F.at(i, 1);
            REQUIRE(sum > 0.0);
            double p0 = F.at(i, 0) / sum;
            CAPTURE(inst);
            CAPTURE(i);
            CHECK(std::abs(p0 - r.distributions.at(i, 0)) < 1e-6);
            Severity want = p0 >= 0.5 ? Severity::mild_to_moderate : Severity::severe;
            if (std::abs(p0 - 0.5) > 1e-9) {
                CHECK(r.labels[i] == want);
                ++checked_rows;
            }
        }
    }
    CHECK(checked_rows > 1000);
}

TEST_CASE("isolated nodes keep the uniform prior and default to mild") {
    // Two far clusters plus one point so remote its rbf weights underflow
    // to zero, making it effectively isolated under knn? rbf exp never hits
    // exact zero, so use a knn graph where isolation is structural:
    // impossible (knn always links every node). Instead test the dense path
    // with an all-identical cluster and a v-far point whose weights do
    // underflow to exactly 0.
    Matrix X(5, 1);
    X.at(0, 0) = 0.0;
    X.at(1, 0) = 0.0;
    X.at(2, 0) = 1.0;
    X.at(3, 0) = 1.0;
    X.at(4, 0) = 1e6; // exp(-1e12) underflows to 0: zero degree
    std::vector<Severity> y = {Severity::mild_to_moderate, Severity::unlabeled,
                               Severity::severe, Severity::unlabeled,
                               Severity::unlabeled};
    AffinityConfig cfg;
    cfg.gamma = 1.0;
    PropagationResult r = label_propagation(X, y, cfg);
    CHECK(r.distributions.at(4, 0) == doctest::Approx(0.5));
    CHECK(r.distributions.at(4, 1) == doctest::Approx(0.5));
    CHECK(r.labels[4] == Severity::mild_to_moderate); // tie -> mild
    CHECK(r.labels[1] == Severity::mild_to_moderate);
    CHECK(r.labels[3] == Severity::severe);
}

TEST_CASE("fully labeled input is a fixed point of propagation") {
    Rng rng = derive_stream(4, "prop_test");
    Matrix X = cluster_points(rng, 6, 0.0, 3.0);
    std::vector<Severity> y(12);
    for (std::size_t i = 0; i < 12; ++i) {
        y[i] = i < 6 ? Severity::mild_to_moderate : Severity::severe;
    }
    AffinityConfig cfg;
    cfg.gamma = 0.5;
    PropagationResult r = label_propagation(X, y, cfg);
    CHECK(r.labels == y);
    CHECK(r.iterations <= 1);
    for (std::size_t i = 0; i < 12; ++i) {
        CHECK(r.distributions.at(i, i < 6 ? 0 : 1) == 1.0);
    }
}

TEST_CASE("permuting samples permutes the result") {
    Rng rng = derive_stream(5, "prop_test");
    std::size_t n = 20;
    Matrix X(n, 2);
    for (double& v : X.data) v = rng.uniform(-1.0, 1.0);
    std::vector<Severity> y(n, Severity::unlabeled);
    y[3] = Severity::mild_to_moderate;
    y[7] = Severity::severe;
    y[11] = Severity::severe;

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);

    Matrix Xp(n, 2);
    std::vector<Severity> yp(n);
    for (std::size_t i = 0; i < n; ++i) {
        Xp.at(i, 0) = X.at(perm[i], 0);
        Xp.at(i, 1) = X.at(perm[i], 1);
        yp[i] = y[perm[i]];
    }

    AffinityConfig cfg;
    cfg.gamma = 0.8;
    cfg.tol = 1e-10;
    PropagationResult a = label_propagation(X, y, cfg);
    PropagationResult b = label_propagation(Xp, yp, cfg);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(b.labels[i] == a.labels[perm[i]]);
        CHECK(b.distributions.at(i, 0) ==
              doctest::Approx(a.distributions.at(perm[i], 0)).epsilon(1e-7));
    }
}

TEST_CASE("alpha near zero pins spreading to the seeds") {
    Rng rng = derive_stream(6, "prop_test");
    Matrix X = cluster_points(rng, 5, 0.0, 2.0);
    std::vector<Severity> y(10, Severity::unlabeled);
    y[0] = Severity::mild_to_moderate;
    y[5] = Severity::severe;
    AffinityConfig cfg;
    cfg.gamma = 0.5;
    cfg.alpha = 1e-4;
    PropagationResult r = label_spreading(X, y, cfg);
    // Seeded rows stay essentially one-hot as alpha -> 0.
    CHECK(r.distributions.at(0, 0) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(r.distributions.at(5, 1) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("unseeded class is rejected") {
    Matrix X(4, 1);
    for (std::size_t i = 0; i < 4; ++i) X.at(i, 0) = static_cast<double>(i);
    std::vector<Severity> y = {Severity::mild_to_moderate, Severity::unlabeled,
                               Severity::unlabeled, Severity::unlabeled};
    AffinityConfig cfg;
    cfg.gamma = 1.0;
    CHECK_THROWS_WITH_AS(label_propagation(X, y, cfg), "class unseeded", DataError);
    CHECK_THROWS_WITH_AS(label_spreading(X, y, cfg), "class unseeded", DataError);
    std::vector<Severity> none(4, Severity::unlabeled);
    CHECK_THROWS_AS(label_propagation(X, none, cfg), DataError);
}

TEST_CASE("seed_matrix layout") {
    Matrix Y = seed_matrix({Severity::mild_to_moderate, Severity::severe,
                            Severity::unlabeled});
    REQUIRE(Y.rows == 3);
    REQUIRE(Y.cols == 2);
    CHECK(Y.at(0, 0) == 1.0);
    CHECK(Y.at(0, 1) == 0.0);
    CHECK(Y.at(1, 0) == 0.0);
    CHECK(Y.at(1, 1) == 1.0);
    CHECK(Y.at(2, 0) == 0.0);
    CHECK(Y.at(2, 1) == 0.0);
}

TEST_CASE("closed_form_spreading input limits") {
    Matrix W(201, 201);
    Matrix Y(201, 2);
    CHECK_THROWS_AS(closed_form_spreading(W, Y, 0.2), DataError);
}

TEST_CASE("closed form on a known 2-node system") {
    // W = [[0,1],[1,0]], S = W (unit degrees), alpha = 0.5,
    // (I - 0.5 S) F = Y with Y = [[1,0],[0,0]]:
    //   F0 - 0.5 F1 = Y0, F1 - 0.5 F0 = Y1 -> F0 = (4/3, 0), F1 = (2/3, 0).
    Matrix W(2, 2);
    W.at(0, 1) = 1.0;
    W.at(1, 0) = 1.0;
    Matrix Y(2, 2);
    Y.at(0, 0) = 1.0;
    Matrix F = closed_form_spreading(W, Y, 0.5);
    CHECK(F.at(0, 0) == doctest::Approx(4.0 / 3.0));
    CHECK(F.at(1, 0) == doctest::Approx(2.0 / 3.0));
    CHECK(F.at(0, 1) == doctest::Approx(0.0));
    CHECK(F.at(1, 1) == doctest::Approx(0.0));
}

} // TEST_SUITE
