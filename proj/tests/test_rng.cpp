#include "doctest.h"

#include "copd/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

using namespace copd;

TEST_SUITE("rng") {

TEST_CASE("splitmix64 matches the published reference sequence") {
    // Reference output of Vigna's splitmix64.c for seed 1234567.
    std::uint64_t state = 1234567;
    CHECK(splitmix64_step(state) == 6457827717110365317ull);
    CHECK(splitmix64_step(state) == 3203168211198807973ull);
    CHECK(splitmix64_step(state) == 9817491932198370423ull);
    CHECK(splitmix64_step(state) == 4593380528125082431ull);
    CHECK(splitmix64_step(state) == 16408922859458223821ull);
}

TEST_CASE("fnv1a64 known digests") {
    CHECK(fnv1a64("") == 14695981039346656037ull);
    CHECK(fnv1a64("hello") == 11831194018420276491ull);
    CHECK(fnv1a64("hello") != fnv1a64("Hello"));
}

TEST_CASE("xoshiro256** stream for seed 42, frozen oracle values") {
    Rng rng(42);
    CHECK(rng.next_u64() == 1546998764402558742ull);
    CHECK(rng.next_u64() == 6990951692964543102ull);
    CHECK(rng.next_u64() == 12544586762248559009ull);
    CHECK(rng.next_u64() == 17057574109182124193ull);
    CHECK(rng.next_u64() == 18295552978065317476ull);
}

TEST_CASE("next_double is the top 53 bits scaled into [0,1)") {
    Rng rng(42);
    CHECK(rng.next_double() == doctest::Approx(0.08386297105988216).epsilon(1e-15));
    CHECK(rng.next_double() == doctest::Approx(0.3789802506626686).epsilon(1e-15));
    CHECK(rng.next_double() == doctest::Approx(0.6800434110281394).epsilon(1e-15));
    for (int i = 0; i < 1000; ++i) {
        double d = rng.next_double();
        CHECK(d >= 0.0);
        CHECK(d < 1.0);
    }
}

TEST_CASE("bounded uses multiply-shift reduction") {
    Rng rng(7);
    std::vector<std::uint64_t> got;
    for (int i = 0; i < 6; ++i) got.push_back(rng.bounded(6));
    CHECK(got == std::vector<std::uint64_t>{4, 1, 5, 5, 5, 5});
    for (int i = 0; i < 1000; ++i) CHECK(rng.bounded(13) < 13);
    CHECK(Rng(1).bounded(1) == 0);
}

TEST_CASE("uniform maps into the requested interval") {
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        double v = rng.uniform(-2.5, 4.0);
        CHECK(v >= -2.5);
        CHECK(v < 4.0);
    }
}

TEST_CASE("normal consumes exactly two doubles per call") {
    Rng a(11), b(11);
    (void)a.normal();
    (void)b.next_double();
    (void)b.next_double();
    CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("normal sample moments are plausible") {
    Rng rng(5);
    const int n = 20000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        double v = rng.normal();
        sum += v;
        sq += v * v;
    }
    double mean = sum / n;
    double var = sq / n - mean * mean;
    CHECK(std::abs(mean) < 0.03);
    CHECK(var == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("bernoulli respects the probability") {
    Rng rng(9);
    int hits = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) hits += rng.bernoulli(0.3);
    CHECK(static_cast<double>(hits) / n == doctest::Approx(0.3).epsilon(0.05));
    Rng r2(9);
    for (int i = 0; i < 100; ++i) CHECK_FALSE(r2.bernoulli(0.0));
}

TEST_CASE("shuffle is a permutation and is seed-deterministic") {
    std::vector<int> v(50);
    std::iota(v.begin(), v.end(), 0);
    std::vector<int> w = v;
    Rng a(21), b(21);
    a.shuffle(v);
    b.shuffle(w);
    CHECK(v == w);
    std::vector<int> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expect(50);
    std::iota(expect.begin(), expect.end(), 0);
    CHECK(sorted == expect);
    CHECK(v != expect); // 50 elements staying put would be a broken shuffle
}

TEST_CASE("derive_stream matches frozen oracle and separates labels") {
    Rng d = derive_stream(42, "rf_tree", 3);
    CHECK(d.next_u64() == 3684819018980806392ull);
    CHECK(d.next_u64() == 15586590424026008847ull);
    CHECK(d.next_u64() == 13887251931570601360ull);

    CHECK(derive_stream(99, "stratified_kfold").next_u64() ==
          17062671928515938250ull);

    // Default index is 0.
    CHECK(derive_stream(42, "rf_tree", 0).next_u64() ==
          derive_stream(42, "rf_tree").next_u64());

    // Distinct labels, indices, and seeds give distinct streams.
    std::set<std::uint64_t> firsts;
    firsts.insert(derive_stream(42, "rf_tree", 0).next_u64());
    firsts.insert(derive_stream(42, "rf_tree", 1).next_u64());
    firsts.insert(derive_stream(42, "synth_mix", 0).next_u64());
    firsts.insert(derive_stream(43, "rf_tree", 0).next_u64());
    CHECK(firsts.size() == 4);
}

} // TEST_SUITE
