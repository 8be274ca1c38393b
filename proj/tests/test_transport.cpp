#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "eld/transport.hpp"
#include "oracles.hpp"

using namespace eld;

TEST_CASE("Measure1D sorts its support") {
    Measure1D m({3.0, -1.0, 2.0});
    CHECK(m.values() == std::vector<double>{-1.0, 2.0, 3.0});
    CHECK(m.size() == 3);
    CHECK_THROWS_AS(Measure1D({}), BadParamsError);
}

TEST_CASE("measure_from_axis on the single edge graph") {
    Graph p2 = build_graph(2, std::vector<EdgeInput>{{0, 1, 1.0}});
    SpectralEmbedding emb = embed(p2, 2);

    Measure1D m0 = measure_from_axis(emb, 0);
    CHECK(m0.values()[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(m0.values()[1] == doctest::Approx(0.0).epsilon(1e-12));

    Measure1D m1 = measure_from_axis(emb, 1);
    const double s = std::sqrt(2.0);
    CHECK(m1.values()[0] == doctest::Approx(-s));
    CHECK(m1.values()[1] == doctest::Approx(s));

    CHECK_THROWS_AS(measure_from_axis(emb, 2), AxisOutOfRangeError);
    CHECK_THROWS_AS(measure_from_axis(emb, -1), AxisOutOfRangeError);
}

TEST_CASE("measure_from_axis scales by the eigenvalue") {
    Graph k3 = build_graph(3, std::vector<EdgeInput>{{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
    SpectralEmbedding emb = embed(k3, 3);
    Measure1D m = measure_from_axis(emb, 1);
    // lambda_1 = 3; the axis measure is 3 * (unit vector orthogonal to
    // the constant), so it sums to 0 and has norm 3
    double sum = 0.0, norm2 = 0.0;
    for (double v : m.values()) {
        sum += v;
        norm2 += v * v;
    }
    CHECK(sum == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(std::sqrt(norm2) == doctest::Approx(3.0));
    CHECK(std::is_sorted(m.values().begin(), m.values().end()));
}

TEST_CASE("orientation canonicalization is reflection invariant") {
    // an asymmetric support and its mirror map to the same measure
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = 1 + static_cast<std::size_t>(rng() % 9);
        std::vector<double> vals(m);
        for (auto& v : vals) v = U(rng);
        // feed both orientations through embeddings-like plumbing by
        // constructing one-axis embeddings directly
        std::vector<double> plus = vals, minus(m);
        for (std::size_t i = 0; i < m; ++i) minus[i] = -vals[i];
        double norm = 0.0;
        for (double v : plus) norm += v * v;
        norm = std::sqrt(norm);
        if (norm == 0.0) continue;
        for (auto& v : plus) v /= norm;
        for (auto& v : minus) v /= norm;
        auto e1 = SpectralEmbedding::from_parts(m, 1, {1.0}, plus);
        auto e2 = SpectralEmbedding::from_parts(m, 1, {1.0}, minus);
        const auto a = measure_from_axis(e1, 0).values();
        const auto b = measure_from_axis(e2, 0).values();
        for (std::size_t i = 0; i < m; ++i)
            CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("wasserstein examples") {
    CHECK(wasserstein_1d(Measure1D({0.0, 1.0}), Measure1D({0.0, 1.0}), 1.0) == 0.0);
    CHECK(wasserstein_1d(Measure1D({0.0, 1.0}), Measure1D({0.5}), 1.0) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(wasserstein_1d(Measure1D({0.0, 2.0}), Measure1D({1.0, 3.0}), 1.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(wasserstein_1d(Measure1D({0.0}), Measure1D({1.0}), 2.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(wasserstein_1d(Measure1D({0.0}), Measure1D({1.0}), 0.5), InvalidOrderError);
}

TEST_CASE("wasserstein against the greedy coupling oracle") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> U(-5.0, 5.0);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t ma = 1 + rng() % 6;
        const std::size_t mb = 1 + rng() % 6;
        std::vector<double> a(ma), b(mb);
        for (auto& v : a) v = U(rng);
        for (auto& v : b) v = U(rng);
        for (double p : {1.0, 2.0}) {
            const double got = wasserstein_1d(Measure1D(a), Measure1D(b), p);
            const double want = oracle::transport(a, b, p);
            CHECK(got == doctest::Approx(want).epsilon(1e-9));
        }
    }
}

TEST_CASE("metric properties on random measures") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    auto random_measure = [&] {
        std::vector<double> v(1 + rng() % 20);
        for (auto& x : v) x = U(rng);
        return Measure1D(std::move(v));
    };
    for (int trial = 0; trial < 1000; ++trial) {
        const Measure1D a = random_measure();
        const Measure1D b = random_measure();
        const Measure1D c = random_measure();
        for (double p : {1.0, 2.0}) {
            const double ab = wasserstein_1d(a, b, p);
            const double ba = wasserstein_1d(b, a, p);
            CHECK(ab == ba);  // exact symmetry
            CHECK(wasserstein_1d(a, a, p) == 0.0);
            const double bc = wasserstein_1d(b, c, p);
            const double ac = wasserstein_1d(a, c, p);
            CHECK(ab + bc >= ac - 1e-12);
        }
    }
}

TEST_CASE("translation and scaling behavior") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> a(2 + rng() % 8), b(2 + rng() % 8);
        for (auto& v : a) v = U(rng);
        for (auto& v : b) v = U(rng);
        const double t = U(rng);
        const double cscale = U(rng);
        for (double p : {1.0, 2.0}) {
            const double base = wasserstein_1d(Measure1D(a), Measure1D(b), p);
            std::vector<double> at(a), bt(b);
            for (auto& v : at) v += t;
            for (auto& v : bt) v += t;
            CHECK(wasserstein_1d(Measure1D(at), Measure1D(bt), p) ==
                  doctest::Approx(base).epsilon(1e-12));
            std::vector<double> as(a), bs(b);
            for (auto& v : as) v *= cscale;
            for (auto& v : bs) v *= cscale;
            CHECK(wasserstein_1d(Measure1D(as), Measure1D(bs), p) ==
                  doctest::Approx(std::abs(cscale) * base).epsilon(1e-12));
        }
    }
}

TEST_CASE("unequal support sizes integrate exactly") {
    // quantiles: a jumps at 1/3, 2/3; b jumps at 1/2 -> segments
    // [0,1/3],[1/3,1/2],[1/2,2/3],[2/3,1]
    Measure1D a({0.0, 3.0, 6.0});
    Measure1D b({1.0, 5.0});
    const double want = (1.0 / 3) * 1.0 + (1.0 / 6) * 2.0 + (1.0 / 6) * 2.0 + (1.0 / 3) * 1.0;
    CHECK(wasserstein_1d(a, b, 1.0) == doctest::Approx(want).epsilon(1e-12));
    CHECK(wasserstein_1d(a, b, 1.0) == doctest::Approx(oracle::transport(
                                           {0.0, 3.0, 6.0}, {1.0, 5.0}, 1.0)));
}
