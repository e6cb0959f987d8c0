#include "doctest.h"
#include "test_util.hpp"
#include "vs/network.hpp"

using namespace vs;
using Act = TwoLayerNetwork::Activation;

TEST_CASE("single mode is reconstructed exactly by one cosine unit") {
    TrigPolynomial f = embed_sine_to_trig(sine_mode({1}));
    TwoLayerNetwork net = extract(f, 1, 0);
    CHECK(mse(net, f, 256) < 1e-20);
    CHECK(weight_budget(net) <= 2.0 * barron_norm(f) + 1e-12);
}

TEST_CASE("weight budget holds for every extraction") {
    std::mt19937 rng(13);
    for (int rep = 0; rep < 10; ++rep) {
        int d = 1 + int(rng() % 2);
        TrigPolynomial f = vstest::random_trig(d, 4, rng);
        const double C = barron_norm(f);
        for (int k : {1, 7, 32})
            CHECK(weight_budget(extract(f, k, rep * 100 + k)) <= 2.0 * C + 1e-12);
    }
}

TEST_CASE("zero-weight network scores the reference's squared norm") {
    TrigPolynomial f = embed_sine_to_trig(sine_mode({2}));
    TwoLayerNetwork net;
    net.k = 3;
    net.activation = Act::cosine;
    for (int i = 0; i < 3; ++i) net.units.push_back({Eigen::VectorXd::Zero(1), 0.0, 0.0});
    // ||sin(2 pi x)||^2 = 1/2
    CHECK(mse(net, f, 512) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("seeded determinism") {
    std::mt19937 rng(19);
    TrigPolynomial f = vstest::random_trig(2, 5, rng);
    TwoLayerNetwork a = extract(f, 64, 777);
    TwoLayerNetwork b = extract(f, 64, 777);
    REQUIRE(a.units.size() == b.units.size());
    for (size_t i = 0; i < a.units.size(); ++i) {
        CHECK(a.units[i].b == b.units[i].b);
        CHECK(a.units[i].c == b.units[i].c);
        CHECK((a.units[i].a - b.units[i].a).norm() == 0.0);
    }
}

TEST_CASE("monte-carlo error scales like 1/k") {
    std::mt19937 rng(29);
    TrigPolynomial f = vstest::random_trig(1, 6, rng);
    f.coeff.erase(MultiIndex{0});  // zero-mean
    const double C = barron_norm(f);
    std::vector<int> ks{16, 64, 256};
    std::vector<double> med;
    for (int k : ks) {
        std::vector<double> errs;
        for (int seed = 0; seed < 20; ++seed) errs.push_back(mse(extract(f, k, seed), f, 512));
        std::sort(errs.begin(), errs.end());
        med.push_back(errs[errs.size() / 2]);
        CHECK(med.back() * k <= 4.0 * C * C);
    }
    CHECK(med[0] >= med[1]);
    CHECK(med[1] >= med[2]);
}

TEST_CASE("zero function is rejected") {
    TrigPolynomial zero(1, true);
    CHECK_THROWS_AS(extract(zero, 4, 0), std::invalid_argument);
}

TEST_CASE("sigmoidal modes document their stencil error") {
    TrigPolynomial f = embed_sine_to_trig(sine_mode({1}));
    for (Act act : {Act::sigmoid, Act::reluSigmoidal}) {
        TwoLayerNetwork net = extract(f, 8, 3, act);
        CHECK(net.units.size() == 8u * 8u);
        CHECK(net.stencilSupError > 0.0);
        // the compiled network approximates the exact cosine one
        double err = mse(net, f, 128);
        CHECK(std::sqrt(err) <= 8.0 * net.stencilSupError + 1e-9);
    }
}
