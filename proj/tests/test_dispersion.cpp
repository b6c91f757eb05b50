#include <doctest.h>

#include "bft/dispersion.hpp"
#include "bft/errors.hpp"

#include <cmath>
#include <fstream>

using namespace bft;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_SUITE("dispersion") {

TEST_CASE("lattice cosine velocity") {
    auto d = make_lattice_cosine(1.0);
    CHECK(d->velocity(kPi / 2) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(d->velocity(0.0) == doctest::Approx(0.0));
    CHECK(d->energy(0.0) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(d->require_in_domain(4.0), DomainError);
}

TEST_CASE("quadratic velocity is the identity map") {
    auto d = make_continuum_quadratic(1.0, 8.0);
    CHECK(d->velocity(0.7) == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(d->velocity(0.0) == 0.0);
}

TEST_CASE("velocity crossings on the lattice") {
    auto d = make_lattice_cosine(1.0);
    auto roots = velocity_crossings(*d, 0.5);
    REQUIRE(roots.size() == 4);
    // |sin k| = 1/2 at +-pi/6 and +-(pi - pi/6)
    CHECK(roots[0] == doctest::Approx(-kPi + kPi / 6).epsilon(1e-10));
    CHECK(roots[1] == doctest::Approx(-kPi / 6).epsilon(1e-10));
    CHECK(roots[2] == doctest::Approx(kPi / 6).epsilon(1e-10));
    CHECK(roots[3] == doctest::Approx(kPi - kPi / 6).epsilon(1e-10));
    for (double r : roots) CHECK(std::abs(std::abs(std::sin(r)) - 0.5) < 1e-10);
}

TEST_CASE("crossing level above the max speed") {
    auto d = make_lattice_cosine(1.0);
    CHECK(velocity_crossings(*d, 2.0).empty());
    CHECK_THROWS_AS(velocity_crossings(*d, -0.1), DomainError);
}

TEST_CASE("quadratic crossings") {
    auto d = make_continuum_quadratic(1.0, 8.0);
    auto roots = velocity_crossings(*d, 0.3);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == doctest::Approx(-0.3).epsilon(1e-11));
    CHECK(roots[1] == doctest::Approx(0.3).epsilon(1e-11));
}

TEST_CASE("stationary points") {
    auto lat = make_lattice_cosine(1.0);
    auto s1 = stationary_points(*lat);
    REQUIRE(s1.size() == 2);
    CHECK(s1[0] == doctest::Approx(-kPi));
    CHECK(s1[1] == doctest::Approx(0.0));

    auto qd = make_continuum_quadratic(1.0, 6.0);
    auto s2 = stationary_points(*qd);
    REQUIRE(s2.size() == 1);
    CHECK(s2[0] == doctest::Approx(0.0));
}

TEST_CASE("velocity oddness on a grid") {
    for (auto d : {make_lattice_cosine(0.7), make_continuum_quadratic(2.0, 5.0)}) {
        for (int i = 0; i <= 100; ++i) {
            double th = -3.0 + 6.0 * i / 100;
            if (!d->domain().contains(th) || !d->domain().contains(-th)) continue;
            CHECK(std::abs(d->velocity(th) + d->velocity(-th)) < 1e-12);
        }
    }
}

TEST_CASE("crossing roots bracket a sign change of |v| - level") {
    auto d = make_lattice_cosine(1.0);
    for (double level : {0.2, 0.5, 0.9}) {
        for (double r : velocity_crossings(*d, level)) {
            double h = 1e-6;
            double a = std::abs(d->velocity(r - h)) - level;
            double b = std::abs(d->velocity(r + h)) - level;
            CHECK(a * b <= 0.0);
        }
    }
}

TEST_CASE("tabulated family tracks its source and rejects asymmetry") {
    std::vector<double> th, en;
    for (int i = 0; i <= 400; ++i) {
        double t = -3.0 + 6.0 * i / 400;
        th.push_back(t);
        en.push_back(0.5 * t * t);
    }
    auto d = make_tabulated(th, en);
    CHECK(d->energy(0.7) == doctest::Approx(0.245).epsilon(1e-8));
    CHECK(d->velocity(0.7) == doctest::Approx(0.7).epsilon(1e-6));
    auto s = stationary_points(*d);
    REQUIRE(s.size() == 1);
    CHECK(s[0] == doctest::Approx(0.0).epsilon(1e-8));

    std::vector<double> bad = en;
    for (size_t i = 0; i < bad.size(); ++i) bad[i] += 0.3 * th[i]; // odd part
    CHECK_THROWS_AS(make_tabulated(th, bad), DomainError);
}

TEST_CASE("tabulated csv round trip") {
    const char* path = "disp_test_table.csv";
    {
        std::ofstream f(path);
        f << "# theta,E\n";
        for (int i = 0; i <= 200; ++i) {
            double t = -2.0 + 4.0 * i / 200;
            f << t << "," << -std::cos(t) << "\n";
        }
    }
    auto d = make_tabulated_from_csv(path);
    // natural-spline boundary layer limits the attainable accuracy
    CHECK(d->energy(0.5) == doctest::Approx(-std::cos(0.5)).epsilon(1e-6));
    CHECK(d->velocity(0.5) == doctest::Approx(std::sin(0.5)).epsilon(1e-4));
    std::remove(path);
}

} // TEST_SUITE
