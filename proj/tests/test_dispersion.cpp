#include "epnls/dispersion.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

using namespace epnls;

TEST_SUITE("dispersion") {

TEST_CASE("qhat and omega values") {
    DispersionParams p(3.0);
    CHECK(qhat(0.0, p) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(qhat(1.0, p) == doctest::Approx(1.8708287).epsilon(1e-7));
    CHECK(std::abs(qhat(1e6, p) - std::sqrt(3.0)) <= 1e-12);
    CHECK(omega(0.0, p) == 0.0);
    CHECK(omega(1.0, p) == doctest::Approx(1.8708287).epsilon(1e-7));
    CHECK(omega(2.0, p) == doctest::Approx(3.5777088).epsilon(1e-7));
    CHECK_THROWS_AS(DispersionParams(1.0), std::invalid_argument);
}

TEST_CASE("group velocity") {
    DispersionParams p(3.0);
    CHECK(group_velocity(0.0, p) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(group_velocity(1.0, p) == doctest::Approx(std::sqrt(3.5) - 1.0 / (4.0 * std::sqrt(3.5))).epsilon(1e-12));
    CHECK(std::abs(group_velocity(1e6, p) - std::sqrt(3.0)) <= 1e-10);
    for (double g : {1.1, 5.0 / 3.0, 3.0, 5.0}) {
        DispersionParams pg(g);
        for (double k : {-3.0, -0.4, 0.0, 0.7, 1.0, 2.5}) {
            const double h = 1e-5;
            const double fd = (omega(k + h, pg) - omega(k - h, pg)) / (2.0 * h);
            CHECK(std::abs(group_velocity(k, pg) - fd) <= 1e-8);
        }
    }
}

TEST_CASE("second derivative") {
    DispersionParams p(3.0);
    CHECK(omega_second(0.0, p) == doctest::Approx(0.0));
    const double h = 1e-4;
    const double v = omega_second(1.0, p);
    CHECK(std::abs(v - (omega(1.0 + h, p) - 2.0 * omega(1.0, p) + omega(1.0 - h, p)) / (h * h)) <= 1e-6);
    CHECK(omega_second(-1.0, p) == doctest::Approx(-v).epsilon(1e-15));
    for (double k : {0.3, 2.0, 4.0}) {
        const double fd = (group_velocity(k + 1e-5, p) - group_velocity(k - 1e-5, p)) / 2e-5;
        CHECK(std::abs(omega_second(k, p) - fd) <= 1e-8);
    }
}

TEST_CASE("symmetry, monotonicity, asymptotics") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ud(-50.0, 50.0);
    DispersionParams p(3.0);
    for (int i = 0; i < 1000; ++i) {
        const double k = ud(rng);
        CHECK(omega(-k, p) == -omega(k, p));
        CHECK(qhat(-k, p) == qhat(k, p));
    }
    for (double k = 0.01; k < 20.0; k += 0.01) CHECK(qhat(k + 0.01, p) < qhat(k, p));
    for (double g = 1.1; g <= 5.0 + 1e-12; g += 0.1) {
        DispersionParams pg(g);
        for (double k = 10.0; k <= 1e4; k *= 1.5) {
            CHECK(std::abs(qhat(k, pg) - std::sqrt(g)) * k * k <= 1.0);
            CHECK(std::abs(omega(k, pg) - std::sqrt(g) * k) * k <= 1.0);
        }
    }
}

TEST_CASE("resonance denominators") {
    DispersionParams p(3.0);
    for (double ell : {0.3, 1.0, 2.7}) CHECK(std::abs(resonance_denominator(0, 1, 2.0 * ell, ell, p)) <= 1e-15);
    CHECK(std::abs(resonance_denominator(-1, 0, 1.0, 0.0, p)) <= 1e-15);
    CHECK(resonance_denominator(1, -1, 0.5, 2.0, p) ==
          doctest::Approx(-omega(0.5, p) - omega(-1.5, p) - omega(2.0, p)).epsilon(1e-15));
}

TEST_CASE("nonresonance report") {
    auto r = nonresonance_report(1.0, DispersionParams(3.0));
    CHECK(r.passed);
    CHECK(r.value("-2w0+w(2k0)") == doctest::Approx(-0.1639486).epsilon(1e-7));
    CHECK(r.value("cg-w'(0)") == doctest::Approx(-0.2628019).epsilon(1e-6));
    CHECK(r.value("omega0") == doctest::Approx(1.8708287).epsilon(1e-7));
    CHECK(r.value("-5w0-w(5k0)") < 0.0);
    CHECK(r.margins.size() == 12);
    CHECK_THROWS_AS(r.value("nonsense"), std::out_of_range);
    CHECK_THROWS_AS(nonresonance_report(0.0, DispersionParams(3.0)), std::invalid_argument);
    const std::string csv = r.to_csv();
    CHECK(csv.rfind("name,value,ok\n", 0) == 0);
}

}
