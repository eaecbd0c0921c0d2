#include "epnls/diagonal.hpp"
#include "epnls/dispersion.hpp"
#include "epnls/nls.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <cstdio>
#include <filesystem>
#include <numbers>

using namespace epnls;

namespace {

const double pi = std::numbers::pi;

double max_diff(const Envelope& a, const Envelope& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.a.size(); ++i) m = std::max(m, std::abs(a.a[i] - b.a[i]));
    return m;
}

Envelope evolve(Envelope e, double T, double dT, const NlsCoefficients& c) {
    const int n = static_cast<int>(std::lround(T / dT));
    for (int i = 0; i < n; ++i) e = split_step(e, dT, c);
    return e;
}

} // namespace

TEST_SUITE("nls") {

TEST_CASE("coefficients at gamma = 3, k0 = 1") {
    const auto c = assemble_coefficients(3.0, 1.0);
    const DispersionParams p(3.0);
    CHECK(c.omega0 == doctest::Approx(1.8708287).epsilon(1e-7));
    CHECK(c.cg == doctest::Approx(1.7371981).epsilon(1e-7));
    CHECK(std::abs(c.mu1 - omega_second(1.0, p) / 2.0) <= 1e-12);
    CHECK(c.mu2 == doctest::Approx(-30.7413194).epsilon(1e-7));
    CHECK(std::abs(c.nu2_imag) <= 1e-10);
    CHECK(c.gamma20 == doctest::Approx(1.169268).epsilon(1e-6));
    CHECK(c.gamma2p == doctest::Approx(-1.211650).epsilon(1e-6));
    CHECK(c.gamma2m == doctest::Approx(-3.699275).epsilon(1e-6));
    CHECK(c.a0_of_a1sq[0] == doctest::Approx(-0.5).epsilon(1e-9));
}

TEST_CASE("second-harmonic amplitudes solve their defining equations") {
    for (double gamma : {5.0 / 3.0, 3.0}) {
        const auto c = assemble_coefficients(gamma, 1.0);
        const DispersionParams p(gamma);
        const double w0 = c.omega0, w2 = omega(2.0 * c.k0, p);
        const double g2[3] = {c.gamma20, c.gamma2p, c.gamma2m};
        for (int l : {0, 1, -1}) {
            const cplx lhs = (-2.0 * w0 - l * w2) * c.a2_of_a1sq[slot(l)];
            CHECK(std::abs(lhs - g2[slot(l)]) <= 1e-12 * std::max(1.0, std::abs(g2[slot(l)])));
        }
        for (int l : {0, 1, -1}) {
            const double den = c.cg + l * group_velocity(0.0, p);
            CHECK(std::abs(c.a0_of_a1sq[slot(l)] * den + c.gamma0[slot(l)]) <= 1e-12 * std::max(1.0, std::abs(c.gamma0[slot(l)])));
        }
    }
}

TEST_CASE("closed form of the U0 coupling at gamma = 5/3") {
    const auto c = assemble_coefficients(5.0 / 3.0, 1.0);
    CHECK(c.gamma20 == doctest::Approx(gamma2_closed_form(0, 5.0 / 3.0, 1.0)).epsilon(1e-12));
    CHECK(gamma2_closed_form(0, 3.0, 1.0) == doctest::Approx(-0.1299187).epsilon(1e-6));
}

TEST_CASE("cubic coefficient is real and path independent") {
    for (double gamma : {1.5, 5.0 / 3.0, 3.0})
        for (double k0 : {0.5, 1.0, 2.0}) {
            const auto c = assemble_coefficients(gamma, k0);
            CHECK(std::abs(c.nu2_imag) <= 1e-10);
        }
    for (double gamma : {5.0 / 3.0, 3.0}) {
        const auto a = assemble_coefficients(gamma, 1.0);
        const auto b = assemble_coefficients(gamma, 1.0, grid_operator_kernels(gamma, 1.0));
        CHECK(std::abs(a.mu2 - b.mu2) <= 1e-8 * std::abs(a.mu2));
    }
}

TEST_CASE("coefficient file round trip") {
    const auto c = assemble_coefficients(3.0, 1.0);
    const auto path = (std::filesystem::temp_directory_path() / "epnls_coeffs_test.toml").string();
    c.write(path);
    const auto r = NlsCoefficients::read(path);
    std::filesystem::remove(path);
    CHECK(r.mu2 == doctest::Approx(c.mu2).epsilon(1e-14));
    CHECK(std::abs(r.a2_of_a1sq[2] - c.a2_of_a1sq[2]) <= 1e-12 * std::abs(c.a2_of_a1sq[2]));
    CHECK(r.a0_of_a1sq[1] == doctest::Approx(c.a0_of_a1sq[1]).epsilon(1e-14));
}

TEST_CASE("split step: zero, plane wave, mass") {
    const auto c = assemble_coefficients(3.0, 1.0);
    Grid1D g(64, 2.0 * pi * 4.0);
    Envelope z{g, std::vector<cplx>(64, 0.0), 0.0};
    auto z1 = split_step(z, 1e-3, c);
    for (const auto& v : z1.a) CHECK(std::abs(v) == 0.0);
    CHECK_THROWS_AS(split_step(z, 0.0, c), std::invalid_argument);

    const double a = 0.3, kappa = 2.0 * pi * 3.0 / g.length();
    Envelope e{g, {}, 0.0};
    for (int i = 0; i < 64; ++i) e.a.push_back(a * std::polar(1.0, kappa * g.x(i)));
    auto end = evolve(e, 1.0, 1e-3, c);
    const double phase = -(c.mu1 * kappa * kappa - c.mu2 * a * a);
    double err = 0.0;
    for (int i = 0; i < 64; ++i) err = std::max(err, std::abs(end.a[i] - a * std::polar(1.0, kappa * g.x(i) + phase)));
    CHECK(err <= 1e-8);

    Envelope ga = gaussian_envelope(Grid1D(256, 40.0), 1.0, 2.0, 20.0);
    for (int i = 0; i < 20; ++i) {
        const double m0 = nls_invariants(ga, c).mass;
        ga = split_step(ga, 1e-3, c);
        CHECK(std::abs(nls_invariants(ga, c).mass - m0) <= 1e-12 * m0);
    }
}

TEST_CASE("split step: second order") {
    const auto c = assemble_coefficients(3.0, 1.0);
    Envelope e = gaussian_envelope(Grid1D(256, 40.0), 0.5, 2.0, 20.0);
    const auto ref = evolve(e, 0.2, 0.01 / 64, c);
    const double e1 = max_diff(evolve(e, 0.2, 0.01, c), ref);
    const double e2 = max_diff(evolve(e, 0.2, 0.005, c), ref);
    CHECK(e1 / e2 >= 3.5);
    CHECK(e1 / e2 <= 4.5);
}

TEST_CASE("invariants") {
    const auto c = assemble_coefficients(3.0, 1.0);
    Grid1D g(128, 30.0);
    const auto z = nls_invariants(Envelope{g, std::vector<cplx>(128, 0.0), 0.0}, c);
    CHECK(z.mass == 0.0);
    CHECK(z.hamiltonian == 0.0);
    const auto w = nls_invariants(Envelope{g, std::vector<cplx>(128, 1.0), 0.0}, c);
    CHECK(w.mass == doctest::Approx(30.0).epsilon(1e-14));
    CHECK(w.hamiltonian == doctest::Approx(-c.mu2 * 30.0 / 2.0).epsilon(1e-14));
    // desk-scale amplitude: splitting error in the Hamiltonian stays below 1e-10
    Envelope e = gaussian_envelope(Grid1D(256, 40.0), 0.05, 2.0, 20.0);
    const auto i0 = nls_invariants(e, c);
    e = evolve(e, 1.0, 1e-3, c);
    const auto i1 = nls_invariants(e, c);
    CHECK(std::abs(i1.hamiltonian - i0.hamiltonian) <= 1e-10 * std::abs(i0.hamiltonian));
    CHECK(std::abs(i1.mass - i0.mass) <= 1e-10 * i0.mass);
}

}
