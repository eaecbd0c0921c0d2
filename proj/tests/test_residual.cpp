#include "epnls/dispersion.hpp"
#include "epnls/residual.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>

using namespace epnls;

namespace {

const double pi = std::numbers::pi;

AnsatzConfig packet(double eps, int n, double amp, AnsatzOrder order) {
    const NlsCoefficients c = assemble_coefficients(3.0, 1.0);
    const Grid1D fg = fast_grid(eps, 1.0, n);
    const Grid1D sg = slow_grid(fg, eps);
    return AnsatzConfig{eps, c, gaussian_envelope(sg, amp, 2.0, 0.5 * sg.length()), order, 0.4, fg};
}

double max_abs(const SpectralField& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

} // namespace

TEST_SUITE("residual") {

TEST_CASE("zero envelope has zero residual") {
    AnsatzConfig cfg = packet(0.1, 512, 0.0, AnsatzOrder::extended);
    const DiagState r = compute_residual(cfg, 0.0);
    CHECK(diag_norm(r, 2.0) <= 1e-14);
}

TEST_CASE("linear residual of a single sideband") {
    const double eps = 0.1, a = 0.05;
    AnsatzConfig cfg = packet(eps, 512, a, AnsatzOrder::leading);
    cfg.coeffs.mu2 = 0.0;
    const Grid1D& sg = cfg.envelope.grid;
    const int m = 3;
    const double kappa = m * sg.dk();
    for (int i = 0; i < sg.n_points(); ++i) cfg.envelope.a[i] = a * std::polar(1.0, kappa * sg.x(i));
    const DiagState r = compute_residual(cfg, 0.0, ResidualOptions{true});

    const DispersionParams p(3.0);
    const double k = 1.0 + eps * kappa;
    const double defect = omega(k, p) - cfg.coeffs.omega0 - cfg.coeffs.cg * eps * kappa - cfg.coeffs.mu1 * eps * eps * kappa * kappa;
    const cplx expect = cplx(0.0, -defect) * eps * a;
    const auto h = r.um1.half_spectrum();
    const int idx = static_cast<int>(std::lround(k / cfg.grid.dk()));
    CHECK(std::abs(h[idx] - expect) <= 1e-8 * std::abs(expect));
    CHECK(std::abs(expect) > 0.0);
    double rest = 0.0;
    for (int i = 0; i < static_cast<int>(h.size()); ++i)
        if (i != idx) rest = std::max(rest, std::abs(h[i]));
    CHECK(rest <= 1e-15);
    CHECK(max_abs(r.u0) <= 1e-15);
    CHECK(max_abs(r.u1) <= 1e-15);
}

TEST_CASE("time derivative matches a centered difference") {
    const double eps = 0.1, h = 1e-5;
    for (auto order : {AnsatzOrder::leading, AnsatzOrder::extended}) {
        AnsatzConfig c0 = packet(eps, 1024, 0.05, order);
        AnsatzConfig c1 = c0, c2 = c0;
        c1.envelope = advance_envelope(c0.envelope, eps * eps * h, c0.coeffs, 1.0);
        c2.envelope = advance_envelope(c0.envelope, eps * eps * 2.0 * h, c0.coeffs, 1.0);
        const DiagState lo = build_diag(c0, 0.0);
        const DiagState hi = build_diag(c2, 2.0 * h);
        const DiagState dt = build_diag_dt(c1, h);
        double m = 0.0;
        for (int l : {0, 1, -1})
            for (size_t i = 0; i < lo.component(l).values.size(); ++i) {
                const double fd = (hi.component(l).values[i] - lo.component(l).values[i]) / (2.0 * h);
                m = std::max(m, std::abs(fd - dt.component(l).values[i]));
            }
        CHECK(m <= 1e-7);
    }
}

TEST_CASE("linear tendency acts as l i w(k)") {
    const Grid1D g(64, 2.0 * pi * 4);
    DiagState d = DiagState::zero(g, 3.0);
    d.u1 = SpectralField::from_function(g, [](double x) { return std::cos(0.5 * x); });
    const DiagState t = linear_diag_tendency(d);
    const double w = omega(0.5, DispersionParams(3.0));
    double m = 0.0;
    for (int i = 0; i < 64; ++i) m = std::max(m, std::abs(t.u1.values[i] + w * std::sin(0.5 * g.x(i))));
    CHECK(m <= 1e-13);
    CHECK(max_abs(t.u0) == 0.0);
}

TEST_CASE("loglog slope") {
    double rms = 1.0;
    CHECK(loglog_slope({1.0, 2.0, 4.0}, {3.0, 12.0, 48.0}, &rms) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(rms <= 1e-13);
    CHECK_THROWS_AS(loglog_slope({1.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(loglog_slope({1.0, 2.0}, {1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("advance envelope") {
    AnsatzConfig cfg = packet(0.1, 256, 0.05, AnsatzOrder::leading);
    const Envelope e = advance_envelope(cfg.envelope, 0.01, cfg.coeffs, 1e-3);
    CHECK(e.slow_time == doctest::Approx(0.01));
    CHECK_THROWS_AS(advance_envelope(e, 0.0, cfg.coeffs, 1e-3), std::invalid_argument);
}

TEST_CASE("scaling preconditions") {
    ResidualTemplate tpl;
    CHECK_THROWS_AS(residual_scaling({0.1, 0.05}, tpl), std::invalid_argument);
    CHECK_THROWS_AS(residual_scaling({0.1, 0.09, 0.05}, tpl), std::invalid_argument);
}

TEST_CASE("residual orders") {
    const ResidualScaling s = residual_scaling({0.12, 0.08, 0.053}, ResidualTemplate{});
    CHECK(s.order_extended >= 2.2);
    CHECK(s.order_extended - s.order_leading >= 0.8);
    CHECK(s.order_leading >= 1.3);
    CHECK(s.power_law_ok);
    for (size_t i = 0; i < s.leading.size(); ++i)
        for (size_t j = 0; j < s.leading[i].l2_norms.size(); ++j)
            CHECK(s.extended[i].l2_norms[j] < s.leading[i].l2_norms[j]);
}

}
