#include "epnls/nls.hpp"

#include "epnls/config.hpp"
#include "epnls/diagonal.hpp"
#include "epnls/dispersion.hpp"
#include "epnls/fft.hpp"
#include "epnls/operator_kernels.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <stdexcept>

namespace epnls {

namespace {
const cplx I(0.0, 1.0);
const int kComponents[3] = {0, 1, -1};
} // namespace

KernelProvider symbol_kernels(double gamma) {
    DispersionParams p(gamma);
    KernelProvider kp;
    kp.q = [p](int j, const Mode& a, const Mode& b) { return q_bilinear_out(j, a, b, p).amp; };
    kp.n = [p](int j, const Mode& a, const Mode& b, const Mode& c) { return n_cubic_out(j, a, b, c, p).amp; };
    return kp;
}

KernelProvider grid_operator_kernels(double gamma, double k0) {
    auto ops = std::make_shared<OperatorKernels>(OperatorKernels::commensurate_grid(k0, kMeanFlowRefine, 1024), gamma);
    KernelProvider kp;
    kp.q = [ops](int j, const Mode& a, const Mode& b) { return ops->q(j, a, b).amp; };
    kp.n = [ops](int j, const Mode& a, const Mode& b, const Mode& c) { return ops->n(j, a, b, c).amp; };
    return kp;
}

NlsCoefficients assemble_coefficients(double gamma, double k0) { return assemble_coefficients(gamma, k0, symbol_kernels(gamma)); }

NlsCoefficients assemble_coefficients(double gamma, double k0, const KernelProvider& kp) {
    DispersionParams p(gamma);
    auto report = nonresonance_report(k0, p);
    if (!report.passed) throw std::runtime_error("assemble_coefficients: resonance margin below threshold\n" + report.to_text());

    NlsCoefficients c;
    c.gamma = gamma;
    c.k0 = k0;
    c.omega0 = omega(k0, p);
    c.cg = group_velocity(k0, p);
    c.mu1 = 0.5 * omega_second(k0, p);
    const double w2 = omega(2.0 * k0, p);
    const double c0 = group_velocity(0.0, p);

    // E^2: (-2 w0 - l w(2k0)) A2l = gamma2l A^2, gamma2l = -i K_l(k0, k0)
    std::array<double, 3> g2{};
    for (int l : kComponents) {
        const cplx K = kp.q(l, Mode{k0, -1, 1.0}, Mode{k0, -1, 1.0});
        const cplx gam = -I * K;
        g2[slot(l)] = gam.real();
        c.a2_of_a1sq[slot(l)] = gam / (-2.0 * c.omega0 - l * w2);
    }
    c.gamma20 = g2[0];
    c.gamma2p = g2[1];
    c.gamma2m = g2[2];

    // E^0: gamma0l = -2i dK_l/dk at (k0, -k0); -cg A0l = l w'(0) A0l + gamma0l |A|^2
    const double h = k0 / kMeanFlowRefine;
    const double st[3] = {45.0, -9.0, 1.0};
    for (int l : kComponents) {
        const cplx k00 = kp.q(l, Mode{k0, -1, 1.0}, Mode{-k0, -1, 1.0});
        if (std::abs(k00) > 1e-12) throw std::runtime_error("assemble_coefficients: carrier self-interaction at k=0 does not vanish");
        cplx d1 = 0.0, d2 = 0.0;
        for (int m = 1; m <= 3; ++m) {
            d1 += st[m - 1] * (kp.q(l, Mode{k0 + m * h, -1, 1.0}, Mode{-k0, -1, 1.0}) -
                               kp.q(l, Mode{k0 - m * h, -1, 1.0}, Mode{-k0, -1, 1.0}));
            d2 += st[m - 1] * (kp.q(l, Mode{k0, -1, 1.0}, Mode{-k0 + m * h, -1, 1.0}) -
                               kp.q(l, Mode{k0, -1, 1.0}, Mode{-k0 - m * h, -1, 1.0}));
        }
        d1 /= 60.0 * h;
        d2 /= 60.0 * h;
        if (std::abs(d1 - d2) > 1e-8 * (std::abs(d1) + 1e-14))
            throw std::runtime_error("assemble_coefficients: mean-flow derivatives disagree");
        const cplx gam = -2.0 * I * 0.5 * (d1 + d2);
        if (std::abs(gam.imag()) > 1e-10 * (1.0 + std::abs(gam))) throw std::runtime_error("assemble_coefficients: gamma0 not real");
        c.gamma0[slot(l)] = gam.real();
        c.a0_of_a1sq[slot(l)] = -gam.real() / (c.cg + l * c0);
    }

    // E^1 at eps^3, component -1
    cplx C = 0.0;
    for (int l : kComponents) {
        C += 2.0 * kp.q(-1, Mode{k0, -1, 1.0}, Mode{0.0, l, 1.0}) * c.a0_of_a1sq[slot(l)];
        C += 2.0 * kp.q(-1, Mode{-k0, -1, 1.0}, Mode{2.0 * k0, l, 1.0}) * c.a2_of_a1sq[slot(l)];
    }
    C += 3.0 * kp.n(-1, Mode{k0, -1, 1.0}, Mode{k0, -1, 1.0}, Mode{-k0, -1, 1.0});
    const cplx nu = C / I;
    c.mu2 = nu.real();
    c.nu2_imag = nu.imag();
    if (std::abs(c.nu2_imag) > 1e-10) throw std::runtime_error("assemble_coefficients: cubic coefficient is not real");
    return c;
}

double gamma2_closed_form(int j, double gamma, double k0) {
    DispersionParams p(gamma);
    const double q1 = qhat(k0, p), q2 = qhat(2.0 * k0, p);
    if (j == 0) return -2.0 * k0 * q1 / (9.0 * q2 * q2);
    if (j != 1 && j != -1) throw std::invalid_argument("gamma2_closed_form: j in {0, 1, -1}");
    const double a = 1.0 + k0 * k0;
    return k0 * q1 / (9.0 * q2 * q2) + j * k0 * q1 * q1 / (2.0 * q2) - k0 * q1 * q1 * q1 / (q2 * q2) -
           j * k0 / (6.0 * q1) - j * k0 / (2.0 * q2 * (1.0 + 4.0 * k0 * k0) * a * a);
}

std::string NlsCoefficients::to_text() const {
    std::string s;
    char buf[200];
    auto line = [&](const char* k, double v) {
        std::snprintf(buf, sizeof buf, "%s = %.15e\n", k, v);
        s += buf;
    };
    line("gamma", gamma);
    line("k0", k0);
    line("omega0", omega0);
    line("cg", cg);
    line("mu1", mu1);
    line("mu2", mu2);
    line("nu2_imag", nu2_imag);
    line("gamma20", gamma20);
    line("gamma2p", gamma2p);
    line("gamma2m", gamma2m);
    const char* names[3] = {"0", "p", "m"};
    for (int i = 0; i < 3; ++i) {
        std::snprintf(buf, sizeof buf, "a2_%s_re = %.15e\na2_%s_im = %.15e\n", names[i], a2_of_a1sq[i].real(), names[i],
                      a2_of_a1sq[i].imag());
        s += buf;
    }
    for (int i = 0; i < 3; ++i) {
        std::snprintf(buf, sizeof buf, "a0_%s = %.15e\ngamma0_%s = %.15e\n", names[i], a0_of_a1sq[i], names[i], gamma0[i]);
        s += buf;
    }
    return s;
}

void NlsCoefficients::write(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os << to_text();
}

NlsCoefficients NlsCoefficients::read(const std::string& path) {
    auto kv = read_kv_file(path);
    NlsCoefficients c;
    c.gamma = kv_double(kv, "gamma");
    c.k0 = kv_double(kv, "k0");
    c.omega0 = kv_double(kv, "omega0");
    c.cg = kv_double(kv, "cg");
    c.mu1 = kv_double(kv, "mu1");
    c.mu2 = kv_double(kv, "mu2");
    c.nu2_imag = kv_double(kv, "nu2_imag", 0.0);
    c.gamma20 = kv_double(kv, "gamma20");
    c.gamma2p = kv_double(kv, "gamma2p");
    c.gamma2m = kv_double(kv, "gamma2m");
    const char* names[3] = {"0", "p", "m"};
    for (int i = 0; i < 3; ++i) {
        std::string n = names[i];
        c.a2_of_a1sq[i] = cplx(kv_double(kv, "a2_" + n + "_re"), kv_double(kv, "a2_" + n + "_im"));
        c.a0_of_a1sq[i] = kv_double(kv, "a0_" + n);
        c.gamma0[i] = kv_double(kv, "gamma0_" + n);
    }
    return c;
}

Envelope gaussian_envelope(const Grid1D& g, double amplitude, double width, double center) {
    Envelope e;
    e.grid = g;
    e.a.resize(g.n_points());
    for (int i = 0; i < g.n_points(); ++i) {
        // nearest periodic image
        double d = g.x(i) - center;
        d -= g.length() * std::round(d / g.length());
        e.a[i] = amplitude * std::exp(-d * d / (width * width));
    }
    return e;
}

Envelope split_step(const Envelope& e, double dT, const NlsCoefficients& c) {
    if (!(dT > 0.0)) throw std::invalid_argument("split_step: dT must be positive");
    const int n = e.grid.n_points();
    Envelope o = e;
    auto half_nonlinear = [&](std::vector<cplx>& a) {
        for (auto& z : a) z *= std::polar(1.0, c.mu2 * std::norm(z) * 0.5 * dT);
    };
    half_nonlinear(o.a);
    auto A = fft::cfft(o.a);
    for (int i = 0; i < n; ++i) {
        const double K = e.grid.k_of_index(i);
        A[i] *= std::polar(1.0, -c.mu1 * K * K * dT);
    }
    o.a = fft::icfft(A);
    half_nonlinear(o.a);
    o.slow_time = e.slow_time + dT;
    return o;
}

NlsInvariants nls_invariants(const Envelope& e, const NlsCoefficients& c) {
    const int n = e.grid.n_points();
    const double dX = e.grid.dx();
    double mass = 0.0, quart = 0.0, grad = 0.0;
    for (const auto& z : e.a) {
        mass += std::norm(z);
        quart += std::norm(z) * std::norm(z);
    }
    auto A = fft::cfft(e.a);
    for (int i = 0; i < n; ++i) {
        const double K = e.grid.k_of_index(i);
        grad += K * K * std::norm(A[i]);
    }
    return {mass * dX, c.mu1 * grad * e.grid.length() - 0.5 * c.mu2 * quart * dX};
}

} // namespace epnls
