#include "epnls/ansatz.hpp"

#include "epnls/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace epnls {

namespace {

const cplx I(0.0, 1.0);
using CF = std::vector<cplx>;

struct EnvelopeFields {
    CF b, s2, m;     // cut shifted A, cut A^2, cut |A|^2
    CF db, ds2, dm;  // their time derivatives
};

int carrier_index(const AnsatzConfig& cfg) {
    const double p = cfg.coeffs.k0 / cfg.grid.dk();
    const double r = std::round(p);
    if (std::abs(p - r) > 1e-9 * std::max(1.0, p)) throw std::invalid_argument("ansatz: carrier is not grid-exact");
    return static_cast<int>(r);
}

void validate(const AnsatzConfig& cfg, double t) {
    if (!(cfg.eps > 0.0 && cfg.eps <= 0.3)) throw std::invalid_argument("ansatz: eps must lie in (0, 0.3]");
    if (cfg.envelope.grid.n_points() != cfg.grid.n_points())
        throw std::invalid_argument("ansatz: envelope and fast grid need the same point count");
    if (std::abs(cfg.envelope.grid.length() - cfg.eps * cfg.grid.length()) > 1e-9 * cfg.envelope.grid.length())
        throw std::invalid_argument("ansatz: slow grid length must be eps * L");
    if (std::abs(cfg.envelope.slow_time - cfg.eps * cfg.eps * t) > 1e-12)
        throw std::invalid_argument("ansatz: envelope is not at slow time eps^2 t");
    const double k0 = std::abs(cfg.coeffs.k0);
    if (!(cfg.cutoff_delta > 0.0) || cfg.cutoff_delta >= 0.5 * k0)
        throw std::invalid_argument("ansatz: cutoff bands overlap");
}

// shift by cg t in fast x and cut to |k| <= delta, both as Fourier multipliers
CF shift_cut(const Grid1D& g, const CF& a, double shift, double delta) {
    CF A = fft::cfft(a);
    for (int i = 0; i < g.n_points(); ++i) {
        const double k = g.k_of_index(i);
        A[i] = std::abs(k) <= delta ? A[i] * std::polar(1.0, -k * shift) : 0.0;
    }
    return fft::icfft(A);
}

CF cut(const Grid1D& g, const CF& a, double delta) { return shift_cut(g, a, 0.0, delta); }

CF ddx(const Grid1D& g, const CF& a) {
    CF A = fft::cfft(a);
    for (int i = 0; i < g.n_points(); ++i) A[i] *= cplx(0.0, g.k_of_index(i));
    return fft::icfft(A);
}

EnvelopeFields envelope_fields(const AnsatzConfig& cfg, double t, bool want_dt) {
    const Grid1D& g = cfg.grid;
    const int n = g.n_points();
    const double shift = cfg.coeffs.cg * t;
    EnvelopeFields f;
    f.b = shift_cut(g, cfg.envelope.a, shift, cfg.cutoff_delta);
    CF sq(n), ab(n);
    for (int i = 0; i < n; ++i) {
        sq[i] = f.b[i] * f.b[i];
        ab[i] = std::norm(f.b[i]);
    }
    f.s2 = cut(g, sq, cfg.cutoff_delta);
    f.m = cut(g, ab, cfg.cutoff_delta);
    if (!want_dt) return f;

    // slow tendency i mu1 A_XX + i mu2 A|A|^2 on the slow grid
    const Grid1D& sg = cfg.envelope.grid;
    const auto& a = cfg.envelope.a;
    CF A = fft::cfft(a);
    for (int i = 0; i < n; ++i) {
        const double K = sg.k_of_index(i);
        A[i] *= -K * K;
    }
    CF axx = fft::icfft(A);
    CF at(n);
    for (int i = 0; i < n; ++i) at[i] = I * cfg.coeffs.mu1 * axx[i] + I * cfg.coeffs.mu2 * a[i] * std::norm(a[i]);
    CF at_fast = shift_cut(g, at, shift, cfg.cutoff_delta);
    CF bx = ddx(g, f.b);
    const double e2 = cfg.eps * cfg.eps;
    f.db.resize(n);
    for (int i = 0; i < n; ++i) f.db[i] = -cfg.coeffs.cg * bx[i] + e2 * at_fast[i];
    for (int i = 0; i < n; ++i) {
        sq[i] = 2.0 * f.b[i] * f.db[i];
        ab[i] = 2.0 * std::real(std::conj(f.b[i]) * f.db[i]);
    }
    f.ds2 = cut(g, sq, cfg.cutoff_delta);
    f.dm = cut(g, ab, cfg.cutoff_delta);
    return f;
}

DiagState assemble(const AnsatzConfig& cfg, double t, bool derivative) {
    validate(cfg, t);
    const Grid1D& g = cfg.grid;
    const int n = g.n_points();
    const int p = carrier_index(cfg);
    const double eps = cfg.eps, e2 = eps * eps;
    const double w0 = cfg.coeffs.omega0;
    const bool ext = cfg.order == AnsatzOrder::extended;
    EnvelopeFields f = envelope_fields(cfg, t, derivative);

    DiagState d = DiagState::zero(g, cfg.coeffs.gamma);
    d.time = t;
    const double wt = std::fmod(w0 * t, 2.0 * std::numbers::pi);
    for (int i = 0; i < n; ++i) {
        const double ph = 2.0 * std::numbers::pi * static_cast<double>((static_cast<long long>(p) * i) % n) / n - wt;
        const cplx E = std::polar(1.0, ph);
        const cplx E2 = E * E;
        for (int l : {0, 1, -1}) {
            const int s = slot(l);
            cplx z = 0.0;
            double mean = 0.0;
            if (!derivative) {
                if (l == -1) z += eps * f.b[i] * E;
                if (ext) {
                    z += e2 * cfg.coeffs.a2_of_a1sq[s] * f.s2[i] * E2;
                    mean = e2 * cfg.coeffs.a0_of_a1sq[s] * f.m[i].real();
                }
            } else {
                if (l == -1) z += eps * (f.db[i] - I * w0 * f.b[i]) * E;
                if (ext) {
                    z += e2 * cfg.coeffs.a2_of_a1sq[s] * (f.ds2[i] - 2.0 * I * w0 * f.s2[i]) * E2;
                    mean = e2 * cfg.coeffs.a0_of_a1sq[s] * f.dm[i].real();
                }
            }
            d.component(l).values[i] = 2.0 * z.real() + mean;
        }
    }
    return d;
}

} // namespace

Grid1D fast_grid(double eps, double k0, int n_points, double factor) {
    if (!(eps > 0.0) || k0 == 0.0) throw std::invalid_argument("fast_grid: need eps > 0 and k0 != 0");
    const double wl = 2.0 * std::numbers::pi / std::abs(k0);
    const double p = std::ceil(factor / eps / wl - 1e-12);
    return Grid1D(n_points, p * wl);
}

Grid1D slow_grid(const Grid1D& fast, double eps) { return Grid1D(fast.n_points(), eps * fast.length()); }

DiagState build_diag(const AnsatzConfig& cfg, double t) { return assemble(cfg, t, false); }
DiagState build_diag_dt(const AnsatzConfig& cfg, double t) { return assemble(cfg, t, true); }

PlasmaState build(const AnsatzConfig& cfg, double t) { return from_diagonal(build_diag(cfg, t)); }

SpectralField fourier_cutoff(const SpectralField& f, const std::vector<double>& centers, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("fourier_cutoff: delta must be positive");
    for (size_t a = 0; a < centers.size(); ++a)
        for (size_t b = a + 1; b < centers.size(); ++b)
            if (std::abs(centers[a] - centers[b]) <= 2.0 * delta) throw std::invalid_argument("fourier_cutoff: bands overlap");
    auto h = f.half_spectrum();
    for (size_t m = 0; m < h.size(); ++m) {
        const double k = f.grid.dk() * m;
        bool keep = false;
        // real field: keep k if k or -k lies in a band
        for (double c : centers) keep = keep || std::abs(k - c) <= delta || std::abs(-k - c) <= delta;
        if (!keep) h[m] = 0.0;
    }
    return SpectralField::from_half_spectrum(f.grid, h);
}

double cutoff_tail_fraction(const Envelope& e, double eps, double delta) {
    auto A = fft::cfft(e.a);
    double total = 0.0, tail = 0.0;
    for (int i = 0; i < e.grid.n_points(); ++i) {
        const double w = std::norm(A[i]);
        total += w;
        if (std::abs(e.grid.k_of_index(i)) > delta / eps) tail += w;
    }
    return total > 0.0 ? tail / total : 0.0;
}

} // namespace epnls
