#include "epnls/operator_kernels.hpp"

#include "epnls/diagonal.hpp"
#include "epnls/fft.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace epnls {

OperatorKernels::OperatorKernels(const Grid1D& g, double gamma) : grid_(g), gamma_(gamma) {}

Grid1D OperatorKernels::commensurate_grid(double k0, int refine, int n) {
    return Grid1D(n, 2.0 * std::numbers::pi * refine / std::abs(k0));
}

int OperatorKernels::index_of(double k) const {
    const double m = std::round(k / grid_.dk());
    const int n = grid_.n_points();
    if (std::abs(k - m * grid_.dk()) > 1e-9 * std::max(1.0, std::abs(k)))
        throw std::invalid_argument("operator kernels: wavenumber not on grid");
    if (std::abs(m) >= n / 2) throw std::invalid_argument("operator kernels: wavenumber beyond grid range");
    int i = static_cast<int>(m);
    return i >= 0 ? i : i + n;
}

OperatorKernels::Triple OperatorKernels::mode_field(const Mode& m) const {
    const int n = grid_.n_points();
    const int idx = index_of(m.k);
    Vec3c u{0.0, 0.0, 0.0};
    u[slot(m.component)] = 1.0;
    Vec3c w = s_apply(m.k, gamma_, u);
    Triple t{CField(n), CField(n), CField(n)};
    for (int i = 0; i < n; ++i) {
        // exact phase from the integer index
        const double ph = 2.0 * std::numbers::pi * static_cast<double>((static_cast<long>(idx) * i) % n) / n;
        const cplx e = std::polar(1.0, ph);
        t.rho[i] = w[0] * e;
        t.v[i] = w[1] * e;
        t.theta[i] = w[2] * e;
    }
    return t;
}

OperatorKernels::CField OperatorKernels::deriv(const CField& f) const {
    auto F = fft::cfft(f);
    for (int i = 0; i < grid_.n_points(); ++i) F[i] *= cplx(0.0, grid_.k_of_index(i));
    return fft::icfft(F);
}

OperatorKernels::CField OperatorKernels::lop(const CField& f) const {
    auto F = fft::cfft(f);
    for (int i = 0; i < grid_.n_points(); ++i) {
        const double k = grid_.k_of_index(i);
        F[i] /= (1.0 + k * k);
    }
    return fft::icfft(F);
}

namespace {
using CF = std::vector<cplx>;
CF mul(const CF& a, const CF& b) {
    CF o(a.size());
    for (size_t i = 0; i < a.size(); ++i) o[i] = a[i] * b[i];
    return o;
}
} // namespace

// quadratic part of the physical rhs, first argument undifferentiated
OperatorKernels::Triple OperatorKernels::quad(const Triple& a, const Triple& b) const {
    const int n = grid_.n_points();
    const double g1 = gamma_ - 1.0;
    CF rho = deriv(mul(a.rho, b.v));
    CF vbx = deriv(b.v), rbx = deriv(b.rho), tbx = deriv(b.theta);
    CF pot = deriv(lop(mul(lop(a.rho), lop(b.rho))));
    Triple o{CF(n), CF(n), CF(n)};
    for (int i = 0; i < n; ++i) {
        o.rho[i] = -rho[i];
        o.v[i] = -a.v[i] * vbx[i] + a.rho[i] * rbx[i] - a.theta[i] * rbx[i] + 0.5 * pot[i];
        o.theta[i] = -a.v[i] * tbx[i] - g1 * a.theta[i] * vbx[i];
    }
    return o;
}

// cubic part of the velocity equation
OperatorKernels::CField OperatorKernels::cubic_v(const Triple& a, const Triple& b, const Triple& c) const {
    const int n = grid_.n_points();
    CF fa = lop(a.rho), fb = lop(b.rho), fc = lop(c.rho);
    CF inner = lop(mul(fb, fc));
    CF phi3(n);
    for (int i = 0; i < n; ++i) phi3[i] = 0.5 * fa[i] * inner[i] - fa[i] * fb[i] * fc[i] / 6.0;
    CF phi3x = deriv(lop(phi3));
    CF rcx = deriv(c.rho);
    CF o(n);
    for (int i = 0; i < n; ++i) o[i] = -phi3x[i] - a.rho[i] * b.rho[i] * rcx[i] + a.theta[i] * b.rho[i] * rcx[i];
    return o;
}

cplx OperatorKernels::project(int j, double K, const Triple& f) const {
    const int idx = index_of(K);
    Vec3c w{fft::cfft(f.rho)[idx], fft::cfft(f.v)[idx], fft::cfft(f.theta)[idx]};
    return s_solve(K, gamma_, w)[slot(j)];
}

Mode OperatorKernels::q(int j, const Mode& a, const Mode& b) const {
    Triple ta = mode_field(a), tb = mode_field(b);
    Triple ab = quad(ta, tb), ba = quad(tb, ta);
    const int n = grid_.n_points();
    Triple s{CF(n), CF(n), CF(n)};
    for (int i = 0; i < n; ++i) {
        s.rho[i] = 0.5 * (ab.rho[i] + ba.rho[i]);
        s.v[i] = 0.5 * (ab.v[i] + ba.v[i]);
        s.theta[i] = 0.5 * (ab.theta[i] + ba.theta[i]);
    }
    const double K = a.k + b.k;
    return Mode{K, j, project(j, K, s) * a.amp * b.amp};
}

Mode OperatorKernels::n(int j, const Mode& a, const Mode& b, const Mode& c) const {
    std::array<Triple, 3> t{mode_field(a), mode_field(b), mode_field(c)};
    static const int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    const int n = grid_.n_points();
    Triple s{CF(n, 0.0), CF(n, 0.0), CF(n, 0.0)};
    for (const auto& pr : perm) {
        CF v = cubic_v(t[pr[0]], t[pr[1]], t[pr[2]]);
        for (int i = 0; i < n; ++i) s.v[i] += v[i] / 6.0;
    }
    const double K = a.k + b.k + c.k;
    return Mode{K, j, project(j, K, s) * a.amp * b.amp * c.amp};
}

} // namespace epnls
