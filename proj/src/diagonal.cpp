#include "epnls/diagonal.hpp"

#include "epnls/dispersion.hpp"
#include "epnls/fft.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace epnls {

DiagState DiagState::zero(const Grid1D& g, double gamma) {
    DiagState d;
    d.u0 = SpectralField(g);
    d.u1 = SpectralField(g);
    d.um1 = SpectralField(g);
    d.gamma = gamma;
    return d;
}

SpectralField& DiagState::component(int c) { return c == 0 ? u0 : (c == 1 ? u1 : um1); }
const SpectralField& DiagState::component(int c) const { return c == 0 ? u0 : (c == 1 ? u1 : um1); }

Mat3 s_matrix(double k, double gamma) {
    const double q = qhat(k, DispersionParams(gamma));
    const double g1 = gamma - 1.0;
    return {{{1.0, 1.0, 1.0}, {0.0, -q, q}, {g1 - q * q, g1, g1}}};
}

double det_s(double k, double gamma) {
    Mat3 a = s_matrix(k, gamma);
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

Vec3c s_apply(double k, double gamma, const Vec3c& u) {
    Mat3 a = s_matrix(k, gamma);
    Vec3c w{};
    for (int r = 0; r < 3; ++r) w[r] = a[r][0] * u[0] + a[r][1] * u[1] + a[r][2] * u[2];
    return w;
}

// Gaussian elimination with partial pivoting.
Vec3c s_solve(double k, double gamma, const Vec3c& w) {
    Mat3 a = s_matrix(k, gamma);
    Vec3c b = w;
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int r = c + 1; r < 3; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        if (std::abs(a[piv][c]) < 1e-300) throw std::runtime_error("s_solve: singular matrix");
        std::swap(a[c], a[piv]);
        std::swap(b[c], b[piv]);
        for (int r = c + 1; r < 3; ++r) {
            double f = a[r][c] / a[c][c];
            for (int cc = c; cc < 3; ++cc) a[r][cc] -= f * a[c][cc];
            b[r] -= f * b[c];
        }
    }
    Vec3c x{};
    for (int r = 2; r >= 0; --r) {
        cplx s = b[r];
        for (int cc = r + 1; cc < 3; ++cc) s -= a[r][cc] * x[cc];
        x[r] = s / a[r][r];
    }
    return x;
}

namespace {

template <class F>
std::array<std::vector<double>, 3> map_modes(const Grid1D& g, const std::vector<double>& a, const std::vector<double>& b,
                                             const std::vector<double>& c, F f) {
    const int n = g.n_points();
    auto A = fft::rfft(a), B = fft::rfft(b), C = fft::rfft(c);
    for (int m = 0; m <= n / 2; ++m) {
        Vec3c in{A[m], B[m], C[m]};
        Vec3c out = f(g.dk() * m, in);
        A[m] = out[0];
        B[m] = out[1];
        C[m] = out[2];
    }
    return {fft::irfft(A, n), fft::irfft(B, n), fft::irfft(C, n)};
}

} // namespace

PlasmaState from_diagonal(const DiagState& d) {
    const Grid1D& g = d.grid();
    const double gamma = d.gamma;
    auto r = map_modes(g, d.u0.values, d.u1.values, d.um1.values,
                       [gamma](double k, const Vec3c& u) { return s_apply(k, gamma, u); });
    PlasmaState s;
    s.rho = SpectralField(g, std::move(r[0]));
    s.v = SpectralField(g, std::move(r[1]));
    s.theta = SpectralField(g, std::move(r[2]));
    s.gamma = gamma;
    s.time = d.time;
    return s;
}

DiagState to_diagonal(const PlasmaState& s) {
    const Grid1D& g = s.grid();
    const double gamma = s.gamma;
    auto r = map_modes(g, s.rho.values, s.v.values, s.theta.values,
                       [gamma](double k, const Vec3c& w) { return s_solve(k, gamma, w); });
    DiagState d;
    d.u0 = SpectralField(g, std::move(r[0]));
    d.u1 = SpectralField(g, std::move(r[1]));
    d.um1 = SpectralField(g, std::move(r[2]));
    d.gamma = gamma;
    d.time = s.time;
    return d;
}

} // namespace epnls
