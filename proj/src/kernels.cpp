#include "epnls/kernels.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace epnls {

namespace {

const cplx I(0.0, 1.0);

struct ModeCoef {
    double u0, d, sum, p;  // [U0], [U1]-[U-1], U0+U1+U-1, (g-2-q^2)U0 + (g-2)(U1+U-1)
};

ModeCoef coef(const Mode& m, double gamma, double q) {
    ModeCoef c{};
    c.u0 = m.component == 0 ? 1.0 : 0.0;
    c.d = m.component == 1 ? 1.0 : (m.component == -1 ? -1.0 : 0.0);
    c.sum = 1.0;
    c.p = m.component == 0 ? (gamma - 2.0 - q * q) : (gamma - 2.0);
    return c;
}

void check_component(int c) {
    if (c != 0 && c != 1 && c != -1) throw std::invalid_argument("mode component must be 0, 1 or -1");
}

} // namespace

cplx q_kernel(int j, const Mode& a, const Mode& b, const DispersionParams& p) {
    check_component(j);
    check_component(a.component);
    check_component(b.component);
    const double g = p.gamma;
    const double qa = qhat(a.k, p), qb = qhat(b.k, p);
    const double K = a.k + b.k;
    const double qK = qhat(K, p);
    const ModeCoef A = coef(a, g, qa), B = coef(b, g, qb);
    const cplx ikb = I * b.k;
    const cplx qDa = qa * A.d, qDb = qb * B.d;
    const cplx t1 = qDa * ikb * (qb * qb * B.u0);   // q(U1-U-1) d_x q^2 U0
    const cplx t4 = A.p * ikb * qDb;                // P d_x q(U1-U-1)
    if (j == 0) return t1 / (qK * qK) - (g - 1.0) / (qK * qK) * t4;
    const cplx t2 = qDa * ikb * B.sum;
    const cplx t3 = A.sum * ikb * qDb;
    const cplx t5 = I * K * qDa * qDb;
    const cplx t6 = A.p * ikb * B.sum;
    const cplx t7 = I * K / (1.0 + K * K) * (A.sum / (1.0 + a.k * a.k)) * (B.sum / (1.0 + b.k * b.k));
    const double jj = j;
    return -t1 / (2.0 * qK * qK) + 0.5 * t2 + 0.5 * t3 + (g - 1.0) / (2.0 * qK * qK) * t4 + jj / (4.0 * qK) * t5 +
           jj / (2.0 * qK) * t6 - jj / (4.0 * qK) * t7;
}

cplx n_kernel(int j, const Mode& a, const Mode& b, const Mode& c, const DispersionParams& p) {
    check_component(a.component);
    check_component(b.component);
    check_component(c.component);
    if (j != 1 && j != -1) throw std::invalid_argument("n_kernel: j must be +1 or -1");
    const double g = p.gamma;
    const double K = a.k + b.k + c.k;
    auto L = [](double k) { return 1.0 / (1.0 + k * k); };
    auto theta = [&](const Mode& m) {
        double q = qhat(m.k, p);
        return m.component == 0 ? (g - 1.0 - q * q) : (g - 1.0);
    };
    const double fa = L(a.k), fb = L(b.k), fc = L(c.k);
    // third-order potential: L[ phi1_a L(phi1_b phi1_c)/2 - phi1_a phi1_b phi1_c / 6 ]
    const double phi3 = L(K) * (0.5 * fa * L(b.k + c.k) * fb * fc - fa * fb * fc / 6.0);
    const cplx ikc = I * c.k;
    const cplx h3 = -I * K * phi3 - ikc + theta(a) * ikc;
    return -static_cast<double>(j) / (2.0 * qhat(K, p)) * h3;
}

Mode q_bilinear_out(int j, const Mode& a, const Mode& b, const DispersionParams& p) {
    Mode ua{a.k, a.component, 1.0}, ub{b.k, b.component, 1.0};
    cplx kern = 0.5 * (q_kernel(j, ua, ub, p) + q_kernel(j, ub, ua, p));
    return Mode{a.k + b.k, j, kern * a.amp * b.amp};
}

Mode n_cubic_out(int j, const Mode& a, const Mode& b, const Mode& c, const DispersionParams& p) {
    std::array<Mode, 3> m{Mode{a.k, a.component, 1.0}, Mode{b.k, b.component, 1.0}, Mode{c.k, c.component, 1.0}};
    static const int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    cplx s = 0.0;
    for (const auto& pr : perm) s += n_kernel(j, m[pr[0]], m[pr[1]], m[pr[2]], p);
    return Mode{a.k + b.k + c.k, j, s / 6.0 * a.amp * b.amp * c.amp};
}

std::vector<cplx> b11_terms(int j, int l, int n, double k, double ell, const DispersionParams& p) {
    check_component(j);
    check_component(n);
    if (l != 1 && l != -1) throw std::invalid_argument("b11: l must be +1 or -1");
    const double g = p.gamma;
    const double km = k - ell;
    const double qk = qhat(k, p), qm = qhat(km, p), ql = qhat(ell, p);
    const double qk2 = qk * qk, ql2 = ql * ql;
    const double jj = j, nn = n;
    if (j == 0 && n == 0)
        return {-I * ell * qm * ql2 / qk2, (g - 1.0) * I * km * qm * (g - 2.0 - ql2) / qk2};
    if (j == 0)
        return {-nn * (g - 1.0) * (g - 2.0) * I * ell * ql / qk2, (g - 1.0) * (g - 2.0) * I * km * qm / qk2};
    const double lw = (1.0 + k * k) * (1.0 + km * km) * (1.0 + ell * ell);
    if (n == 0)
        return {I * ell * qm * ql2 / (2.0 * qk2),
                -I * k * qm / 2.0,
                -(g - 1.0) * I * km * qm * (g - 2.0 - ql2) / (2.0 * qk2),
                jj * (g - 2.0) * I * ell / (2.0 * qk),
                jj * I * km * (g - 2.0 - ql2) / (2.0 * qk),
                -jj * I * k / (2.0 * qk * lw)};
    return {-I * k * qm / 2.0,
            nn * I * k * ql / 2.0,
            nn * (g - 1.0) * (g - 2.0) * I * ell * ql / (2.0 * qk2),
            -jj * nn * I * k * qm * ql / (2.0 * qk),
            jj * (g - 2.0) * I * k / (2.0 * qk),
            -(g - 1.0) * (g - 2.0) * I * km * qm / (2.0 * qk2),
            -jj * I * k / (2.0 * qk * lw)};
}

cplx b11_kernel(int j, int l, int n, double k, double ell, const DispersionParams& p) {
    cplx s = 0.0;
    for (const cplx& t : b11_terms(j, l, n, k, ell, p)) s += t;
    return s;
}

double theta_weight(double k, const WeightParams& w) {
    const double a = std::abs(k);
    if (a > w.delta) return 1.0;
    return w.eps + (1.0 - w.eps) * a / w.delta;
}

int projection(Band which, double k, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("projection: delta must be positive");
    const int low = std::abs(k) <= delta ? 1 : 0;
    return which == Band::low ? low : 1 - low;
}

namespace {

struct Frac {
    cplx num;
    double den;
};

Frac kernel_parts(KernelKind kind, int j, int l, int n, double k, double ell, const WeightParams& w,
                  const DispersionParams& p) {
    const cplx b = b11_kernel(j, l, n, k, ell, p);
    const double den = resonance_denominator(j, n, k, ell, p);
    switch (kind) {
    case KernelKind::k01:
        return {I * static_cast<double>(projection(Band::low, k, w.delta)) * b * theta_weight(ell, w),
                den * theta_weight(k, w)};
    case KernelKind::k10:
        return {I * static_cast<double>(projection(Band::high, k, w.delta)) * b * (theta_weight(ell, w) - w.eps),
                den * theta_weight(k, w)};
    case KernelKind::k11:
        return {I * static_cast<double>(projection(Band::high, k, w.delta)) * b, den};
    }
    return {0.0, 1.0};
}

} // namespace

cplx normalform_kernel(KernelKind kind, int j, int l, int n, double k, double ell, const WeightParams& w,
                       const DispersionParams& p) {
    Frac f = kernel_parts(kind, j, l, n, k, ell, w, p);
    if (std::abs(f.den) >= kResonanceDenTol) return f.num / f.den;
    if (std::abs(f.num) >= kResonanceNumTol)
        throw NontrivialResonance("nontrivial resonance: denominator vanishes but numerator does not");
    // cancelled resonance: symmetric offset limit. k10 keeps the carrier input pinned.
    const double h = kResonanceOffset;
    const double dl = kind == KernelKind::k10 ? h : 0.0;
    Frac plus = kernel_parts(kind, j, l, n, k + h, ell + dl, w, p);
    Frac minus = kernel_parts(kind, j, l, n, k - h, ell - dl, w, p);
    return 0.5 * (plus.num / plus.den + minus.num / minus.den);
}

} // namespace epnls
