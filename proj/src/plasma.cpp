#include "epnls/plasma.hpp"

#include "epnls/fft.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

namespace epnls {

namespace {

using Half = std::vector<cplx>;

double l2(const std::vector<double>& f, double dx) {
    double s = 0.0;
    for (double v : f) s += v * v;
    return std::sqrt(s * dx);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// spectral -d_xx + diag(w)
void apply_jacobian(const Grid1D& g, const std::vector<double>& w, const std::vector<double>& x,
                    std::vector<double>& out) {
    const int n = g.n_points();
    Half h = fft::rfft(x);
    for (int m = 0; m <= n / 2; ++m) {
        double k = g.dk() * m;
        h[m] *= k * k;
    }
    fft::irfft(h.data(), out.data(), n);
    for (int i = 0; i < n; ++i) out[i] += w[i] * x[i];
}

void apply_preconditioner(const Grid1D& g, double c, const std::vector<double>& r, std::vector<double>& out) {
    const int n = g.n_points();
    Half h = fft::rfft(r);
    for (int m = 0; m <= n / 2; ++m) {
        double k = g.dk() * m;
        h[m] /= (c + k * k);
    }
    fft::irfft(h.data(), out.data(), n);
}

void poisson_residual(const Grid1D& g, const std::vector<double>& phi, const std::vector<double>& rho,
                      std::vector<double>& F, std::vector<double>& eph) {
    const int n = g.n_points();
    Half h = fft::rfft(phi);
    for (int m = 0; m <= n / 2; ++m) {
        double k = g.dk() * m;
        h[m] *= k * k;
    }
    fft::irfft(h.data(), F.data(), n);
    for (int i = 0; i < n; ++i) {
        eph[i] = std::exp(phi[i]);
        F[i] += eph[i] - 1.0 - rho[i];
    }
}

void check_positive(const std::vector<double>& f, const char* name) {
    double mn = *std::min_element(f.begin(), f.end());
    if (!(1.0 + mn >= kPositivityFloor)) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "positivity violated: min(1+%s) = %.6g", name, 1.0 + mn);
        throw PositivityError(buf);
    }
}

} // namespace

PlasmaState PlasmaState::zero(const Grid1D& g, double gamma) {
    PlasmaState s;
    s.rho = SpectralField(g);
    s.v = SpectralField(g);
    s.theta = SpectralField(g);
    s.gamma = gamma;
    return s;
}

PoissonResult solve_poisson_detailed(const SpectralField& rho, const std::vector<double>* guess,
                                     const PoissonOptions& opt) {
    const Grid1D& g = rho.grid;
    const int n = g.n_points();
    const double dx = g.dx();
    for (double r : rho.values)
        if (!(1.0 + r > 0.0)) throw PositivityError("poisson: 1+rho must be positive");

    std::vector<double> phi = (guess && static_cast<int>(guess->size()) == n) ? *guess : std::vector<double>(n, 0.0);
    std::vector<double> F(n), eph(n), d(n), r(n), z(n), p(n), Ap(n);
    const double tol = opt.tol_factor * (1.0 + l2(rho.values, dx));

    poisson_residual(g, phi, rho.values, F, eph);
    double res = l2(F, dx);
    int it = 0;
    while (res > tol) {
        if (it >= opt.max_iter) throw PoissonError("poisson: Newton did not converge", res);
        ++it;
        double c = 0.0;
        for (double e : eph) c += e;
        c /= n;
        // PCG for J d = -F
        std::fill(d.begin(), d.end(), 0.0);
        for (int i = 0; i < n; ++i) r[i] = -F[i];
        apply_preconditioner(g, c, r, z);
        p = z;
        double rz = dot(r, z);
        const double r0 = std::sqrt(dot(r, r));
        for (int k = 0; k < 200; ++k) {
            apply_jacobian(g, eph, p, Ap);
            double alpha = rz / dot(p, Ap);
            for (int i = 0; i < n; ++i) {
                d[i] += alpha * p[i];
                r[i] -= alpha * Ap[i];
            }
            if (std::sqrt(dot(r, r)) <= 1e-13 * r0) break;
            apply_preconditioner(g, c, r, z);
            double rz_new = dot(r, z);
            double beta = rz_new / rz;
            rz = rz_new;
            for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
        }
        for (int i = 0; i < n; ++i) phi[i] += d[i];
        poisson_residual(g, phi, rho.values, F, eph);
        double res_new = l2(F, dx);
        if (!std::isfinite(res_new)) throw PoissonError("poisson: residual not finite", res_new);
        res = res_new;
    }
    PoissonResult out;
    out.phi = SpectralField(g, std::move(phi));
    out.iterations = it;
    out.residual = res;
    return out;
}

SpectralField solve_poisson(const SpectralField& rho) { return solve_poisson_detailed(rho).phi; }

PlasmaSolver::PlasmaSolver(const Grid1D& g, double gamma) : grid_(g), gamma_(gamma), phi_(g.n_points(), 0.0) {
    if (!(gamma > 1.0)) throw std::invalid_argument("gamma must exceed 1");
}

double PlasmaSolver::cfl_limit(const PlasmaState& s, double safety) const {
    double vmax = 0.0;
    for (double v : s.v.values) vmax = std::max(vmax, std::abs(v));
    return safety * grid_.dx() / (std::sqrt(gamma_ + 1.0) + vmax);
}

PlasmaTendency PlasmaSolver::rhs(const PlasmaState& s) {
    if (!(s.grid() == grid_)) throw std::invalid_argument("rhs: state grid does not match solver grid");
    const int n = grid_.n_points();
    const int nh = n / 2 + 1;
    const double dk = grid_.dk();
    const double kc = dealias_cutoff(grid_);
    const double g1 = gamma_ - 1.0;

    check_positive(s.rho.values, "rho");
    check_positive(s.theta.values, "theta");

    auto truncate = [&](Half& h) {
        for (int m = 0; m < nh; ++m)
            if (dk * m > kc) h[m] = 0.0;
    };
    auto deriv = [&](const Half& h) {
        Half o(nh);
        for (int m = 0; m < nh; ++m) o[m] = cplx(0.0, dk * m) * h[m];
        o[n / 2] = 0.0;
        return o;
    };
    auto to_phys = [&](const Half& h) { return fft::irfft(h, n); };
    auto product = [&](const std::vector<double>& a, const std::vector<double>& b) {
        std::vector<double> ab(n);
        for (int i = 0; i < n; ++i) ab[i] = a[i] * b[i];
        Half h = fft::rfft(ab);
        truncate(h);
        return h;
    };

    Half R = fft::rfft(s.rho.values), V = fft::rfft(s.v.values), T = fft::rfft(s.theta.values);
    truncate(R);
    truncate(V);
    truncate(T);
    auto rho = to_phys(R), v = to_phys(V), th = to_phys(T);
    Half Vx = deriv(V), Tx = deriv(T);
    auto vx = to_phys(Vx), thx = to_phys(Tx);

    SpectralField rho_d(grid_, rho);
    auto pr = solve_poisson_detailed(rho_d, &phi_, poisson);
    phi_ = pr.phi.values;
    Half Phx = fft::rfft(phi_);
    truncate(Phx);
    Phx = deriv(Phx);

    std::vector<double> lnr(n);
    for (int i = 0; i < n; ++i) lnr[i] = std::log1p(rho[i]);
    Half LNx = fft::rfft(lnr);
    truncate(LNx);
    LNx = deriv(LNx);
    auto lnx = to_phys(LNx);

    Half rv = product(rho, v);
    Half vvx = product(v, vx);
    Half thlnx = product(th, lnx);
    Half vthx = product(v, thx);
    Half thvx = product(th, vx);

    Half dR(nh), dV(nh), dT(nh);
    Half rvx = deriv(rv);
    for (int m = 0; m < nh; ++m) {
        dR[m] = -(Vx[m] + rvx[m]);
        dV[m] = -vvx[m] - Tx[m] - LNx[m] - thlnx[m] - Phx[m];
        dT[m] = -vthx[m] - g1 * (Vx[m] + thvx[m]);
    }
    PlasmaTendency out;
    out.d_rho = SpectralField(grid_, to_phys(dR));
    out.d_v = SpectralField(grid_, to_phys(dV));
    out.d_theta = SpectralField(grid_, to_phys(dT));
    return out;
}

PlasmaState PlasmaSolver::step_rk4(const PlasmaState& s, double dt) {
    if (std::abs(dt) > cfl_limit(s)) {
        if (cfl_warnings_ == 0) std::cerr << "warning: time step exceeds CFL bound\n";
        ++cfl_warnings_;
    }
    const int n = grid_.n_points();
    auto axpy = [&](const PlasmaState& base, const PlasmaTendency& k, double a) {
        PlasmaState o = base;
        for (int i = 0; i < n; ++i) {
            o.rho.values[i] += a * k.d_rho.values[i];
            o.v.values[i] += a * k.d_v.values[i];
            o.theta.values[i] += a * k.d_theta.values[i];
        }
        return o;
    };
    PlasmaTendency k1 = rhs(s);
    PlasmaTendency k2 = rhs(axpy(s, k1, 0.5 * dt));
    PlasmaTendency k3 = rhs(axpy(s, k2, 0.5 * dt));
    PlasmaTendency k4 = rhs(axpy(s, k3, dt));
    PlasmaState o = s;
    const double c = dt / 6.0;
    for (int i = 0; i < n; ++i) {
        o.rho.values[i] += c * (k1.d_rho.values[i] + 2.0 * k2.d_rho.values[i] + 2.0 * k3.d_rho.values[i] + k4.d_rho.values[i]);
        o.v.values[i] += c * (k1.d_v.values[i] + 2.0 * k2.d_v.values[i] + 2.0 * k3.d_v.values[i] + k4.d_v.values[i]);
        o.theta.values[i] +=
            c * (k1.d_theta.values[i] + 2.0 * k2.d_theta.values[i] + 2.0 * k3.d_theta.values[i] + k4.d_theta.values[i]);
    }
    o.time = s.time + dt;
    check_positive(o.rho.values, "rho");
    check_positive(o.theta.values, "theta");
    return o;
}

PlasmaTendency rhs(const PlasmaState& s) {
    PlasmaSolver solver(s.grid(), s.gamma);
    return solver.rhs(s);
}

PlasmaState step_rk4(const PlasmaState& s, double dt) {
    PlasmaSolver solver(s.grid(), s.gamma);
    return solver.step_rk4(s, dt);
}

Conserved conserved_diagnostics(const PlasmaState& s) {
    const Grid1D& g = s.grid();
    const int n = g.n_points();
    const double dx = g.dx();
    const double g1 = s.gamma - 1.0;
    auto phi = solve_poisson(s.rho);
    auto phix = apply_multiplier(phi, [](double k) { return cplx(0.0, k); });
    Conserved c{0.0, 0.0, 0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        const double r = s.rho.values[i], v = s.v.values[i], t = s.theta.values[i];
        const double p = phi.values[i], px = phix.values[i];
        c.mass += r;
        c.momentum += (1.0 + r) * v;
        c.energy += 0.5 * (1.0 + r) * v * v + (1.0 + r) * (1.0 + t) / g1 + 0.5 * px * px + std::exp(p) * (p - 1.0);
        c.entropy += (1.0 + r) * (std::log1p(t) + (1.0 - s.gamma) * std::log1p(r));
    }
    c.mass *= dx;
    c.momentum *= dx;
    c.energy *= dx;
    c.entropy *= dx;
    return c;
}

void write_snapshot_csv(const PlasmaState& s, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    auto phi = solve_poisson(s.rho);
    os << "x,rho,v,theta,phi\n";
    char buf[200];
    for (int i = 0; i < s.grid().n_points(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12e,%.12e,%.12e,%.12e,%.12e\n", s.grid().x(i), s.rho.values[i], s.v.values[i],
                      s.theta.values[i], phi.values[i]);
        os << buf;
    }
}

} // namespace epnls
