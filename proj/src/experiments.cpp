#include "epnls/experiments.hpp"

#include "epnls/fft.hpp"
#include "epnls/operator_kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>
#include <thread>

namespace epnls {

void RunConfig::validate() const {
    if (!(gamma > 1.0)) throw std::invalid_argument("config: gamma must exceed 1");
    if (k0 == 0.0 || !std::isfinite(k0)) throw std::invalid_argument("config: k0 must be nonzero");
    if (!(eps > 0.0 && eps <= 0.3)) throw std::invalid_argument("config: eps must lie in (0, 0.3]");
    if (!(T0 >= 0.0)) throw std::invalid_argument("config: T0 must be nonnegative");
    if (samples < 1) throw std::invalid_argument("config: samples must be positive");
    if (!(amplitude >= 0.0) || !(width > 0.0)) throw std::invalid_argument("config: bad envelope shape");
    if (!(cutoff_factor > 0.0 && cutoff_factor < 0.5)) throw std::invalid_argument("config: cutoff_factor must lie in (0, 0.5)");
    if (!(dt >= 0.0) || !(nls_dT_max > 0.0)) throw std::invalid_argument("config: bad time steps");
    Grid1D g = grid();  // checks n_points
    const double p = std::abs(k0) * g.length() / (2.0 * std::numbers::pi);
    if (std::abs(p - std::round(p)) > 1e-9 * p) throw std::invalid_argument("config: length must hold an integer number of carrier wavelengths");
    if (eps * g.length() < containment * (1.0 - 1e-12)) throw std::invalid_argument("config: eps * length below containment bound");
    if (!nonresonance_report(k0, DispersionParams(gamma)).passed) throw std::invalid_argument("config: resonance margin below threshold");
}

Grid1D RunConfig::grid() const {
    if (length > 0.0) return Grid1D(n_points, length);
    return fast_grid(eps, k0, n_points, containment);
}

namespace {

double state_error(const PlasmaState& a, const PlasmaState& b, double* diag_err) {
    PlasmaState d = a;
    for (int i = 0; i < a.grid().n_points(); ++i) {
        d.rho.values[i] -= b.rho.values[i];
        d.v.values[i] -= b.v.values[i];
        d.theta.values[i] -= b.theta.values[i];
    }
    const double r = norm_hs(d.rho, 2.0), v = norm_hs(d.v, 2.0), t = norm_hs(d.theta, 2.0);
    if (diag_err) *diag_err = diag_norm(to_diagonal(d), 2.0);
    return std::sqrt(r * r + v * v + t * t);
}

} // namespace

ErrorSeries run_validation(const RunConfig& cfg) {
    cfg.validate();
    const NlsCoefficients c = assemble_coefficients(cfg.gamma, cfg.k0);
    const Grid1D fg = cfg.grid();
    const Grid1D sg = slow_grid(fg, cfg.eps);
    const double delta = cfg.cutoff_factor * std::abs(cfg.k0);
    Envelope env = gaussian_envelope(sg, cfg.amplitude, cfg.width, 0.5 * sg.length());

    AnsatzConfig ext{cfg.eps, c, env, AnsatzOrder::extended, delta, fg};
    PlasmaState state = build(ext, 0.0);

    ErrorSeries out;
    out.eps = cfg.eps;
    auto record = [&](double t) {
        AnsatzConfig lead{cfg.eps, c, env, AnsatzOrder::leading, delta, fg};
        double de = 0.0;
        const double e = state_error(state, build(lead, t), &de);
        out.times.push_back(t);
        out.errors_hs.push_back(e);
        out.errors_diag_hs.push_back(de);
        out.sup_error_hs = std::max(out.sup_error_hs, e);
        out.sup_error_diag_hs = std::max(out.sup_error_diag_hs, de);
    };
    record(0.0);
    if (cfg.T0 == 0.0) return out;

    const double t_end = cfg.T0 / (cfg.eps * cfg.eps);
    const double interval = t_end / cfg.samples;
    double vmax = 0.0;
    for (double v : state.v.values) vmax = std::max(vmax, std::abs(v));
    const double dt_cfl = 0.5 * fg.dx() / (std::sqrt(cfg.gamma + 1.0) + 2.0 * vmax);
    const double dt0 = cfg.dt > 0.0 ? cfg.dt : dt_cfl;
    const int n_sub = std::max(1, static_cast<int>(std::ceil(interval / dt0 - 1e-9)));
    const double dt = interval / n_sub;
    out.dt = dt;

    PlasmaSolver solver(fg, cfg.gamma);
    for (int i = 1; i <= cfg.samples; ++i) {
        try {
            for (int s = 0; s < n_sub; ++s) {
                state = solver.step_rk4(state, dt);
                ++out.steps;
            }
        } catch (const std::runtime_error& e) {
            out.completed = false;
            out.failure_time = state.time;
            out.failure = e.what();
            return out;
        }
        const double t = i * interval;
        state.time = t;
        env = advance_envelope(env, i * cfg.T0 / cfg.samples, c, cfg.nls_dT_max);
        record(t);
    }
    return out;
}

double fit_order(const std::vector<ErrorSeries>& series) {
    if (series.size() < 3) throw std::invalid_argument("fit_order: need at least 3 runs");
    std::set<double> seen;
    std::vector<double> e, y;
    for (const auto& s : series) {
        if (!s.completed) throw std::invalid_argument("fit_order: failed run present");
        if (!seen.insert(s.eps).second) throw std::invalid_argument("fit_order: duplicate eps");
        e.push_back(s.eps);
        y.push_back(s.sup_error_hs);
    }
    return loglog_slope(e, y);
}

SweepReport sweep(const RunConfig& tpl, const std::vector<double>& eps_list, int workers) {
    SweepReport rep;
    if (eps_list.empty()) return rep;
    std::set<double> seen;
    for (double e : eps_list)
        if (!seen.insert(e).second) throw std::invalid_argument("sweep: duplicate eps");
    for (double e : eps_list) {
        RunConfig c = tpl;
        c.eps = e;
        c.validate();
    }
    rep.runs.resize(eps_list.size());
    std::atomic<size_t> next{0};
    auto work = [&]() {
        for (size_t i = next++; i < eps_list.size(); i = next++) {
            RunConfig c = tpl;
            c.eps = eps_list[i];
            try {
                rep.runs[i] = run_validation(c);
            } catch (const std::exception& ex) {
                rep.runs[i].eps = c.eps;
                rep.runs[i].completed = false;
                rep.runs[i].failure = ex.what();
            }
        }
    };
    const int nw = std::max(1, std::min<int>(workers, static_cast<int>(eps_list.size())));
    std::vector<std::thread> pool;
    for (int w = 1; w < nw; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    bool all = rep.runs.size() >= 3;
    for (const auto& r : rep.runs) all = all && r.completed;
    if (all) {
        rep.order = fit_order(rep.runs);
        rep.has_order = true;
    }
    return rep;
}

std::string SweepReport::summary_csv() const {
    std::string s = "eps,sup_error_hs,sup_error_diag_hs,completed,failure_time,steps,dt\n";
    char buf[256];
    for (const auto& r : runs) {
        std::snprintf(buf, sizeof buf, "%.12e,%.12e,%.12e,%d,%.12e,%d,%.12e\n", r.eps, r.sup_error_hs, r.sup_error_diag_hs,
                      r.completed ? 1 : 0, r.failure_time, r.steps, r.dt);
        s += buf;
    }
    if (has_order) {
        std::snprintf(buf, sizeof buf, "# fitted_order=%.12e\n", order);
        s += buf;
    }
    return s;
}

std::string SweepReport::samples_csv() const {
    std::string s = "eps,t,error_hs,error_diag_hs\n";
    char buf[256];
    for (const auto& r : runs)
        for (size_t i = 0; i < r.times.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.12e,%.12e,%.12e,%.12e\n", r.eps, r.times[i], r.errors_hs[i], r.errors_diag_hs[i]);
            s += buf;
        }
    return s;
}

FrequencyShiftResult frequency_shift_oracle(double gamma, double k0, double eps, double amplitude, int n_points,
                                            double t_end, double dt) {
    if (!(k0 > 0.0)) throw std::invalid_argument("frequency_shift_oracle: k0 must be positive");
    const NlsCoefficients c = assemble_coefficients(gamma, k0);
    const Grid1D fg(n_points, 2.0 * std::numbers::pi / k0);
    const Grid1D sg = slow_grid(fg, eps);
    Envelope env;
    env.grid = sg;
    env.a.assign(n_points, cplx(amplitude, 0.0));
    AnsatzConfig cfg{eps, c, env, AnsatzOrder::extended, kDefaultCutoffFactor * k0, fg};
    PlasmaState state = build(cfg, 0.0);

    const int steps = static_cast<int>(std::ceil(t_end / dt - 1e-9));
    const double h = t_end / steps;
    // keep the sampled carrier phase increment well below pi
    const int every = std::max(1, static_cast<int>(0.5 / (c.omega0 * h)));
    PlasmaSolver solver(fg, gamma);
    std::vector<double> ts, ph;
    double prev = 0.0, unwrap = 0.0;
    auto sample = [&](double t) {
        const double a = std::arg(to_diagonal(state).um1.half_spectrum()[1]);
        if (!ts.empty()) {
            double d = a - prev;
            d -= 2.0 * std::numbers::pi * std::round(d / (2.0 * std::numbers::pi));
            unwrap += d;
        } else {
            unwrap = a;
        }
        prev = a;
        ts.push_back(t);
        ph.push_back(unwrap);
    };
    sample(0.0);
    for (int s = 1; s <= steps; ++s) {
        state = solver.step_rk4(state, h);
        if (s % every == 0) sample(s * h);
    }
    double st = 0, sp = 0, stt = 0, stp = 0;
    const double n = ts.size();
    for (size_t i = 0; i < ts.size(); ++i) {
        st += ts[i];
        sp += ph[i];
        stt += ts[i] * ts[i];
        stp += ts[i] * ph[i];
    }
    const double slope = (n * stp - st * sp) / (n * stt - st * st);
    FrequencyShiftResult r;
    r.nu2_kernel = c.mu2;
    r.omega_measured = -slope;
    r.nu2_measured = -(r.omega_measured - c.omega0) / (eps * eps * amplitude * amplitude);
    r.rel_error = std::abs(r.nu2_measured - r.nu2_kernel) / std::abs(r.nu2_kernel);
    return r;
}

std::vector<Certificate> kernel_certificates(double gamma, double k0, double delta) {
    std::vector<Certificate> out;
    const double gammas[4] = {1.5, 5.0 / 3.0, 2.0, 3.0};
    auto ell_samples = [] {
        std::vector<double> v;
        for (int i = 0; i < 100; ++i) v.push_back(0.05 + 4.95 * i / 99.0);
        return v;
    }();

    {
        Certificate c{"b(j,l,-1)(0,-ell,ell) = 0", 0.0, 1e-13, true};
        for (double g : gammas)
            for (double ell : ell_samples)
                for (int j : {0, 1, -1})
                    for (int l : {1, -1}) c.worst = std::max(c.worst, std::abs(b11_kernel(j, l, -1, 0.0, ell, DispersionParams(g))));
        c.pass = c.worst <= c.tol;
        out.push_back(c);
    }
    {
        Certificate c{"b(0,l,1)(2ell,ell,ell) = 0", 0.0, 1e-13, true};
        for (double g : gammas)
            for (double ell : ell_samples)
                for (int l : {1, -1}) c.worst = std::max(c.worst, std::abs(b11_kernel(0, l, 1, 2.0 * ell, ell, DispersionParams(g))));
        c.pass = c.worst <= c.tol;
        out.push_back(c);
    }

    const DispersionParams p(gamma);
    const OperatorKernels ops(OperatorKernels::commensurate_grid(k0, 8, 256), gamma);
    {
        Certificate c{"Q_j symbol vs grid operator", 0.0, 1e-10, true};
        const double ks[] = {-2.0, -1.0, -0.5, 0.0, 0.375, 1.0, 1.5, 2.0};
        for (int j : {0, 1, -1})
            for (double ka : ks)
                for (double kb : ks)
                    for (int ca : {0, 1, -1})
                        for (int cb : {0, 1, -1}) {
                            Mode a{ka * k0, ca, 1.0}, b{kb * k0, cb, 1.0};
                            const cplx s = q_bilinear_out(j, a, b, p).amp, o = ops.q(j, a, b).amp;
                            c.worst = std::max(c.worst, std::abs(s - o) / std::max(1.0, std::abs(s)));
                        }
        c.pass = c.worst <= c.tol;
        out.push_back(c);
    }
    {
        Certificate c{"N_j symbol vs grid operator", 0.0, 1e-9, true};
        const double triples[][3] = {{1, 1, -1}, {1, -1, 2}, {0.5, 0.5, 1}, {1, 0, -1}, {2, -1, -1}, {0.375, 1.5, -0.5}};
        for (int j : {1, -1})
            for (const auto& t : triples)
                for (int ca : {0, 1, -1})
                    for (int cb : {0, 1, -1})
                        for (int cc : {0, 1, -1}) {
                            Mode a{t[0] * k0, ca, 1.0}, b{t[1] * k0, cb, 1.0}, d{t[2] * k0, cc, 1.0};
                            const cplx s = n_cubic_out(j, a, b, d, p).amp, o = ops.n(j, a, b, d).amp;
                            c.worst = std::max(c.worst, std::abs(s - o) / std::max(1.0, std::abs(s)));
                        }
        c.pass = c.worst <= c.tol;
        out.push_back(c);
    }
    {
        Certificate c{"b11 vs linearized Q_j", 0.0, 1e-10, true};
        for (int j : {0, 1, -1})
            for (int n : {0, 1, -1})
                for (double k : {-2.3, -0.7, 0.0, 0.4, 1.0, 2.0, 3.1})
                    for (double ell : {-1.1, -0.2, 0.0, 0.9, 1.0, 2.5}) {
                        const cplx b = b11_kernel(j, 1, n, k, ell, p);
                        const cplx q = 2.0 * q_bilinear_out(j, Mode{k - ell, -1, 1.0}, Mode{ell, n, 1.0}, p).amp;
                        c.worst = std::max(c.worst, std::abs(b - q) / std::max(1.0, std::abs(q)));
                    }
        c.pass = c.worst <= c.tol;
        out.push_back(c);
    }
    {
        // empirical C in |-j w(k) - w(k-ell) - w(ell)| >= C |k|
        Certificate c{"resonance constant C (n=-1)", std::numeric_limits<double>::infinity(), 0.05, true};
        for (int j : {0, 1, -1})
            for (int s : {1, -1})
                for (int il = 0; il <= 40; ++il) {
                    const double ell = s * (k0 - delta + 2.0 * delta * il / 40.0);
                    for (int ik = 1; ik <= 100; ++ik)
                        for (int sk : {1, -1}) {
                            const double k = sk * delta * ik / 100.0;
                            c.worst = std::min(c.worst, std::abs(resonance_denominator(j, -1, k, ell, p)) / std::abs(k));
                        }
                }
        c.pass = c.worst > c.tol;
        out.push_back(c);
    }
    {
        Certificate c{"k11 normalized summand asymptote", 0.0, 1e-3, true};
        const double k = 1e3, ell = k - k0;
        const auto t = b11_terms(0, 1, 0, k, ell, p);
        const cplx v = t[1] / (cplx(0.0, k - ell) * qhat(k - ell, p));
        c.worst = std::abs(v + 2.0 * (gamma - 1.0) / gamma);
        c.pass = c.worst <= c.tol;
        out.push_back(c);
    }
    const WeightParams w{delta, 0.1};
    {
        Certificate c{"k11 cancelled resonance at k=2k0", 0.0, 1e-4, true};
        const cplx lim = normalform_kernel(KernelKind::k11, 0, 1, 1, 2.0 * k0, k0, w, p);
        const cplx v6 = normalform_kernel(KernelKind::k11, 0, 1, 1, 2.0 * k0 + 1e-6, k0, w, p);
        const cplx v7 = normalform_kernel(KernelKind::k11, 0, 1, 1, 2.0 * k0 + 1e-7, k0, w, p);
        const double q2 = qhat(2.0 * k0, p);
        const double exact = (gamma - 1.0) * (gamma - 2.0) / (q2 * q2);
        const double scale = std::max(std::abs(v7), 1e-300);
        c.worst = std::max({std::abs(v6 - v7) / scale, std::abs(lim - v7) / scale, std::abs(lim - exact) / std::max(std::abs(exact), 1e-300)});
        c.pass = c.worst <= c.tol;
        out.push_back(c);
    }
    {
        Certificate c{"k01 weighted kernel bounded", 0.0, 1e6, true};
        try {
            for (int j : {0, 1, -1})
                for (int n : {0, 1, -1})
                    for (int l : {1, -1})
                        for (int il = 0; il <= 20; ++il) {
                            const double ell = -l * (k0 - delta + 2.0 * delta * il / 20.0);
                            for (int ik = -100; ik <= 100; ++ik) {
                                const double k = delta * ik / 100.0;
                                const cplx v = theta_weight(k, w) * normalform_kernel(KernelKind::k01, j, l, n, k, ell, w, p);
                                c.worst = std::max(c.worst, std::abs(v));
                            }
                        }
            c.pass = std::isfinite(c.worst) && c.worst <= c.tol;
        } catch (const NontrivialResonance&) {
            c.pass = false;
            c.worst = std::numeric_limits<double>::infinity();
        }
        out.push_back(c);
    }
    {
        Certificate c{"k10 kernel bounded near +-k0", 0.0, 1e6, true};
        try {
            for (int j : {0, 1, -1})
                for (int n : {0, 1, -1})
                    for (int l : {1, -1})
                        for (int ik = -100; ik <= 100; ++ik) {
                            const double k = l * k0 + delta * ik / 100.0;
                            const cplx v = normalform_kernel(KernelKind::k10, j, l, n, k, k - l * k0, w, p);
                            c.worst = std::max(c.worst, std::abs(v));
                        }
            c.pass = std::isfinite(c.worst) && c.worst <= c.tol;
        } catch (const NontrivialResonance&) {
            c.pass = false;
            c.worst = std::numeric_limits<double>::infinity();
        }
        out.push_back(c);
    }
    return out;
}

} // namespace epnls
