#include "epnls/residual.hpp"

#include "epnls/fft.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace epnls {

DiagState linear_diag_tendency(const DiagState& d) {
    DispersionParams p(d.gamma);
    DiagState out = d;
    for (int l : {0, 1, -1}) {
        out.component(l) = apply_multiplier(d.component(l), [&](double k) { return cplx(0.0, l * omega(k, p)); });
    }
    return out;
}

DiagState compute_residual(const AnsatzConfig& cfg, double t, const ResidualOptions& opt) {
    DiagState u = build_diag(cfg, t);
    DiagState ut = build_diag_dt(cfg, t);
    DiagState f;
    if (opt.linear_only) {
        f = linear_diag_tendency(u);
    } else {
        PlasmaSolver solver(cfg.grid, cfg.coeffs.gamma);
        PlasmaState s = from_diagonal(u);
        PlasmaTendency r = solver.rhs(s);
        PlasmaState rs = s;
        rs.rho = r.d_rho;
        rs.v = r.d_v;
        rs.theta = r.d_theta;
        f = to_diagonal(rs);
    }
    for (int l : {0, 1, -1}) {
        auto& a = f.component(l).values;
        const auto& b = ut.component(l).values;
        for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    }
    f.time = t;
    return f;
}

double diag_norm(const DiagState& d, double s) {
    double sum = 0.0;
    for (int l : {0, 1, -1}) {
        const double v = norm_hs(d.component(l), s);
        sum += v * v;
    }
    return std::sqrt(sum);
}

Envelope advance_envelope(const Envelope& e, double T, const NlsCoefficients& c, double dT_max) {
    Envelope out = e;
    const double span = T - e.slow_time;
    if (span < 0.0) throw std::invalid_argument("advance_envelope: target time precedes envelope time");
    if (span == 0.0) return out;
    const int steps = std::max(1, static_cast<int>(std::ceil(span / dT_max - 1e-9)));
    const double dT = span / steps;
    for (int i = 0; i < steps; ++i) out = split_step(out, dT, c);
    out.slow_time = T;
    return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y, double* rms) {
    const size_t n = x.size();
    if (n < 2 || y.size() != n) throw std::invalid_argument("loglog_slope: need matching samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::invalid_argument("loglog_slope: values must be positive");
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    if (rms) {
        const double icpt = (sy - slope * sx) / n;
        double r = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double d = std::log(y[i]) - (icpt + slope * std::log(x[i]));
            r += d * d;
        }
        *rms = std::sqrt(r / n);
    }
    return slope;
}

ResidualScaling residual_scaling(const std::vector<double>& eps_list, const ResidualTemplate& tpl) {
    if (eps_list.size() < 3) throw std::invalid_argument("residual_scaling: need at least 3 eps values");
    std::vector<double> sorted = eps_list;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] < 1.3 * sorted[i - 1]) throw std::invalid_argument("residual_scaling: eps values must differ by ratio >= 1.3");

    const NlsCoefficients c = assemble_coefficients(tpl.gamma, tpl.k0);
    ResidualScaling out;
    for (double eps : eps_list) {
        const Grid1D fg = fast_grid(eps, tpl.k0, tpl.n_points, tpl.containment);
        const Grid1D sg = slow_grid(fg, eps);
        Envelope env = gaussian_envelope(sg, tpl.amplitude, tpl.width, 0.5 * sg.length());
        ResidualReport lead, ext;
        lead.eps = ext.eps = eps;
        for (double frac : tpl.t_fractions) {
            const double t = frac / eps;
            env = advance_envelope(env, eps * eps * t, c, 1e-3);
            AnsatzConfig cfg{eps, c, env, AnsatzOrder::leading, tpl.cutoff_factor * std::abs(tpl.k0), fg};
            for (auto* rep : {&lead, &ext}) {
                cfg.order = rep == &lead ? AnsatzOrder::leading : AnsatzOrder::extended;
                DiagState r = compute_residual(cfg, t);
                rep->t_samples.push_back(t);
                rep->l2_norms.push_back(diag_norm(r, 0.0));
                rep->hs_norms.push_back(diag_norm(r, 2.0));
            }
        }
        lead.max_l2 = *std::max_element(lead.l2_norms.begin(), lead.l2_norms.end());
        ext.max_l2 = *std::max_element(ext.l2_norms.begin(), ext.l2_norms.end());
        out.leading.push_back(lead);
        out.extended.push_back(ext);
    }
    std::vector<double> e, yl, ye;
    for (size_t i = 0; i < eps_list.size(); ++i) {
        e.push_back(eps_list[i]);
        yl.push_back(out.leading[i].max_l2);
        ye.push_back(out.extended[i].max_l2);
    }
    out.order_leading = loglog_slope(e, yl, &out.fit_rms_leading);
    out.order_extended = loglog_slope(e, ye, &out.fit_rms_extended);
    out.power_law_ok = out.fit_rms_leading <= kPowerLawRms && out.fit_rms_extended <= kPowerLawRms;
    return out;
}

} // namespace epnls
