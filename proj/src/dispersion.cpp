#include "epnls/dispersion.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace epnls {

DispersionParams::DispersionParams(double g) : gamma(g) {
    if (!(g > 1.0)) throw std::invalid_argument("gamma must exceed 1");
}

double qhat(double k, const DispersionParams& p) { return std::sqrt(p.gamma + 1.0 / (1.0 + k * k)); }

double omega(double k, const DispersionParams& p) { return k * qhat(k, p); }

double group_velocity(double k, const DispersionParams& p) {
    const double q = qhat(k, p);
    const double a = 1.0 + k * k;
    return q - k * k / (a * a * q);
}

double omega_second(double k, const DispersionParams& p) {
    const double q = qhat(k, p);
    const double a = 1.0 + k * k;
    const double q1 = -k / (a * a * q);
    const double q2 = -1.0 / (a * a * q) + 4.0 * k * k / (a * a * a * q) + k * q1 / (a * a * q * q);
    return 2.0 * q1 + k * q2;
}

double resonance_denominator(int j, int n, double k, double ell, const DispersionParams& p) {
    return -j * omega(k, p) - omega(k - ell, p) + n * omega(ell, p);
}

double NonresonanceReport::value(const std::string& name) const {
    for (const auto& m : margins)
        if (m.name == name) return m.value;
    throw std::out_of_range("no margin named " + name);
}

std::string NonresonanceReport::to_text() const {
    std::string s;
    char buf[160];
    std::snprintf(buf, sizeof buf, "nonresonance report  gamma=%.6g  k0=%.6g\n", gamma, k0);
    s += buf;
    for (const auto& m : margins) {
        std::snprintf(buf, sizeof buf, "  %-24s % .10f  %s\n", m.name.c_str(), m.value, m.ok ? "ok" : "FLAG");
        s += buf;
    }
    s += passed ? "all margins pass\n" : "margin below threshold\n";
    return s;
}

std::string NonresonanceReport::to_csv() const {
    std::string s = "name,value,ok\n";
    char buf[160];
    for (const auto& m : margins) {
        std::snprintf(buf, sizeof buf, "%s,%.12e,%d\n", m.name.c_str(), m.value, m.ok ? 1 : 0);
        s += buf;
    }
    return s;
}

NonresonanceReport nonresonance_report(double k0, const DispersionParams& p) {
    if (k0 == 0.0 || !std::isfinite(k0)) throw std::invalid_argument("nonresonance_report: k0 must be nonzero");
    NonresonanceReport r;
    r.k0 = k0;
    r.gamma = p.gamma;
    const double w0 = omega(k0, p);
    const double cg = group_velocity(k0, p);
    const double c0 = group_velocity(0.0, p);
    auto add = [&](const std::string& name, double v) {
        bool ok = std::abs(v) >= kResonanceThreshold;
        r.margins.push_back({name, v, ok});
        r.passed = r.passed && ok;
    };
    add("omega0", w0);
    for (int j = 2; j <= 5; ++j) {
        add("-" + std::to_string(j) + "w0+w(" + std::to_string(j) + "k0)", -j * w0 + omega(j * k0, p));
        add("-" + std::to_string(j) + "w0-w(" + std::to_string(j) + "k0)", -j * w0 - omega(j * k0, p));
    }
    add("cg", cg);
    add("cg-w'(0)", cg - c0);
    add("cg+w'(0)", cg + c0);
    return r;
}

} // namespace epnls
