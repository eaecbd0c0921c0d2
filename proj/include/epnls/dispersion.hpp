#pragma once
#include <string>
#include <vector>

namespace epnls {

struct DispersionParams {
    double gamma = 3.0;
    DispersionParams() = default;
    explicit DispersionParams(double g);
};

double qhat(double k, const DispersionParams& p);
double omega(double k, const DispersionParams& p);
double group_velocity(double k, const DispersionParams& p);
double omega_second(double k, const DispersionParams& p);

// -j w(k) - w(k - ell) + n w(ell)
double resonance_denominator(int j, int n, double k, double ell, const DispersionParams& p);

struct ResonanceMargin {
    std::string name;
    double value;
    bool ok;
};

struct NonresonanceReport {
    double k0 = 0.0;
    double gamma = 0.0;
    std::vector<ResonanceMargin> margins;
    bool passed = true;

    double value(const std::string& name) const;
    std::string to_text() const;
    std::string to_csv() const;
};

inline constexpr double kResonanceThreshold = 1e-6;

NonresonanceReport nonresonance_report(double k0, const DispersionParams& p);

} // namespace epnls
