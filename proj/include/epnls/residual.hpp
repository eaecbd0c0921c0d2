#pragma once
#include "epnls/ansatz.hpp"

#include <vector>

namespace epnls {

struct ResidualOptions {
    bool linear_only = false;  // replace the full rhs by its linear part
};

// Res = S^{-1} rhs(S eps Psi) - d_t(eps Psi), in characteristic variables.
DiagState compute_residual(const AnsatzConfig& cfg, double t, const ResidualOptions& opt = {});

// linear characteristic tendency: U_l -> l * i w(k) U_l
DiagState linear_diag_tendency(const DiagState& d);

double diag_norm(const DiagState& d, double s);

struct ResidualReport {
    double eps = 0.0;
    std::vector<double> t_samples, l2_norms, hs_norms;
    double max_l2 = 0.0;
};

struct ResidualTemplate {
    double gamma = 3.0;
    double k0 = 1.0;
    int n_points = 4096;
    double amplitude = 0.05;
    double width = 2.0;
    double cutoff_factor = kDefaultCutoffFactor;
    double containment = kContainment;
    std::vector<double> t_fractions{0.0, 0.25, 0.5, 0.75, 1.0};  // of 1/eps
};

struct ResidualScaling {
    std::vector<ResidualReport> leading, extended;
    double order_leading = 0.0, order_extended = 0.0;
    double fit_rms_leading = 0.0, fit_rms_extended = 0.0;
    bool power_law_ok = true;
};

inline constexpr double kPowerLawRms = 0.25;

ResidualScaling residual_scaling(const std::vector<double>& eps_list, const ResidualTemplate& tpl);

// envelope advanced to slow time T with split steps of at most dT_max
Envelope advance_envelope(const Envelope& e, double T, const NlsCoefficients& c, double dT_max);

// least-squares slope of log y against log x; rms of the log residuals in *rms
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y, double* rms = nullptr);

} // namespace epnls
