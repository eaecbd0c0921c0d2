#pragma once
#include "epnls/ansatz.hpp"
#include "epnls/residual.hpp"

#include <string>
#include <vector>

namespace epnls {

struct RunConfig {
    double gamma = 3.0;
    double k0 = 1.0;
    double eps = 0.1;
    double T0 = 0.5;
    int n_points = 8192;
    double length = 0.0;   // 0: smallest carrier-commensurate length with eps L >= containment
    double dt = 0.0;       // 0: from the CFL bound
    int samples = 50;
    double amplitude = 0.05;
    double width = 2.0;
    double cutoff_factor = kDefaultCutoffFactor;
    double containment = kContainment;
    double nls_dT_max = 1e-3;
    std::string output_dir;

    void validate() const;
    Grid1D grid() const;
};

struct ErrorSeries {
    double eps = 0.0;
    std::vector<double> times;
    std::vector<double> errors_hs;       // ||(rho,v,theta) - eps Psi_NLS||_{H^2}
    std::vector<double> errors_diag_hs;  // same difference in characteristic variables
    double sup_error_hs = 0.0;
    double sup_error_diag_hs = 0.0;
    bool completed = true;
    double failure_time = 0.0;
    std::string failure;
    int steps = 0;
    double dt = 0.0;
};

ErrorSeries run_validation(const RunConfig& cfg);

double fit_order(const std::vector<ErrorSeries>& series);

struct SweepReport {
    std::vector<ErrorSeries> runs;
    bool has_order = false;
    double order = 0.0;
    std::string summary_csv() const;
    std::string samples_csv() const;
};

SweepReport sweep(const RunConfig& tpl, const std::vector<double>& eps_list, int workers);

struct FrequencyShiftResult {
    double nu2_kernel = 0.0;
    double nu2_measured = 0.0;
    double rel_error = 0.0;
    double omega_measured = 0.0;
};

// Uniform wave train on one carrier wavelength; the nonlinear frequency shift gives nu2.
FrequencyShiftResult frequency_shift_oracle(double gamma, double k0, double eps, double amplitude, int n_points,
                                            double t_end, double dt);

struct Certificate {
    std::string name;
    double worst = 0.0;
    double tol = 0.0;
    bool pass = false;
};

std::vector<Certificate> kernel_certificates(double gamma, double k0, double delta);

} // namespace epnls
