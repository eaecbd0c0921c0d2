#pragma once
#include "epnls/diagonal.hpp"
#include "epnls/nls.hpp"

#include <vector>

namespace epnls {

enum class AnsatzOrder { leading, extended };

// Envelope cutoff as a multiple of k0. Wider than the kernel delta so that the
// Gaussian tail removed at desk-scale eps stays negligible.
inline constexpr double kDefaultCutoffFactor = 0.4;
inline constexpr double kContainment = 40.0;

struct AnsatzConfig {
    double eps = 0.1;
    NlsCoefficients coeffs;
    Envelope envelope;  // slow grid: same points as `grid`, length eps * L
    AnsatzOrder order = AnsatzOrder::extended;
    double cutoff_delta = 0.4;
    Grid1D grid;        // fast grid
};

// L = 2 pi p / k0 with the smallest p such that eps L >= factor
Grid1D fast_grid(double eps, double k0, int n_points, double factor = kContainment);
Grid1D slow_grid(const Grid1D& fast, double eps);

// Characteristic components of eps*Psi and of its exact time derivative.
DiagState build_diag(const AnsatzConfig& cfg, double t);
DiagState build_diag_dt(const AnsatzConfig& cfg, double t);
PlasmaState build(const AnsatzConfig& cfg, double t);

SpectralField fourier_cutoff(const SpectralField& f, const std::vector<double>& centers, double delta);

// Fraction of envelope L2 mass beyond |K| > delta / eps.
double cutoff_tail_fraction(const Envelope& e, double eps, double delta);

} // namespace epnls
