#pragma once
#include "epnls/spectral.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace epnls {

// Deviations from the constant state (n, u, T) = (1, 0, 1).
struct PlasmaState {
    SpectralField rho, v, theta;
    double gamma = 3.0;
    double time = 0.0;

    static PlasmaState zero(const Grid1D& g, double gamma);
    const Grid1D& grid() const { return rho.grid; }
};

struct PlasmaTendency {
    SpectralField d_rho, d_v, d_theta;
};

struct PoissonOptions {
    int max_iter = 50;
    double tol_factor = 1e-12;
};

struct PoissonResult {
    SpectralField phi;
    int iterations = 0;
    double residual = 0.0;
};

class PoissonError : public std::runtime_error {
public:
    PoissonError(const std::string& what, double last) : std::runtime_error(what), last_residual(last) {}
    double last_residual;
};

class PositivityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Solves -phi'' + e^phi = 1 + rho by collocation. Newton outer loop, PCG inner loop.
PoissonResult solve_poisson_detailed(const SpectralField& rho, const std::vector<double>* guess = nullptr,
                                     const PoissonOptions& opt = {});
SpectralField solve_poisson(const SpectralField& rho);

inline constexpr double kPositivityFloor = 0.1;

// Holds FFT scratch and the previous potential for warm starts.
class PlasmaSolver {
public:
    PlasmaSolver(const Grid1D& g, double gamma);

    PlasmaTendency rhs(const PlasmaState& s);
    PlasmaState step_rk4(const PlasmaState& s, double dt);
    double cfl_limit(const PlasmaState& s, double safety = 0.5) const;

    const std::vector<double>& last_phi() const { return phi_; }
    int cfl_warnings() const { return cfl_warnings_; }
    PoissonOptions poisson;

private:
    Grid1D grid_;
    double gamma_;
    std::vector<double> phi_;
    int cfl_warnings_ = 0;
};

PlasmaTendency rhs(const PlasmaState& s);
PlasmaState step_rk4(const PlasmaState& s, double dt);

struct Conserved {
    double mass, momentum, energy, entropy;
};

Conserved conserved_diagnostics(const PlasmaState& s);

void write_snapshot_csv(const PlasmaState& s, const std::string& path);

} // namespace epnls
