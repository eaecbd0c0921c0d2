#pragma once
#include "epnls/kernels.hpp"
#include "epnls/spectral.hpp"

#include <array>
#include <functional>
#include <string>

namespace epnls {

// Arrays are indexed by slot(): [0] U0, [1] U1, [2] U-1.
struct NlsCoefficients {
    double gamma = 3.0;
    double k0 = 1.0;
    double omega0 = 0.0;
    double cg = 0.0;
    double mu1 = 0.0;
    double mu2 = 0.0;  // nu2
    double gamma20 = 0.0, gamma2p = 0.0, gamma2m = 0.0;
    std::array<cplx, 3> a2_of_a1sq{};
    std::array<double, 3> a0_of_a1sq{};
    std::array<double, 3> gamma0{};
    double nu2_imag = 0.0;  // leftover imaginary part of the assembled coefficient

    std::string to_text() const;
    void write(const std::string& path) const;
    static NlsCoefficients read(const std::string& path);
};

// Symmetrized interaction coefficients, returned as the output amplitude for unit inputs.
struct KernelProvider {
    std::function<cplx(int, const Mode&, const Mode&)> q;
    std::function<cplx(int, const Mode&, const Mode&, const Mode&)> n;
};

KernelProvider symbol_kernels(double gamma);
KernelProvider grid_operator_kernels(double gamma, double k0);

inline constexpr int kMeanFlowRefine = 64;  // stencil step k0/64

NlsCoefficients assemble_coefficients(double gamma, double k0);
NlsCoefficients assemble_coefficients(double gamma, double k0, const KernelProvider& kp);

// Closed forms for the second-harmonic couplings specialised to gamma = 5/3; j in {0, 1, -1}.
double gamma2_closed_form(int j, double gamma, double k0);

struct Envelope {
    Grid1D grid;
    std::vector<cplx> a;
    double slow_time = 0.0;
};

// a exp(-(X - center)^2 / w^2)
Envelope gaussian_envelope(const Grid1D& g, double amplitude, double width, double center);

Envelope split_step(const Envelope& e, double dT, const NlsCoefficients& c);

struct NlsInvariants {
    double mass, hamiltonian;
};
NlsInvariants nls_invariants(const Envelope& e, const NlsCoefficients& c);

} // namespace epnls
