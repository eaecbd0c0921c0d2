#pragma once
#include "epnls/plasma.hpp"

#include <array>

namespace epnls {

// Characteristic variables. U_{-1} moves right (d_t U_{-1} = -i w U_{-1}).
struct DiagState {
    SpectralField u0, u1, um1;
    double gamma = 3.0;
    double time = 0.0;

    static DiagState zero(const Grid1D& g, double gamma);
    const Grid1D& grid() const { return u0.grid; }
    SpectralField& component(int c);
    const SpectralField& component(int c) const;
};

using Mat3 = std::array<std::array<double, 3>, 3>;
using Vec3c = std::array<cplx, 3>;

// slot of component c in {0, 1, -1}
inline int slot(int c) { return c == 0 ? 0 : (c == 1 ? 1 : 2); }

// rows (rho, v, theta), columns (U0, U1, U-1)
Mat3 s_matrix(double k, double gamma);
double det_s(double k, double gamma);
Vec3c s_apply(double k, double gamma, const Vec3c& u);
Vec3c s_solve(double k, double gamma, const Vec3c& w);

PlasmaState from_diagonal(const DiagState& d);
DiagState to_diagonal(const PlasmaState& s);

} // namespace epnls
