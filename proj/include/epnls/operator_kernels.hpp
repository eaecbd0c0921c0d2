#pragma once
#include "epnls/kernels.hpp"

namespace epnls {

// Interaction coefficients obtained by applying the physical quadratic and cubic
// terms of the rhs to complex exponentials on a grid, then mapping through S^{-1}.
// Independent of the symbol formulas in kernels.cpp; used as an oracle.
class OperatorKernels {
public:
    OperatorKernels(const Grid1D& g, double gamma);

    // grid with spacing k0/refine in k, n points
    static Grid1D commensurate_grid(double k0, int refine, int n);

    Mode q(int j, const Mode& a, const Mode& b) const;
    Mode n(int j, const Mode& a, const Mode& b, const Mode& c) const;

    const Grid1D& grid() const { return grid_; }

private:
    using CField = std::vector<cplx>;
    struct Triple {
        CField rho, v, theta;
    };

    int index_of(double k) const;
    Triple mode_field(const Mode& m) const;
    CField deriv(const CField& f) const;
    CField lop(const CField& f) const;
    Triple quad(const Triple& a, const Triple& b) const;
    CField cubic_v(const Triple& a, const Triple& b, const Triple& c) const;
    cplx project(int j, double K, const Triple& f) const;

    Grid1D grid_;
    double gamma_;
};

} // namespace epnls
