#pragma once
#include "epnls/dispersion.hpp"
#include "epnls/spectral.hpp"

#include <stdexcept>
#include <vector>

namespace epnls {

// One Fourier mode amp * e^{ikx} sitting in characteristic component c in {0, 1, -1}.
struct Mode {
    double k = 0.0;
    int component = 0;
    cplx amp = 1.0;
};

struct WeightParams {
    double delta = 0.1;
    double eps = 0.1;
};

// Unsymmetrized symbol of Q_j with a in the first slot and b in the second (unit amplitudes).
cplx q_kernel(int j, const Mode& a, const Mode& b, const DispersionParams& p);
// Unsymmetrized symbol of the cubic part of N_j.
cplx n_kernel(int j, const Mode& a, const Mode& b, const Mode& c, const DispersionParams& p);

Mode q_bilinear_out(int j, const Mode& a, const Mode& b, const DispersionParams& p);
Mode n_cubic_out(int j, const Mode& a, const Mode& b, const Mode& c, const DispersionParams& p);

// b_{j,l,n}(k, k-ell, ell), summand by summand in display order
std::vector<cplx> b11_terms(int j, int l, int n, double k, double ell, const DispersionParams& p);
cplx b11_kernel(int j, int l, int n, double k, double ell, const DispersionParams& p);

double theta_weight(double k, const WeightParams& w);

enum class Band { low, high };
int projection(Band which, double k, double delta);

enum class KernelKind { k01, k10, k11 };

class NontrivialResonance : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kResonanceDenTol = 1e-12;
inline constexpr double kResonanceNumTol = 1e-10;
inline constexpr double kResonanceOffset = 1e-6;

// i P(k) b / denominator with the kind's weight ratio. For k10 the caller passes
// ell = k - l*k0 so that the carrier input sits at l*k0.
cplx normalform_kernel(KernelKind kind, int j, int l, int n, double k, double ell, const WeightParams& w,
                       const DispersionParams& p);

} // namespace epnls
