#pragma once
#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace epnls {

using cplx = std::complex<double>;

// Periodic grid on [0, L) with n points.
class Grid1D {
public:
    Grid1D() = default;
    Grid1D(int n_points, double length);

    int n_points() const { return n_; }
    double length() const { return length_; }
    double dx() const { return length_ / n_; }
    double dk() const;
    double k_max() const { return dk() * (n_ / 2); }
    double x(int i) const { return i * dx(); }

    // ascending: m = -n/2+1 .. n/2
    const std::vector<double>& wavenumbers() const { return *k_; }
    // wavenumber of FFT-ordered index i (0..n-1)
    double k_of_index(int i) const { return dk() * (i <= n_ / 2 ? i : i - n_); }

    bool operator==(const Grid1D& o) const { return n_ == o.n_ && length_ == o.length_; }

private:
    int n_ = 0;
    double length_ = 0.0;
    std::shared_ptr<const std::vector<double>> k_;
};

Grid1D make_grid(int n_points, double length);

struct SpectralField {
    Grid1D grid;
    std::vector<double> values;

    SpectralField() = default;
    explicit SpectralField(const Grid1D& g) : grid(g), values(g.n_points(), 0.0) {}
    SpectralField(const Grid1D& g, std::vector<double> v);

    // Coefficients ordered like grid.wavenumbers(); f(x) = sum F(k) e^{ikx}.
    std::vector<cplx> spectrum() const;
    // FFTW half spectrum, k = 0 .. k_max
    std::vector<cplx> half_spectrum() const;
    static SpectralField from_half_spectrum(const Grid1D& g, const std::vector<cplx>& half);
    static SpectralField from_function(const Grid1D& g, const std::function<double(double)>& f);
};

SpectralField apply_multiplier(const SpectralField& f, const std::function<cplx(double)>& symbol);
SpectralField dealias(const SpectralField& f);
double norm_hs(const SpectralField& f, double s);

// 2/3 rule cutoff wavenumber
double dealias_cutoff(const Grid1D& g);

void write_csv(const SpectralField& f, const std::string& path);
void write_spectrum_csv(const SpectralField& f, const std::string& path);

} // namespace epnls
