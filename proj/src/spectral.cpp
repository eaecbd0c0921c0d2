#include "epnls/spectral.hpp"

#include "epnls/fft.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace epnls {

Grid1D::Grid1D(int n_points, double length) : n_(n_points), length_(length) {
    if (n_points < 16 || (n_points & (n_points - 1)) != 0)
        throw std::invalid_argument("grid: n_points must be a power of two >= 16");
    if (!(length > 0.0) || !std::isfinite(length)) throw std::invalid_argument("grid: length must be positive");
    auto k = std::make_shared<std::vector<double>>(n_);
    const double d = dk();
    for (int m = -n_ / 2 + 1; m <= n_ / 2; ++m) (*k)[m + n_ / 2 - 1] = d * m;
    k_ = std::move(k);
}

double Grid1D::dk() const { return 2.0 * std::numbers::pi / length_; }

Grid1D make_grid(int n_points, double length) { return Grid1D(n_points, length); }

SpectralField::SpectralField(const Grid1D& g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != g.n_points()) throw std::invalid_argument("field size does not match grid");
}

std::vector<cplx> SpectralField::half_spectrum() const { return fft::rfft(values); }

std::vector<cplx> SpectralField::spectrum() const {
    const int n = grid.n_points();
    auto h = half_spectrum();
    std::vector<cplx> out(n);
    for (int m = -n / 2 + 1; m <= n / 2; ++m) out[m + n / 2 - 1] = m >= 0 ? h[m] : std::conj(h[-m]);
    return out;
}

SpectralField SpectralField::from_half_spectrum(const Grid1D& g, const std::vector<cplx>& half) {
    return SpectralField(g, fft::irfft(half, g.n_points()));
}

SpectralField SpectralField::from_function(const Grid1D& g, const std::function<double(double)>& f) {
    SpectralField out(g);
    for (int i = 0; i < g.n_points(); ++i) out.values[i] = f(g.x(i));
    return out;
}

SpectralField apply_multiplier(const SpectralField& f, const std::function<cplx(double)>& symbol) {
    const int n = f.grid.n_points();
    std::vector<cplx> z(f.values.begin(), f.values.end());
    auto Z = fft::cfft(z);
    for (int i = 0; i < n; ++i) {
        cplx s = symbol(f.grid.k_of_index(i));
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
            throw std::invalid_argument("apply_multiplier: non-finite symbol value");
        Z[i] *= s;
    }
    auto out = fft::icfft(Z);
    SpectralField r(f.grid);
    for (int i = 0; i < n; ++i) r.values[i] = out[i].real();
    return r;
}

double dealias_cutoff(const Grid1D& g) { return 2.0 / 3.0 * g.k_max(); }

SpectralField dealias(const SpectralField& f) {
    auto h = f.half_spectrum();
    const double kc = dealias_cutoff(f.grid);
    for (size_t m = 0; m < h.size(); ++m)
        if (f.grid.dk() * m > kc) h[m] = 0.0;
    return SpectralField::from_half_spectrum(f.grid, h);
}

double norm_hs(const SpectralField& f, double s) {
    if (!(s >= 0.0)) throw std::invalid_argument("norm_hs: s must be nonnegative");
    const int n = f.grid.n_points();
    auto h = f.half_spectrum();
    double sum = 0.0;
    for (int m = 0; m <= n / 2; ++m) {
        double k = f.grid.dk() * m;
        double w = (m == 0 || m == n / 2) ? 1.0 : 2.0;
        sum += w * std::norm(h[m]) * std::pow(1.0 + k * k, s);
    }
    return std::sqrt(sum * f.grid.length());
}

void write_csv(const SpectralField& f, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os << "x,value\n";
    char buf[96];
    for (int i = 0; i < f.grid.n_points(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12e,%.12e\n", f.grid.x(i), f.values[i]);
        os << buf;
    }
}

void write_spectrum_csv(const SpectralField& f, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os << "k,re,im\n";
    auto s = f.spectrum();
    const auto& k = f.grid.wavenumbers();
    char buf[128];
    for (size_t i = 0; i < s.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12e,%.12e,%.12e\n", k[i], s[i].real(), s[i].imag());
        os << buf;
    }
}

} // namespace epnls
