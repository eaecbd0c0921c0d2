#include "epnls/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace epnls::fft {

namespace {

enum class Kind { r2c, c2r, fwd, bwd };

std::mutex plan_mutex;
std::map<std::pair<Kind, int>, fftw_plan> plans;

// Plans are created once on scratch arrays and later executed with the
// new-array API; FFTW_UNALIGNED keeps them valid for any std::vector buffer.
fftw_plan get_plan(Kind kind, int n) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_pair(kind, n);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    double* r = fftw_alloc_real(n);
    fftw_complex* c = fftw_alloc_complex(n);
    fftw_complex* c2 = fftw_alloc_complex(n);
    fftw_plan p = nullptr;
    switch (kind) {
    case Kind::r2c: p = fftw_plan_dft_r2c_1d(n, r, c, flags); break;
    case Kind::c2r: p = fftw_plan_dft_c2r_1d(n, c, r, flags); break;
    case Kind::fwd: p = fftw_plan_dft_1d(n, c, c2, FFTW_FORWARD, flags); break;
    case Kind::bwd: p = fftw_plan_dft_1d(n, c, c2, FFTW_BACKWARD, flags); break;
    }
    fftw_free(r);
    fftw_free(c);
    fftw_free(c2);
    if (!p) throw std::runtime_error("fftw plan creation failed");
    plans.emplace(key, p);
    return p;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

} // namespace

void rfft(const double* x, cplx* out, int n) {
    fftw_plan p = get_plan(Kind::r2c, n);
    fftw_execute_dft_r2c(p, const_cast<double*>(x), as_fftw(out));
    const double s = 1.0 / n;
    for (int m = 0; m <= n / 2; ++m) out[m] *= s;
}

void irfft(const cplx* half, double* out, int n) {
    // c2r overwrites its input
    thread_local std::vector<cplx> scratch;
    scratch.assign(half, half + n / 2 + 1);
    fftw_plan p = get_plan(Kind::c2r, n);
    fftw_execute_dft_c2r(p, as_fftw(scratch.data()), out);
}

std::vector<cplx> rfft(const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    std::vector<cplx> out(n / 2 + 1);
    rfft(x.data(), out.data(), n);
    return out;
}

std::vector<double> irfft(const std::vector<cplx>& half, int n) {
    if (static_cast<int>(half.size()) != n / 2 + 1) throw std::invalid_argument("irfft: size mismatch");
    std::vector<double> out(n);
    irfft(half.data(), out.data(), n);
    return out;
}

std::vector<cplx> cfft(const std::vector<cplx>& x) {
    const int n = static_cast<int>(x.size());
    std::vector<cplx> in(x), out(n);
    fftw_execute_dft(get_plan(Kind::fwd, n), as_fftw(in.data()), as_fftw(out.data()));
    const double s = 1.0 / n;
    for (auto& v : out) v *= s;
    return out;
}

std::vector<cplx> icfft(const std::vector<cplx>& X) {
    const int n = static_cast<int>(X.size());
    std::vector<cplx> in(X), out(n);
    fftw_execute_dft(get_plan(Kind::bwd, n), as_fftw(in.data()), as_fftw(out.data()));
    return out;
}

} // namespace epnls::fft
