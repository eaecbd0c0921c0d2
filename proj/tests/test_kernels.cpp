#include "epnls/experiments.hpp"
#include "epnls/kernels.hpp"
#include "epnls/operator_kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace epnls;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

} // namespace

TEST_SUITE("kernels") {

TEST_CASE("bilinear and trilinear basics") {
    DispersionParams p(3.0);
    CHECK(std::abs(q_bilinear_out(1, Mode{1.0, -1, 0.0}, Mode{0.5, 1, 1.0}, p).amp) == 0.0);
    CHECK(std::abs(n_cubic_out(-1, Mode{1.0, -1, 1.0}, Mode{0.5, 1, 0.0}, Mode{2.0, 0, 1.0}, p).amp) == 0.0);
    Mode out = q_bilinear_out(0, Mode{1.0, -1, cplx(0.3, 0.2)}, Mode{0.7, 1, cplx(-1.0, 0.5)}, p);
    CHECK(out.k == doctest::Approx(1.7));
    CHECK(out.component == 0);
    CHECK_THROWS_AS(n_cubic_out(0, Mode{1.0, -1, 1.0}, Mode{1.0, -1, 1.0}, Mode{1.0, -1, 1.0}, p), std::invalid_argument);
}

TEST_CASE("reality of the quadratic kernel") {
    DispersionParams p(5.0 / 3.0);
    for (int j : {0, 1, -1})
        for (int ca : {0, 1, -1})
            for (int cb : {0, 1, -1}) {
                const cplx aa(0.4, -0.3), ab(1.1, 0.2);
                const cplx o = q_bilinear_out(j, Mode{1.3, ca, aa}, Mode{-0.4, cb, ab}, p).amp;
                const cplx m = q_bilinear_out(j, Mode{-1.3, ca, std::conj(aa)}, Mode{0.4, cb, std::conj(ab)}, p).amp;
                CHECK(std::abs(m - std::conj(o)) <= 1e-14 * std::max(1.0, std::abs(o)));
            }
}

TEST_CASE("cubic permutation symmetry") {
    DispersionParams p(3.0);
    const Mode a{1.0, -1, cplx(0.3, 0.1)}, b{-0.6, 1, cplx(0.9, -0.4)}, c{2.0, 0, cplx(-0.2, 0.7)};
    for (int j : {1, -1}) {
        const cplx ref = n_cubic_out(j, a, b, c, p).amp;
        CHECK(rel(n_cubic_out(j, b, a, c, p).amp, ref) <= 1e-14);
        CHECK(rel(n_cubic_out(j, c, b, a, p).amp, ref) <= 1e-14);
        CHECK(rel(n_cubic_out(j, b, c, a, p).amp, ref) <= 1e-14);
        CHECK(rel(n_cubic_out(j, a, c, b, p).amp, ref) <= 1e-14);
        CHECK(rel(n_cubic_out(j, c, a, b, p).amp, ref) <= 1e-14);
    }
}

TEST_CASE("symbols agree with operators applied on a grid") {
    for (double gamma : {5.0 / 3.0, 3.0}) {
        DispersionParams p(gamma);
        OperatorKernels ops(OperatorKernels::commensurate_grid(1.0, 4, 128), gamma);
        for (int j : {0, 1, -1})
            for (double ka : {-1.0, 0.25, 1.0, 2.0})
                for (double kb : {-2.0, 0.0, 0.75, 1.0})
                    for (int ca : {0, 1, -1})
                        for (int cb : {0, 1, -1}) {
                            const Mode a{ka, ca, 1.0}, b{kb, cb, 1.0};
                            CHECK(rel(q_bilinear_out(j, a, b, p).amp, ops.q(j, a, b).amp) <= 1e-10);
                        }
        for (int j : {1, -1})
            for (int ca : {0, 1, -1})
                for (int cb : {0, 1, -1})
                    for (int cc : {0, 1, -1}) {
                        const Mode a{1.0, ca, 1.0}, b{0.5, cb, 1.0}, c{-2.0, cc, 1.0};
                        CHECK(rel(n_cubic_out(j, a, b, c, p).amp, ops.n(j, a, b, c).amp) <= 1e-9);
                    }
    }
    OperatorKernels ops(OperatorKernels::commensurate_grid(1.0, 4, 64), 3.0);
    CHECK_THROWS_AS(ops.q(0, Mode{0.1, 0, 1.0}, Mode{1.0, 0, 1.0}), std::invalid_argument);
}

TEST_CASE("kernel cancellations") {
    for (double gamma : {1.5, 5.0 / 3.0, 2.0, 3.0}) {
        DispersionParams p(gamma);
        for (int i = 0; i < 100; ++i) {
            const double ell = 0.05 + 0.05 * i;
            for (int l : {1, -1}) {
                for (int j : {0, 1, -1}) CHECK(std::abs(b11_kernel(j, l, -1, 0.0, ell, p)) <= 1e-13);
                CHECK(std::abs(b11_kernel(0, l, 1, 2.0 * ell, ell, p)) <= 1e-13);
            }
        }
    }
}

TEST_CASE("b11 matches the linearized quadratic kernel") {
    DispersionParams p(3.0);
    for (int j : {0, 1, -1})
        for (int l : {1, -1})
            for (int n : {0, 1, -1})
                for (double k : {-1.5, 0.0, 0.3, 2.0})
                    for (double ell : {-0.8, 0.5, 1.0}) {
                        const cplx want = 2.0 * q_bilinear_out(j, Mode{k - ell, -1, 1.0}, Mode{ell, n, 1.0}, p).amp;
                        CHECK(rel(b11_kernel(j, l, n, k, ell, p), want) <= 1e-10);
                    }
}

TEST_CASE("weight and projections") {
    WeightParams w{0.1, 0.2};
    CHECK(theta_weight(0.0, w) == doctest::Approx(0.2));
    CHECK(theta_weight(0.1, w) == doctest::Approx(1.0));
    CHECK(theta_weight(-0.05, w) == doctest::Approx(0.6));
    CHECK(theta_weight(0.2, w) == 1.0);
    CHECK(projection(Band::low, 0.0, 0.1) == 1);
    CHECK(projection(Band::low, 0.1, 0.1) == 1);
    CHECK(projection(Band::low, 0.1000001, 0.1) == 0);
    for (double k : {-3.0, -0.1, 0.0, 0.05, 0.1, 0.2, 7.0})
        CHECK(projection(Band::low, k, 0.1) + projection(Band::high, k, 0.1) == 1);
}

TEST_CASE("normal form kernels") {
    DispersionParams p(3.0);
    WeightParams w{0.1, 0.1};
    // cancelled resonance at k = 2k0
    const cplx lim = normalform_kernel(KernelKind::k11, 0, 1, 1, 2.0, 1.0, w, p);
    const cplx v6 = normalform_kernel(KernelKind::k11, 0, 1, 1, 2.0 + 1e-6, 1.0, w, p);
    const cplx v7 = normalform_kernel(KernelKind::k11, 0, 1, 1, 2.0 + 1e-7, 1.0, w, p);
    CHECK(std::abs(v6 - v7) <= 1e-4 * std::abs(v7));
    CHECK(std::abs(lim - v7) <= 1e-4 * std::abs(v7));
    CHECK(std::abs(lim - 2.0 / 3.2) <= 1e-6);
    // asymptote of the normalized second summand
    const double k = 1e3, ell = k - 1.0;
    const auto t = b11_terms(0, 1, 0, k, ell, p);
    CHECK(std::abs(t[1] / (cplx(0.0, k - ell) * qhat(k - ell, p)) + 4.0 / 3.0) <= 1e-3);
    // genuine resonance: the numerator does not vanish at k = ell for j = n = 0
    CHECK_THROWS_AS(normalform_kernel(KernelKind::k11, 0, 1, 0, 1.0, 1.0, w, p), NontrivialResonance);
}

TEST_CASE("certificates") {
    for (const auto& c : kernel_certificates(3.0, 1.0, 0.1)) {
        INFO(c.name << " worst=" << c.worst);
        CHECK(c.pass);
    }
}

}
