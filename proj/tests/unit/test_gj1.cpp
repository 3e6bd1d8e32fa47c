#include <gtest/gtest.h>

#include "gjn/gj1.hpp"
#include "gjn/numdiff.hpp"
#include "gjn/random.hpp"

using namespace gjn;
using namespace gjn::gj1;

namespace {

const cplx I(0.0, 1.0);

UpperHalfPoint random_uhp(Rng& rng)
{
    return {cplx(uniform(rng, -2.0, 2.0), uniform(rng, 0.2, 3.0)), cplx(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0))};
}

} // namespace

TEST(Pn, TableRows)
{
    EXPECT_EQ(pn_poly(0).str(), "1");
    EXPECT_EQ(pn_poly(1).str(), "z");
    EXPECT_EQ(pn_poly(2).str(), "w + z^2");
    EXPECT_EQ(pn_poly(3).str(), "3*z*w + z^3");
    EXPECT_EQ(pn_poly(4).str(), "3*w^2 + 6*z^2*w + z^4");
    EXPECT_EQ(pn_poly(5).str(), "15*z*w^2 + 10*z^3*w + z^5");
}

TEST(Pn, RecurrenceAndDerivative)
{
    // P_{n+1} = z P_n + n w P_{n-1} and dP_n/dz = n P_{n-1}
    const auto v = zw_vars();
    const diffops::MPoly z = diffops::MPoly::variable(v, 0), w = diffops::MPoly::variable(v, 1);
    for (int n = 1; n < 12; ++n) {
        EXPECT_EQ(pn_poly(n + 1), z * pn_poly(n) + w * pn_poly(n - 1) * exact::Coef(n));
        EXPECT_EQ(pn_poly(n).derivative(0), pn_poly(n - 1) * exact::Coef(n));
    }
}

TEST(Pn, NormalizedRecurrenceMatchesExact)
{
    for (int n = 0; n <= 20; ++n) {
        const cplx z(0.3, -0.2), w(-0.1, 0.4);
        const cplx exact_value = eval(pn_poly(n), z, w) / std::sqrt(static_cast<double>(factorial(n)));
        EXPECT_LT(std::abs(pn_normalized(n, z, w) - exact_value), 1e-13 * std::max(1.0, std::abs(exact_value)));
    }
}

TEST(Hermite, ExactAndNumeric)
{
    for (int n = 0; n <= 12; ++n)
        EXPECT_EQ(hermite_exact(n), pn_poly(n)) << n;
    EXPECT_LT(hermite_check(0, 0.3, 0.2), 1e-15);
    EXPECT_LT(hermite_check(2, 0.3, 0.2), 1e-14);
    EXPECT_LE(hermite_check(5, 0.3, 0.2), 1e-12);
    EXPECT_LE(hermite_check(7, cplx(0.3, -0.4), cplx(-0.2, 0.5)), 1e-11);
    try {
        hermite_check(3, 0.3, -0.2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::BranchViolation);
    }
}

TEST(Basis, Values)
{
    const double kappa = 1.0;
    const double k0 = weight_index(kappa);
    EXPECT_NEAR(weight_index(kappa_of_k(1.0)), 0.0, 0.0);
    EXPECT_LT(std::abs(basis_fn(0, 0, kappa, 0.3, 0.2) - 1.0), 1e-15);
    EXPECT_LT(std::abs(f_e(k0, 1, 0.2) - std::sqrt(2.0 * k0) * 0.2), 1e-15);
    const cplx w(0.2, -0.1);
    EXPECT_LT(std::abs(f_e(0.9, 1, w) - std::sqrt(1.8) * w), 1e-15);
    EXPECT_THROW(basis_fn(0, 0, 0.25, 0.0, 0.0), Error);
}

TEST(Basis, KernelSeries)
{
    const cplx z(0.1), w(0.2), zp(0.2), wp(0.1);
    const cplx closed = kernel_closed(z, w, zp, wp, 1.0);
    EXPECT_LE(std::abs(kernel_partial_sum(z, w, zp, wp, 1.0, 40) - closed) / std::abs(closed), 1e-6);
    double prev = 1e300;
    for (int order : {4, 8, 16, 32}) {
        const double e = std::abs(kernel_partial_sum(0.5, 0.5, 0.4, 0.45, 1.5, order) - kernel_closed(0.5, 0.5, 0.4, 0.45, 1.5));
        EXPECT_LT(e, prev);
        prev = e;
    }
}

TEST(Basis, KernelMatchesJacobiKernel)
{
    // kappa = k/4 ties the n = 1 kernel to the general one
    Rng rng(3);
    for (int s = 0; s < 20; ++s) {
        const CSPoint x = jacobi::random_point(1, 0.8, 0.6, rng), y = jacobi::random_point(1, 0.8, 0.6, rng);
        const double k = 3.0;
        const cplx a = kernel_closed(y.z[0], y.W.W()(0, 0), x.z[0], x.W.W()(0, 0), kappa_of_k(k));
        EXPECT_LT(std::abs(a - jacobi::kernel(x, y, k)), 1e-12 * std::abs(a));
    }
}

TEST(Cayley, Values)
{
    const auto [w0, z0] = cayley(I, cplx(0.3, 0.2));
    EXPECT_LT(std::abs(w0), 1e-16);
    EXPECT_LT(std::abs(z0 - cplx(0.3, 0.2)), 1e-16);
    EXPECT_LT(std::abs(cayley(2.0 * I, 0.0).first - 1.0 / 3.0), 1e-16);
    Rng rng(4);
    for (int s = 0; s < 100; ++s) {
        const UpperHalfPoint p = random_uhp(rng);
        const auto [w, z] = cayley(p.v, p.u);
        EXPECT_LT(std::abs(w), 1.0);
        const UpperHalfPoint q = cayley_inverse(w, z);
        EXPECT_LT(std::abs(q.v - p.v) + std::abs(q.u - p.u), 1e-12 * (1.0 + std::abs(p.v)));
    }
    EXPECT_THROW(cayley(cplx(1.0, 0.0), 0.0), Error);
}

TEST(KbForm, AgreesWithPullback)
{
    EXPECT_LE(kb_form_check(I, 0.0, 1.0), 1e-10);
    EXPECT_NEAR(halfplane_form(I, 0.0, 1.0)(0, 0).real(), 0.5, 1e-15);
    const double kappa = kappa_of_k(4.0);
    Rng rng(5);
    for (int s = 0; s < 100; ++s) {
        const UpperHalfPoint p = random_uhp(rng);
        EXPECT_LE(kb_form_check(p.v, p.u, kappa), 1e-8);
    }
    // -2 kappa/(vb - v)^2 at v = i
    EXPECT_NEAR(halfplane_form(I, 0.0, kappa)(0, 0).real(), 0.5 * kappa, 1e-15);
}

TEST(KbForm, DiskFormIsTheJacobiForm)
{
    Rng rng(6);
    for (int s = 0; s < 50; ++s) {
        const CSPoint x = jacobi::random_point(1, 1.0, 0.7, rng);
        const double k = 4.0;
        const Eigen::Matrix2cd A = disk_form(x.z[0], x.W.W()(0, 0), kappa_of_k(k));
        const CMat H = jacobi::kahler_form(x, k);
        EXPECT_LT((A - Eigen::Matrix2cd(H)).cwiseAbs().maxCoeff(), 1e-12 * A.cwiseAbs().maxCoeff());
    }
}

TEST(EzMetric, ValuesAndPositivity)
{
    const Eigen::Matrix4d g = ez_metric({0.0, 1.0, 0.0, 0.0}, 2.0);
    EXPECT_LT((g - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff(), 1e-16);
    Rng rng(7);
    for (int s = 0; s < 100; ++s) {
        const EZCoords c{uniform(rng, -2, 2), uniform(rng, 0.2, 3), uniform(rng, -1, 1), uniform(rng, -1, 1)};
        const double kappa = uniform(rng, 0.3, 3.0);
        const Eigen::Matrix4d m = ez_metric(c, kappa);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(m);
        EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
        EXPECT_LT((ez_metric_from_form(c, kappa) - m).cwiseAbs().maxCoeff(), 1e-8 * m.cwiseAbs().maxCoeff());
    }
    EXPECT_THROW(ez_metric({0.0, -1.0, 0.0, 0.0}, 1.0), Error);
}

TEST(Gj0, TrivialCases)
{
    const UpperHalfPoint p{cplx(0.3, 1.2), cplx(0.1, -0.4)};
    const UpperHalfPoint q = gj0_act(Gj0Element{}, p);
    EXPECT_EQ(q.v, p.v);
    EXPECT_EQ(q.u, p.u);
    Gj0Element t;
    t.l << 1.0, 0.0;
    const UpperHalfPoint r = gj0_act(t, p);
    EXPECT_LT(std::abs(r.u - (p.u + p.v)), 1e-16);
    Gj0Element bad;
    bad.M(0, 0) = 2.0;
    EXPECT_THROW(gj0_act(bad, p), Error);
}

TEST(Gj0, LeftAction)
{
    Rng rng(8);
    for (int s = 0; s < 100; ++s) {
        const Gj0Element g1 = gj0_random(rng), g2 = gj0_random(rng);
        const UpperHalfPoint p = random_uhp(rng);
        const UpperHalfPoint a = gj0_act(g1, gj0_act(g2, p));
        const UpperHalfPoint b = gj0_act(gj0_compose(g1, g2), p);
        EXPECT_GT(a.v.imag(), 0.0);
        EXPECT_LT(std::abs(a.v - b.v) + std::abs(a.u - b.u), 1e-11 * (1.0 + std::abs(a.v) + std::abs(a.u)));
    }
}

TEST(Gj0, CayleyIntertwinesActions)
{
    Rng rng(9);
    for (int s = 0; s < 100; ++s) {
        const Gj0Element g = gj0_random(rng);
        const UpperHalfPoint p = random_uhp(rng);
        const UpperHalfPoint gp = gj0_act(g, p);
        const auto [w1, z1] = cayley(gp.v, gp.u);
        const auto [w, z] = cayley(p.v, p.u);
        const CSPoint x{CVec::Constant(1, z), SiegelPoint::unchecked(CMat::Constant(1, 1, w))};
        const CSPoint y = jacobi::act(cayley_to_jacobi(g), x);
        EXPECT_LT(std::abs(y.W.W()(0, 0) - w1) + std::abs(y.z[0] - z1), 1e-8);
    }
}
