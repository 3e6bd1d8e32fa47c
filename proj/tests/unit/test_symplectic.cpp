#include <gtest/gtest.h>

#include "gjn/numdiff.hpp"
#include "gjn/symplectic.hpp"
#include "support/oracles.hpp"

using namespace gjn;
using namespace gjn::symplectic;

namespace {

CMat scalar(cplx v) { return CMat::Constant(1, 1, v); }

SpElement hyperbolic(double r) { return sp_new(scalar(std::cosh(r)), scalar(std::sinh(r))); }

double dist(const SpElement& g, const SpElement& h)
{
    return std::max(max_abs(CMat(g.a - h.a)), max_abs(CMat(g.b - h.b)));
}

SiegelPoint rand_point(int n, double radius, Rng& rng) { return SiegelPoint::make(random_siegel(n, radius, rng)); }

} // namespace

TEST(SpNew, ValidAndInvalid)
{
    const SpElement id = sp_new(eye(2), CMat::Zero(2, 2));
    EXPECT_LT(sp_residual(id.a, id.b), 1e-16);
    EXPECT_NO_THROW(hyperbolic(0.3));
    try {
        sp_new(scalar(1.0), scalar(0.5));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NotSymplectic);
    }
}

TEST(SpRandom, DrawsAreSymplecticAndReproducible)
{
    Rng rng(1);
    for (int t = 0; t < 1000; ++t) {
        const int n = 1 + t % 3;
        const SpElement g = sp_random(n, 0.7, rng);
        EXPECT_NO_THROW(sp_new(g.a, g.b));
    }
    Rng r1(99), r2(99);
    const SpElement g1 = sp_random(3, 0.5, r1);
    const SpElement g2 = sp_random(3, 0.5, r2);
    EXPECT_TRUE(g1.a == g2.a && g1.b == g2.b);
    Rng r3(5);
    const SpElement u = sp_random(2, 0.0, r3);
    EXPECT_LT(max_abs(u.b), 1e-15);
    EXPECT_LT(max_abs(CMat(u.a * u.a.adjoint() - eye(2))), 1e-13);
}

TEST(SpInverse, ScalarAndRandom)
{
    const SpElement g = hyperbolic(0.3);
    const SpElement gi = sp_inverse(g);
    EXPECT_NEAR(gi.a(0, 0).real(), std::cosh(0.3), 1e-15);
    EXPECT_NEAR(gi.b(0, 0).real(), -std::sinh(0.3), 1e-15);
    Rng rng(2);
    for (int t = 0; t < 50; ++t) {
        const SpElement h = sp_random(1 + t % 3, 0.7, rng);
        const SpElement p = sp_compose(h, sp_inverse(h));
        EXPECT_LT(dist(p, sp_identity(h.dim())), 1e-11);
    }
}

TEST(SpCompose, IdentityAndAssociativity)
{
    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
        const int n = 1 + t % 3;
        const SpElement a = sp_random(n, 0.7, rng), b = sp_random(n, 0.7, rng), c = sp_random(n, 0.7, rng);
        EXPECT_LT(dist(sp_compose(a, sp_identity(n)), a), 1e-15);
        EXPECT_LT(dist(sp_compose(sp_compose(a, b), c), sp_compose(a, sp_compose(b, c))), 1e-11);
        // agrees with the 2n x 2n block product
        const CMat full = a.full() * b.full();
        EXPECT_LT(max_abs(CMat(sp_compose(a, b).full() - full)), 1e-12);
    }
}

TEST(Gauss, IdentityScalarRandom)
{
    const GaussFactors f = gauss_decompose(sp_identity(2));
    EXPECT_LT(max_abs(f.Y), 1e-16);
    EXPECT_LT(max_abs(f.Yp), 1e-16);
    EXPECT_LT(max_abs(CMat(f.gamma - eye(2))), 1e-16);
    EXPECT_LT(max_abs(CMat(f.delta - eye(2))), 1e-16);
    EXPECT_NEAR(gauss_decompose(hyperbolic(0.3)).Y(0, 0).real(), std::tanh(0.3), 1e-15);
    Rng rng(4);
    for (int t = 0; t < 100; ++t) {
        const SpElement g = sp_random(1 + t % 3, 0.7, rng);
        const GaussFactors gf = gauss_decompose(g);
        EXPECT_LT(max_abs(CMat(gauss_reassemble(gf) - g.full())), 1e-10);
        EXPECT_LT(max_abs(CMat(gf.Y - gf.Y.transpose())), 1e-12);
        EXPECT_LT(max_abs(CMat(gf.Yp - gf.Yp.transpose())), 1e-12);
        const CMat lhs = eye(g.dim()) - gf.Y * gf.Y.adjoint();
        EXPECT_LT(max_abs(CMat(lhs - matfun::inverse(g.a * g.a.adjoint()))), 1e-10);
    }
}

TEST(Cartan, IdentityScalarRandom)
{
    const CartanFactors f = cartan_decompose(sp_identity(2));
    EXPECT_LT(max_abs(f.Z), 1e-15);
    EXPECT_LT(max_abs(CMat(f.v - eye(2))), 1e-15);
    const CartanFactors h = cartan_decompose(hyperbolic(0.3));
    EXPECT_NEAR(h.Z(0, 0).real(), 0.3, 1e-14);
    EXPECT_NEAR(std::abs(h.v(0, 0) - 1.0), 0.0, 1e-14);
    Rng rng(5);
    for (int t = 0; t < 100; ++t) {
        const SpElement g = sp_random(1 + t % 3, 0.7, rng);
        const CartanFactors cf = cartan_decompose(g);
        EXPECT_LT(dist(cartan_synthesize(cf.Z, cf.v), g), 1e-9);
        EXPECT_LT(max_abs(CMat(cf.v * cf.v.adjoint() - eye(g.dim()))), 1e-10);
    }
}

TEST(Coordinates, ZWRoundTrip)
{
    EXPECT_LT(max_abs(w_of_z(CMat::Zero(2, 2)).W()), 1e-16);
    EXPECT_NEAR(w_of_z(scalar(0.4)).W()(0, 0).real(), std::tanh(0.4), 1e-15);
    Rng rng(6);
    for (int t = 0; t < 100; ++t) {
        const CMat Z = random_symmetric(2, rng);
        const SiegelPoint W = w_of_z(Z);
        EXPECT_TRUE(matfun::is_siegel(W.W()));
        EXPECT_LT(max_abs(CMat(z_of_w(W) - Z)), 1e-11);
    }
}

TEST(Coordinates, EtaMatchesLogCosh)
{
    Rng rng(7);
    for (int t = 0; t < 20; ++t) {
        const CMat Z = 0.8 * random_symmetric(2, rng);
        const CMat lc = matfun::herm_func(Z * Z.adjoint(), [](double l) {
            return -2.0 * std::log(std::cosh(std::sqrt(std::max(l, 0.0))));
        });
        EXPECT_LT(max_abs(CMat(eta(w_of_z(Z)) - lc)), 1e-11);
    }
}

TEST(Coordinates, BoundaryRejected)
{
    try {
        z_of_w(SiegelPoint::unchecked(scalar(1.0)));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::DomainViolation);
    }
}

TEST(Moebius, TrivialCasesAndForms)
{
    Rng rng(8);
    const SiegelPoint W = rand_point(2, 0.7, rng);
    EXPECT_LT(max_abs(CMat(moebius(sp_identity(2), W).W() - W.W())), 1e-15);
    const CMat u = random_unitary(2, rng);
    const SpElement gu{u, CMat::Zero(2, 2)};
    EXPECT_LT(max_abs(CMat(moebius(gu, W).W() - u * W.W() * u.transpose())), 1e-14);
    EXPECT_LT(max_abs(moebius(gu, SiegelPoint::origin(2)).W()), 1e-16);
    for (int t = 0; t < 100; ++t) {
        const int n = 1 + t % 3;
        const SpElement g = sp_random(n, 0.7, rng);
        const SiegelPoint X = rand_point(n, 0.8, rng);
        const SiegelPoint Y = moebius(g, X);
        EXPECT_LT(max_abs(CMat(Y.W() - moebius_alt(g, X))), 1e-11);
        EXPECT_TRUE(matfun::is_siegel(Y.W()));
        EXPECT_LT(max_abs(CMat(moebius_inverse(g, Y).W() - X.W())), 1e-11);
    }
}

TEST(Moebius, LeftAction)
{
    Rng rng(9);
    for (int t = 0; t < 100; ++t) {
        const int n = 1 + t % 3;
        const SpElement g1 = sp_random(n, 0.7, rng), g2 = sp_random(n, 0.7, rng);
        const SiegelPoint W = rand_point(n, 0.8, rng);
        const CMat lhs = moebius(g1, moebius(g2, W)).W();
        const CMat rhs = moebius(sp_compose(g1, g2), W).W();
        EXPECT_LT(max_abs(CMat(lhs - rhs)), 1e-10);
    }
}

TEST(BallCompose, TrivialAndScalar)
{
    Rng rng(10);
    const SiegelPoint W = rand_point(2, 0.7, rng);
    const auto a = ball_compose(SiegelPoint::origin(2), W);
    EXPECT_LT(max_abs(CMat(a.W3.W() - W.W())), 1e-14);
    EXPECT_LT(max_abs(CMat(a.v - eye(2))), 1e-14);
    const auto b = ball_compose(W, SiegelPoint::origin(2));
    EXPECT_LT(max_abs(CMat(b.W3.W() - W.W())), 1e-14);
    EXPECT_LT(std::abs(b.detv - 1.0), 1e-15);
    const auto c = ball_compose(SiegelPoint::make(scalar(0.3)), SiegelPoint::make(scalar(0.3)));
    EXPECT_NEAR(c.W3.W()(0, 0).real(), 0.6 / 1.09, 1e-15);
    EXPECT_NEAR(std::abs(c.detv - 1.0), 0.0, 1e-15);
}

TEST(BallCompose, MatchesGroupProduct)
{
    Rng rng(11);
    for (int t = 0; t < 100; ++t) {
        const int n = 1 + t % 3;
        const SiegelPoint W1 = rand_point(n, 0.7, rng), W2 = rand_point(n, 0.7, rng);
        const auto bc = ball_compose(W1, W2);
        const SpElement prod = sp_compose(sp_of(W1), sp_of(W2));
        const CartanFactors cf = cartan_decompose(prod);
        EXPECT_LT(max_abs(CMat(bc.W3.W() - w_of_z(cf.Z).W())), 1e-9);
        EXPECT_LT(max_abs(CMat(bc.v - cf.v)), 1e-9);
        EXPECT_NEAR(std::abs(bc.detv), 1.0, 1e-10);
        EXPECT_LT(std::abs(bc.v.determinant() - bc.detv), 1e-9);
    }
}

TEST(SpKernel, Values)
{
    EXPECT_NEAR(std::abs(sp_kernel(SiegelPoint::origin(2), SiegelPoint::origin(2), 3.0) - 1.0), 0.0, 1e-16);
    const SiegelPoint p = SiegelPoint::make(scalar(0.6));
    EXPECT_NEAR(sp_kernel(p, p, 4.0).real(), 2.44140625, 1e-13);
    Rng rng(12);
    for (int t = 0; t < 50; ++t) {
        const int n = 1 + t % 3;
        const SiegelPoint X = rand_point(n, 0.7, rng), Y = rand_point(n, 0.7, rng);
        EXPECT_LT(std::abs(sp_kernel(X, Y, 3.0) - std::conj(sp_kernel(Y, X, 3.0))), 1e-12);
    }
}

TEST(SpKernel, TransformationLaw)
{
    Rng rng(13);
    for (double k : {1.0, 2.0, 4.0})
        for (int t = 0; t < 60; ++t) {
            const int n = 1 + t % 3;
            const SpElement g = sp_random(n, 0.5, rng);
            const SiegelPoint X = rand_point(n, 0.5, rng), Y = rand_point(n, 0.5, rng);
            const cplx lhs = sp_kernel(moebius(g, X), moebius(g, Y), k);
            const cplx rhs = sp_multiplier(g, Y, k) * sp_kernel(X, Y, k) * std::conj(sp_multiplier(g, X, k));
            // k = 1 carries a square-root sign, only the modulus is fixed
            if (k == 1.0)
                EXPECT_NEAR(std::abs(lhs), std::abs(rhs), 1e-9 * std::abs(lhs));
            else
                EXPECT_LT(std::abs(lhs - rhs), 1e-9 * std::abs(lhs));
        }
}

TEST(SpMultiplier, Cocycle)
{
    Rng rng(14);
    for (int t = 0; t < 100; ++t) {
        const int n = 1 + t % 3;
        const SpElement g1 = sp_random(n, 0.5, rng), g2 = sp_random(n, 0.5, rng);
        const SiegelPoint W = rand_point(n, 0.6, rng);
        const double k = 2.0;
        const cplx lhs = sp_multiplier(sp_compose(g1, g2), W, k);
        const cplx rhs = sp_multiplier(g1, moebius(g2, W), k) * sp_multiplier(g2, W, k);
        EXPECT_LT(std::abs(lhs - rhs), 1e-10 * std::abs(lhs));
    }
}

TEST(SpRepApply, TrivialAndHomomorphism)
{
    Rng rng(15);
    const auto one = [](const SiegelPoint&) { return cplx(1.0); };
    const auto poly = [](const SiegelPoint& W) { return cplx(1.0) + W.W().sum() + W.W().squaredNorm(); };
    const SiegelPoint W = rand_point(2, 0.6, rng);
    EXPECT_LT(std::abs(sp_rep_apply(sp_identity(2), 4, poly, W) - poly(W)), 1e-15);
    const CMat u = random_unitary(2, rng);
    const SpElement gu{u, CMat::Zero(2, 2)};
    EXPECT_LT(std::abs(sp_rep_apply(gu, 4, one, SiegelPoint::origin(2)) - std::pow(u.determinant(), -2.0)), 1e-13);
    for (int t = 0; t < 50; ++t) {
        const int n = 1 + t % 3;
        const SpElement g1 = sp_random(n, 0.5, rng), g2 = sp_random(n, 0.5, rng);
        const SiegelPoint X = rand_point(n, 0.5, rng);
        const auto f = [&](const SiegelPoint& Y) { return poly(Y); };
        const auto inner = [&](const SiegelPoint& Y) { return sp_rep_apply(g2, 2, f, Y); };
        const cplx lhs = sp_rep_apply(g1, 2, inner, X);
        const cplx rhs = sp_rep_apply(sp_compose(g1, g2), 2, f, X);
        EXPECT_LT(std::abs(lhs - rhs), 1e-10 * std::abs(rhs));
    }
    try {
        sp_rep_apply(sp_identity(1), 3, one, SiegelPoint::origin(1));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::BranchViolation);
    }
    EXPECT_NO_THROW(sp_rep_apply(sp_identity(1), 3, one, SiegelPoint::origin(1), Branch::Unchecked));
}

TEST(TwoForm, OriginValues)
{
    // one complex coordinate: -(k/2) log(1-|w|^2) has w w* coefficient k/2, i.e. 2*kappa with kappa = k/4
    const CMat h1 = sp_two_form(SiegelPoint::origin(1), 4.0);
    EXPECT_NEAR(h1(0, 0).real(), 2.0, 1e-15);
    const double kappa = 4.0 / 4.0;
    EXPECT_NEAR(h1(0, 0).real(), 2.0 * kappa, 1e-15);
    // off-diagonal coordinate w12 enters det(1-WW*) twice
    const CMat h2 = sp_two_form(SiegelPoint::origin(2), 4.0);
    EXPECT_NEAR(h2(0, 0).real(), 2.0, 1e-15);
    EXPECT_NEAR(h2(1, 1).real(), 4.0, 1e-15);
    EXPECT_NEAR(h2(2, 2).real(), 2.0, 1e-15);
}

TEST(TwoForm, HessianAndPositivity)
{
    Rng rng(16);
    for (int t = 0; t < 100; ++t) {
        const int n = 1 + t % 3;
        const SiegelPoint W = rand_point(n, 0.8, rng);
        const CMat H = sp_two_form(W, 4.0);
        Eigen::SelfAdjointEigenSolver<CMat> es(H);
        EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
        if (t < 30) {
            const auto pairs = sym_pairs(n);
            auto build = [&](const CVec& xi) {
                CMat M(n, n);
                for (std::size_t p = 0; p < pairs.size(); ++p)
                    M(pairs[p].first, pairs[p].second) = M(pairs[p].second, pairs[p].first) = xi[Eigen::Index(p)];
                return M;
            };
            CVec xi(Eigen::Index(pairs.size()));
            for (std::size_t p = 0; p < pairs.size(); ++p)
                xi[Eigen::Index(p)] = W.W()(pairs[p].first, pairs[p].second);
            auto f = [&](const CVec& x) {
                const CMat M = build(x);
                return -2.0 * matfun::principal_logdet(eye(n) - M * M.conjugate()).real();
            };
            EXPECT_LT(max_abs(CMat(oracle::fd_mixed_hessian(f, xi) - H)), 1e-6 * std::max(1.0, max_abs(H)) * 10.0);
        }
    }
}

TEST(Density, ValuesAndInvariance)
{
    EXPECT_EQ(sp_density(SiegelPoint::origin(2)), 1.0);
    EXPECT_NEAR(sp_density(SiegelPoint::make(scalar(0.6))), 2.44140625, 1e-13);
    Rng rng(17);
    for (int t = 0; t < 30; ++t) {
        const int n = 1 + t % 3;
        const SpElement g = sp_random(n, 0.5, rng);
        const SiegelPoint W = rand_point(n, 0.6, rng);
        const auto pairs = sym_pairs(n);
        auto to_xi = [&](const CMat& M) {
            CVec xi(Eigen::Index(pairs.size()));
            for (std::size_t p = 0; p < pairs.size(); ++p)
                xi[Eigen::Index(p)] = M(pairs[p].first, pairs[p].second);
            return xi;
        };
        auto F = [&](const CVec& xi) {
            CMat M(n, n);
            for (std::size_t p = 0; p < pairs.size(); ++p)
                M(pairs[p].first, pairs[p].second) = M(pairs[p].second, pairs[p].first) = xi[Eigen::Index(p)];
            return to_xi(moebius(g, SiegelPoint::unchecked(M)).W());
        };
        const CMat J = numdiff::holomorphic_jacobian(F, to_xi(W.W()));
        const double lhs = sp_density(moebius(g, W)) * std::norm(J.determinant());
        EXPECT_NEAR(lhs / sp_density(W), 1.0, 1e-6);
    }
}

TEST(Jn, KnownValuesAndForms)
{
    EXPECT_NEAR(jn(0.0, 1), oracle::pi, 1e-14);
    EXPECT_NEAR(jn(2.0, 1), oracle::pi / 3.0, 1e-14);
    EXPECT_NEAR(jn(0.0, 1), oracle::disk_integral(0.0), 1e-10);
    EXPECT_NEAR(jn(2.0, 1), oracle::disk_integral(2.0), 1e-10);
    Rng rng(18);
    for (int n = 1; n <= 4; ++n)
        for (int t = 0; t < 50; ++t) {
            const double p = uniform(rng, -0.99, 12.0);
            EXPECT_NEAR(jn_gamma_ratio(p, n) / jn_product(p, n), 1.0, 1e-12);
        }
    try {
        jn(-1.0, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::OutOfDomain);
    }
}

TEST(Jn, MonteCarloTwoByTwo)
{
    const auto [mean, se] = oracle::jn_monte_carlo(1.0, 2, 400000, 77);
    const double exact = jn(1.0, 2);
    EXPECT_LT(std::abs(mean - exact) / exact, 0.01) << "se " << se;
}

TEST(Lambda1, Values)
{
    EXPECT_NEAR(lambda1(4.0, 1), 1.0 / oracle::pi, 1e-15);
    EXPECT_NEAR(lambda1(6.0, 1), 2.0 / oracle::pi, 1e-15);
    EXPECT_NEAR(lambda1(8.0, 2) * jn(8.0 / 2 - 3, 2), 1.0, 1e-12);
    EXPECT_THROW(lambda1(4.0, 2), Error);
}

TEST(Wallach, Set)
{
    EXPECT_TRUE(wallach_admissible(3.0, 2));
    EXPECT_FALSE(wallach_admissible(0.5, 2));
    EXPECT_TRUE(wallach_admissible(0.0, 2));
    EXPECT_TRUE(wallach_admissible(1.0, 2));
    EXPECT_TRUE(wallach_admissible(1.5, 2));
    EXPECT_FALSE(wallach_admissible(-1.0, 1));
}
