#include <gtest/gtest.h>

#include "gjn/measure.hpp"
#include "support/oracles.hpp"

using namespace gjn;

namespace {

const jacobi::PointFunction kOne = [](const CSPoint&) { return cplx(1.0); };
const jacobi::PointFunction kZ2 = [](const CSPoint& x) { return cplx(x.z.squaredNorm()); };

CSPoint point1(cplx z, cplx w) { return {CVec::Constant(1, z), SiegelPoint::make(CMat::Constant(1, 1, w))}; }

} // namespace

TEST(Measure, NormalizationWithinOnePercent)
{
    const auto est = measure::estimate(1, 6.0, 1000000, 2024, {kOne, kZ2}, 4);
    EXPECT_NEAR(est[0].mean.real(), 1.0, 0.01) << "stderr " << est[0].stderr_;
    EXPECT_LT(std::abs(est[0].mean.imag()), 1e-15);
    const double ratio = est[1].mean.real() / est[0].mean.real();
    const double oracle_ratio = oracle::z_norm_ratio_n1(6.0);
    EXPECT_NEAR(ratio / oracle_ratio, 1.0, 0.02);
}

TEST(Measure, NormalizationTwoByTwo)
{
    const auto est = measure::estimate(2, 9.0, 400000, 7, {kOne}, 4);
    EXPECT_NEAR(est[0].mean.real(), 1.0, 0.03) << "stderr " << est[0].stderr_;
}

TEST(Measure, DeterministicAndWorkerIndependent)
{
    const auto a = measure::estimate(1, 6.0, 50000, 11, {kOne, kZ2}, 1);
    const auto b = measure::estimate(1, 6.0, 50000, 11, {kOne, kZ2}, 1);
    const auto c = measure::estimate(1, 6.0, 50000, 11, {kOne, kZ2}, 3);
    const auto d = measure::estimate(1, 6.0, 50000, 12, {kOne, kZ2}, 1);
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_EQ(a[i].mean, b[i].mean);
        EXPECT_EQ(a[i].mean, c[i].mean);
        EXPECT_EQ(a[i].accepted, c[i].accepted);
        EXPECT_EQ(a[i].stderr_, c[i].stderr_);
    }
    EXPECT_NE(a[0].mean, d[0].mean);
}

TEST(Measure, SamplerRejectsOutsideDomain)
{
    const measure::BaseMeasureSampler s(1, 6.0);
    Rng rng(3);
    int accepted = 0;
    const int total = 20000;
    for (int i = 0; i < total; ++i) {
        const auto wp = s.draw(rng);
        if (!wp)
            continue;
        ++accepted;
        EXPECT_TRUE(matfun::is_siegel(wp->x.W.W()));
        EXPECT_GT(wp->weight, 0.0);
    }
    // acceptance equals the disk to square area ratio pi/4
    EXPECT_NEAR(accepted / double(total), oracle::pi / 4.0, 0.02);
}

TEST(Measure, OutOfDomain)
{
    try {
        measure::estimate(1, 3.0, 10, 1, {kOne});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::OutOfDomain);
    }
    try {
        measure::reproduce_check(kOne, jacobi::origin(2), 8.0, 10, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::OutOfDomain);
    }
}

TEST(Reproduce, ConstantAtOrigin)
{
    const auto r = measure::reproduce_check(kOne, jacobi::origin(1), 6.0, 1000000, 5, 4);
    EXPECT_LE(r.relerr, 1e-2);
}

TEST(Reproduce, LinearInZ)
{
    const jacobi::PointFunction f = [](const CSPoint& x) { return x.z[0]; };
    const auto r = measure::reproduce_check(f, point1(0.2, 0.1), 6.0, 1000000, 6, 4);
    EXPECT_LE(r.relerr, 3e-2) << r.rhs;
}

TEST(Reproduce, LinearInW)
{
    const jacobi::PointFunction f = [](const CSPoint& x) { return x.W.W()(0, 0); };
    const auto r = measure::reproduce_check(f, point1(0.0, 0.3), 6.0, 1000000, 7, 4);
    EXPECT_LE(r.relerr, 3e-2) << r.rhs;
}
