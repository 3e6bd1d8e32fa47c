#pragma once

#include <cstdint>
#include <random>

#include "gjn/matfun.hpp"

namespace gjn {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// independent generator for substream `index` of `master`
inline Rng substream(std::uint64_t master, std::uint64_t index)
{
    std::seed_seq seq{splitmix64(master), splitmix64(master ^ splitmix64(index + 1))};
    return Rng(seq);
}

// libstdc++ normal_distribution caches values; Box-Muller keeps draws reproducible across libraries
inline double std_normal(Rng& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double u1 = u(rng);
    while (u1 <= 0.0)
        u1 = u(rng);
    const double u2 = u(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

inline double uniform(Rng& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline cplx complex_normal(Rng& rng) { return {std_normal(rng), std_normal(rng)}; }

inline CMat gaussian_matrix(Eigen::Index r, Eigen::Index c, Rng& rng)
{
    CMat m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j)
            m(i, j) = complex_normal(rng);
    return m;
}

inline CVec gaussian_vector(Eigen::Index n, Rng& rng)
{
    CVec v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v[i] = complex_normal(rng);
    return v;
}

inline CMat random_symmetric(Eigen::Index n, Rng& rng)
{
    const CMat g = gaussian_matrix(n, n, rng);
    return 0.5 * (g + g.transpose());
}

// Haar unitary: QR of a Ginibre matrix with the diagonal phase fixed
inline CMat random_unitary(Eigen::Index n, Rng& rng)
{
    const CMat g = gaussian_matrix(n, n, rng);
    Eigen::HouseholderQR<CMat> qr(g);
    CMat q = qr.householderQ() * CMat::Identity(n, n);
    const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < n; ++i) {
        const cplx d = r(i, i);
        const double ad = std::abs(d);
        if (ad > 0)
            q.col(i) *= d / ad;
    }
    return q;
}

// symmetric W with spectral norm at most `radius`
inline CMat random_siegel(Eigen::Index n, double radius, Rng& rng)
{
    CMat w = random_symmetric(n, rng);
    const double s = spectral_norm(w);
    if (s > 0)
        w *= radius * uniform(rng, 0.0, 1.0) / s;
    return w;
}

inline CVec random_ball_vector(Eigen::Index n, double radius, Rng& rng)
{
    CVec v = gaussian_vector(n, rng);
    const double s = v.norm();
    if (s > 0)
        v *= radius * uniform(rng, 0.0, 1.0) / s;
    return v;
}

} // namespace gjn
