#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "gjn/jacobi.hpp"
#include "gjn/random.hpp"

namespace gjn {

struct WeightedPoint {
    CSPoint x;
    double weight = 0.0;
};

struct McEstimate {
    cplx mean;
    double stderr_ = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t accepted = 0;
};

namespace measure {

inline constexpr std::uint64_t kBlockSize = 4096;

// Draws from Lambda Q K^{-1} dz dW: W uniform in the box [-1,1] per real coordinate,
// z exactly Gaussian for fixed W with exponent -F(z, W)
class BaseMeasureSampler {
public:
    BaseMeasureSampler(int n, double k) : n_(n), k_(k), mc_(jacobi::measure_constants(n, k))
    {
        d_ = n * (n + 1) / 2;
        log_box_ = 2.0 * d_ * std::log(2.0);
    }

    const MeasureConstants& constants() const { return mc_; }

    // one draw; rejected W yield nullopt (weight zero)
    std::optional<WeightedPoint> draw(Rng& rng) const
    {
        const auto pairs = symplectic::sym_pairs(n_);
        CMat W(n_, n_);
        for (const auto& [i, j] : pairs) {
            const double re = uniform(rng, -1.0, 1.0);
            const double im = uniform(rng, -1.0, 1.0);
            W(i, j) = W(j, i) = cplx(re, im);
        }
        RVec eta(2 * n_);
        for (int i = 0; i < 2 * n_; ++i)
            eta[i] = std_normal(rng);
        if (!matfun::is_siegel(W, 1e-12))
            return std::nullopt;

        const CMat G = eye(n_) - W * W.conjugate();
        const CMat M = matfun::inverse(G);
        const RMat A = quadratic_form(W, M);
        Eigen::SelfAdjointEigenSolver<RMat> es(A);
        const RVec ev = es.eigenvalues();
        if (ev.minCoeff() <= 0)
            return std::nullopt;
        // covariance (2A)^{-1}, symmetric square root
        const RMat L = es.eigenvectors() * (2.0 * ev).cwiseSqrt().cwiseInverse().asDiagonal()
                       * es.eigenvectors().transpose();
        const RVec xi = L * eta;
        CVec z(n_);
        for (int i = 0; i < n_; ++i)
            z[i] = cplx(xi[i], xi[n_ + i]);

        const double logdetG = matfun::principal_logdet(G).real();
        const double log_w = std::log(mc_.Lambda) + log_box_ + (k_ / 2.0 - (n_ + 2.0)) * logdetG
                             + n_ * std::log(kPi) - 0.5 * ev.array().log().sum();
        return WeightedPoint{CSPoint{z, SiegelPoint::unchecked(W)}, std::exp(log_w)};
    }

private:
    // F(z) = xi^T A xi in real coordinates xi = (Re z, Im z)
    RMat quadratic_form(const CMat& W, const CMat& M) const
    {
        const CMat WbM = W.conjugate() * M;
        auto F = [&](const CVec& z) {
            return z.dot(M * z).real() + (z.transpose() * WbM * z)(0).real();
        };
        const int m = 2 * n_;
        auto basis = [&](int i) {
            CVec z = CVec::Zero(n_);
            z[i % n_] = i < n_ ? cplx(1, 0) : cplx(0, 1);
            return z;
        };
        RMat A(m, m);
        for (int i = 0; i < m; ++i)
            A(i, i) = F(basis(i));
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                A(i, j) = A(j, i) = 0.5 * (F(basis(i) + basis(j)) - A(i, i) - A(j, j));
        return A;
    }

    int n_;
    double k_;
    int d_;
    double log_box_;
    MeasureConstants mc_;
};

// weighted means of several integrands over the same draws; independent of `workers`
inline std::vector<McEstimate> estimate(int n, double k, std::uint64_t samples, std::uint64_t seed,
                                        const std::vector<jacobi::PointFunction>& fs, unsigned workers = 1)
{
    const BaseMeasureSampler sampler(n, k);
    const std::uint64_t nblocks = (samples + kBlockSize - 1) / kBlockSize;
    const std::size_t nf = fs.size();
    struct Block {
        std::vector<cplx> sum;
        std::vector<double> sumsq;
        std::uint64_t accepted = 0;
    };
    std::vector<Block> blocks(nblocks);

    auto run_block = [&](std::uint64_t b) {
        Block blk{std::vector<cplx>(nf, 0.0), std::vector<double>(nf, 0.0), 0};
        Rng rng = substream(seed, b);
        const std::uint64_t lo = b * kBlockSize;
        const std::uint64_t hi = std::min(samples, lo + kBlockSize);
        for (std::uint64_t s = lo; s < hi; ++s) {
            const auto wp = sampler.draw(rng);
            if (!wp)
                continue;
            ++blk.accepted;
            for (std::size_t i = 0; i < nf; ++i) {
                const cplx v = wp->weight * fs[i](wp->x);
                blk.sum[i] += v;
                blk.sumsq[i] += std::norm(v);
            }
        }
        blocks[b] = std::move(blk);
    };

    workers = std::max(1u, workers);
    if (workers == 1) {
        for (std::uint64_t b = 0; b < nblocks; ++b)
            run_block(b);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::uint64_t b = w; b < nblocks; b += workers)
                    run_block(b);
            });
        for (auto& t : pool)
            t.join();
    }

    std::vector<McEstimate> out(nf);
    std::uint64_t accepted = 0;
    std::vector<cplx> sum(nf, 0.0);
    std::vector<double> sumsq(nf, 0.0);
    for (const auto& blk : blocks) {
        accepted += blk.accepted;
        for (std::size_t i = 0; i < nf; ++i) {
            sum[i] += blk.sum[i];
            sumsq[i] += blk.sumsq[i];
        }
    }
    const double N = static_cast<double>(samples);
    for (std::size_t i = 0; i < nf; ++i) {
        out[i].mean = sum[i] / N;
        const double var = std::max(0.0, sumsq[i] / N - std::norm(out[i].mean));
        out[i].stderr_ = std::sqrt(var / N);
        out[i].samples = samples;
        out[i].accepted = accepted;
    }
    return out;
}

struct ReproduceResult {
    cplx lhs;
    cplx rhs;
    double relerr = 0.0;
    double stderr_ = 0.0;
};

// f(x0) against Lambda * int K(x, x0) f(x) Q(x) K(x,x)^{-1} dx
inline ReproduceResult reproduce_check(const jacobi::PointFunction& f, const CSPoint& x0, double k,
                                       std::uint64_t samples, std::uint64_t seed, unsigned workers = 1)
{
    if (x0.dim() != 1)
        fail(Errc::OutOfDomain, "reproduce_check is defined for n = 1");
    if (!(k > 3.0))
        fail(Errc::OutOfDomain, "reproduce_check needs k > 3");
    jacobi::PointFunction g = [&](const CSPoint& x) { return jacobi::kernel(x, x0, k) * f(x); };
    const auto est = estimate(1, k, samples, seed, {g}, workers);
    ReproduceResult r;
    r.lhs = f(x0);
    r.rhs = est[0].mean;
    r.relerr = std::abs(r.lhs - r.rhs) / std::abs(r.lhs);
    r.stderr_ = est[0].stderr_;
    return r;
}

} // namespace measure
} // namespace gjn
