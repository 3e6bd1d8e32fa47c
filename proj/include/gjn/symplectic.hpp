#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "gjn/matfun.hpp"
#include "gjn/random.hpp"

namespace gjn {

// top block row (a, b) of [[a, b], [conj b, conj a]]
struct SpElement {
    CMat a;
    CMat b;

    Eigen::Index dim() const { return a.rows(); }

    CMat full() const
    {
        const Eigen::Index n = dim();
        CMat m(2 * n, 2 * n);
        m << a, b, b.conjugate(), a.conjugate();
        return m;
    }
};

class SiegelPoint {
public:
    SiegelPoint() = default;

    static SiegelPoint make(const CMat& W, double tol = 1e-12)
    {
        if (!matfun::is_siegel(W, tol))
            fail(Errc::OutOfDomain, "W is not an interior point of the Siegel ball");
        return SiegelPoint(0.5 * (W + W.transpose()));
    }

    // for values produced by maps that preserve the ball
    static SiegelPoint unchecked(const CMat& W) { return SiegelPoint(0.5 * (W + W.transpose())); }

    static SiegelPoint origin(Eigen::Index n) { return SiegelPoint(CMat::Zero(n, n)); }

    const CMat& W() const { return W_; }
    Eigen::Index dim() const { return W_.rows(); }

private:
    explicit SiegelPoint(CMat W) : W_(std::move(W)) {}
    CMat W_;
};

struct GaussFactors {
    CMat Y, Yp, gamma, delta;
};

struct CartanFactors {
    CMat Z, v;
};

struct BallComposition {
    SiegelPoint W3;
    CMat v;
    cplx detv;
};

namespace symplectic {

inline double sp_residual(const CMat& a, const CMat& b)
{
    const Eigen::Index n = a.rows();
    const CMat I = eye(n);
    const double r1 = max_abs(CMat(a * a.adjoint() - b * b.adjoint() - I));
    const double r2 = max_abs(CMat(a * b.transpose() - b * a.transpose()));
    const double r3 = max_abs(CMat(a.adjoint() * a - b.transpose() * b.conjugate() - I));
    const double r4 = max_abs(CMat(a.transpose() * b.conjugate() - b.adjoint() * a));
    const double scale = std::max(1.0, max_abs(a) * max_abs(a));
    return std::max({r1, r2, r3, r4}) / scale;
}

inline SpElement sp_new(const CMat& a, const CMat& b, double tol = kDefaultTol)
{
    if (!matfun::is_square(a) || a.rows() != b.rows() || a.cols() != b.cols())
        fail(Errc::InvalidArgument, "a and b must be square of equal size");
    const double r = sp_residual(a, b);
    if (!(r <= tol))
        fail(Errc::NotSymplectic, "worst block residual " + std::to_string(r));
    return {a, b};
}

inline SpElement sp_identity(Eigen::Index n) { return {eye(n), CMat::Zero(n, n)}; }

inline SpElement sp_inverse(const SpElement& g) { return {g.a.adjoint(), -g.b.transpose()}; }

inline SpElement sp_compose(const SpElement& g1, const SpElement& g2, double tol = kDefaultTol)
{
    if (g1.dim() != g2.dim())
        fail(Errc::InvalidArgument, "dimension mismatch in sp_compose");
    SpElement g{g1.a * g2.a + g1.b * g2.b.conjugate(), g1.a * g2.b + g1.b * g2.a.conjugate()};
    const double r = sp_residual(g.a, g.b);
    if (!(r <= 10.0 * tol))
        fail(Errc::NotSymplectic, "composition drifted off the group, residual " + std::to_string(r));
    return g;
}

inline GaussFactors gauss_decompose(const SpElement& g)
{
    const CMat abar = g.a.conjugate();
    GaussFactors f;
    f.Y = matfun::right_divide(g.b, abar);
    f.Yp = matfun::solve(abar, g.b.conjugate());
    f.delta = abar;
    f.gamma = matfun::inverse(g.a.adjoint());
    return f;
}

inline CMat gauss_reassemble(const GaussFactors& f)
{
    const Eigen::Index n = f.Y.rows();
    CMat m(2 * n, 2 * n);
    m << f.gamma + f.Y * f.delta * f.Yp, f.Y * f.delta, f.delta * f.Yp, f.delta;
    return m;
}

inline SpElement cartan_synthesize(const CMat& Z, const CMat& v)
{
    const auto blk = matfun::cartan_blocks(Z);
    return {blk.m * v, blk.n * v.conjugate()};
}

inline CartanFactors cartan_decompose(const SpElement& g)
{
    const CMat Y = matfun::right_divide(g.b, g.a.conjugate());
    const CMat YY = Y * Y.adjoint();
    CartanFactors f;
    f.Z = matfun::herm_func(YY, [](double l) { return matfun::atanhc(matfun::clamp_sqrt(l)); }, 1e-9) * Y;
    f.Z = 0.5 * (f.Z + f.Z.transpose());
    const auto blk = matfun::cartan_blocks(f.Z);
    f.v = matfun::solve(blk.m, g.a);
    return f;
}

inline SiegelPoint w_of_z(const CMat& Z)
{
    if (!matfun::is_symmetric(Z))
        fail(Errc::NotSymmetric, "Z is not symmetric");
    const CMat ZZ = Z * Z.adjoint();
    return SiegelPoint::unchecked(
        matfun::herm_func(ZZ, [](double l) { return matfun::tanhc(matfun::clamp_sqrt(l)); }, 1e-9) * Z);
}

inline CMat z_of_w(const SiegelPoint& W)
{
    const CMat WW = W.W() * W.W().adjoint();
    const CMat Z =
        matfun::herm_func(WW, [](double l) { return matfun::atanhc(matfun::clamp_sqrt(l)); }, 1e-9) * W.W();
    return 0.5 * (Z + Z.transpose());
}

// log(1 - W W*)
inline CMat eta(const SiegelPoint& W)
{
    const CMat G = eye(W.dim()) - W.W() * W.W().adjoint();
    return matfun::herm_func(G, [](double l) { return l > 0 ? std::log(l) : std::numeric_limits<double>::quiet_NaN(); }, 1e-9);
}

// Cartan synthesis with v = 1
inline SpElement sp_of(const SiegelPoint& W)
{
    const CMat G = eye(W.dim()) - W.W() * W.W().adjoint();
    const CMat m = matfun::herm_func(G, [](double l) { return l > 0 ? 1.0 / std::sqrt(l) : std::numeric_limits<double>::quiet_NaN(); }, 1e-9);
    return {m, m * W.W()};
}

inline SiegelPoint moebius(const SpElement& g, const SiegelPoint& W)
{
    const CMat num = g.a * W.W() + g.b;
    const CMat den = g.b.conjugate() * W.W() + g.a.conjugate();
    return SiegelPoint::unchecked(matfun::right_divide(num, den));
}

// (W b* + a*)^{-1} (b^t + W a^t)
inline CMat moebius_alt(const SpElement& g, const SiegelPoint& W)
{
    return matfun::solve(W.W() * g.b.adjoint() + g.a.adjoint(), g.b.transpose() + W.W() * g.a.transpose());
}

// g^{-1}.W = (-W bbar + a)^{-1} (-b + W abar)
inline SiegelPoint moebius_inverse(const SpElement& g, const SiegelPoint& W)
{
    return SiegelPoint::unchecked(matfun::solve(g.a - W.W() * g.b.conjugate(), W.W() * g.a.conjugate() - g.b));
}

inline BallComposition ball_compose(const SiegelPoint& W1, const SiegelPoint& W2)
{
    if (W1.dim() != W2.dim())
        fail(Errc::InvalidArgument, "dimension mismatch in ball_compose");
    const Eigen::Index n = W1.dim();
    const CMat& A = W1.W();
    const CMat& B = W2.W();
    const CMat I = eye(n);
    auto inv_sqrt = [](double l) { return l > 0 ? 1.0 / std::sqrt(l) : std::numeric_limits<double>::quiet_NaN(); };
    auto sqrt_ = [](double l) { return std::sqrt(std::max(l, 0.0)); };
    const CMat left = matfun::herm_func(I - A * A.adjoint(), inv_sqrt, 1e-9);
    const CMat right = matfun::herm_func(I - A.adjoint() * A, sqrt_, 1e-9);
    const CMat W3 = left * matfun::right_divide(A + B, I + A.adjoint() * B) * right;

    const CMat M = left * (I + A * B.adjoint()) * matfun::herm_func(I - B * B.adjoint(), inv_sqrt, 1e-9);
    const CMat v = matfun::herm_func(M * M.adjoint(), inv_sqrt, 1e-9) * M;
    const double phase = matfun::principal_logdet(I + A * B.adjoint()).imag();
    return {SiegelPoint::unchecked(W3), v, std::polar(1.0, phase)};
}

inline cplx sp_kernel(const SiegelPoint& Z, const SiegelPoint& Zp, double k)
{
    return matfun::detpow(eye(Z.dim()) - Zp.W() * Z.W().adjoint(), -k / 2.0);
}

// J(g, W) = det(a* + W b*)^{k/2}
inline cplx sp_multiplier(const SpElement& g, const SiegelPoint& W, double k)
{
    return matfun::detpow(g.a.adjoint() + W.W() * g.b.adjoint(), k / 2.0);
}

inline std::vector<std::pair<int, int>> sym_pairs(int n)
{
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            out.emplace_back(i, j);
    return out;
}

// Hermitian coefficient matrix of the invariant two-form in the coordinates w_ij, i <= j
inline CMat sp_two_form(const SiegelPoint& W, double k)
{
    const int n = static_cast<int>(W.dim());
    const CMat I = eye(n);
    const CMat M = matfun::inverse(I - W.W() * W.W().conjugate());
    const CMat Mt = matfun::inverse(I - W.W().conjugate() * W.W());
    const auto pairs = sym_pairs(n);
    auto expand = [](std::pair<int, int> p) {
        std::vector<std::pair<int, int>> v{p};
        if (p.first != p.second)
            v.emplace_back(p.second, p.first);
        return v;
    };
    const auto N = static_cast<Eigen::Index>(pairs.size());
    CMat H = CMat::Zero(N, N);
    for (Eigen::Index P = 0; P < N; ++P)
        for (Eigen::Index R = 0; R < N; ++R) {
            cplx acc = 0.0;
            for (auto [a, b] : expand(pairs[P]))
                for (auto [c, i] : expand(pairs[R]))
                    acc += M(i, a) * Mt(b, c);
            H(P, R) = 0.5 * k * acc;
        }
    return H;
}

inline double sp_density(const SiegelPoint& W)
{
    const Eigen::Index n = W.dim();
    const cplx ld = matfun::principal_logdet(eye(n) - W.W() * W.W().conjugate());
    return std::exp(-static_cast<double>(n + 1) * ld.real());
}

inline double jn_gamma_ratio(double p, int n)
{
    double lg = 0.0;
    for (int i = 1; i <= n; ++i)
        lg -= std::log(p + i);
    for (int i = 1; i <= n - 1; ++i)
        lg += std::lgamma(2 * p + 2 * i + 1) - std::lgamma(2 * p + n + 1 + i);
    return std::pow(kPi, n * (n + 1) / 2.0) * std::exp(lg);
}

inline double jn_product(double p, int n)
{
    double lg = 0.0;
    for (int i = 1; i <= n; ++i)
        lg += std::lgamma(2 * p + 2 * i) - std::lgamma(2 * p + n + i + 1);
    return std::pow(2.0, n) * std::pow(kPi, n * (n + 1) / 2.0) * std::exp(lg);
}

inline double jn(double p, int n)
{
    if (n < 1)
        fail(Errc::OutOfDomain, "jn needs n >= 1");
    if (!(p > -1.0))
        fail(Errc::OutOfDomain, "jn needs p > -1");
    const double a = jn_gamma_ratio(p, n);
    const double b = jn_product(p, n);
    if (std::abs(a - b) > 1e-12 * std::abs(a))
        fail(Errc::FormMismatch, "closed forms of J_n disagree");
    return a;
}

inline double lambda1(double k, int n)
{
    if (n < 1 || !(k > 2.0 * n))
        fail(Errc::OutOfDomain, "lambda1 needs k > 2n");
    double lg = 0.0;
    for (int i = 1; i <= n; ++i)
        lg += std::lgamma(k - i) - std::lgamma(k - 2.0 * i);
    const double direct = std::pow(2.0, -n) * std::pow(kPi, -n * (n + 1) / 2.0) * std::exp(lg);
    const double via_jn = 1.0 / jn(k / 2.0 - n - 1.0, n);
    if (std::abs(direct - via_jn) > 1e-12 * std::abs(via_jn))
        fail(Errc::FormMismatch, "Lambda_1 routes disagree");
    return direct;
}

inline bool wallach_admissible(double k, int n)
{
    if (k > n - 1)
        return true;
    for (int j = 0; j <= n - 1; ++j)
        if (k == static_cast<double>(j))
            return true;
    return false;
}

inline bool is_even_integer(double k) { return std::isfinite(k) && std::floor(k) == k && std::fmod(k, 2.0) == 0.0; }

enum class Branch { EvenOnly, Unchecked };

// det(a - W bbar)^{-k/2} f(g^{-1}.W)
inline cplx sp_rep_apply(const SpElement& g, double k, const std::function<cplx(const SiegelPoint&)>& f,
                         const SiegelPoint& W, Branch branch = Branch::EvenOnly)
{
    if (branch == Branch::EvenOnly && !is_even_integer(k))
        fail(Errc::BranchViolation, "sp_rep_apply needs even integer k");
    const CMat D = g.a - W.W() * g.b.conjugate();
    return matfun::detpow(D, -k / 2.0) * f(moebius_inverse(g, W));
}

inline SpElement sp_random(Eigen::Index n, double scale, Rng& rng)
{
    CMat Z = scale * random_symmetric(n, rng);
    const double s = spectral_norm(Z);
    if (s > scale && s > 0)
        Z *= scale / s;
    const CMat v = random_unitary(n, rng);
    return cartan_synthesize(Z, v);
}

} // namespace symplectic
} // namespace gjn
