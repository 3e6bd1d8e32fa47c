#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "gjn/matfun.hpp"
#include "gjn/symplectic.hpp"

namespace gjn {

struct JacobiElement {
    SpElement g;
    CVec alpha;
    double t = 0.0;

    Eigen::Index dim() const { return g.dim(); }
};

struct CSPoint {
    CVec z;
    SiegelPoint W;

    Eigen::Index dim() const { return z.size(); }
};

struct CocycleData {
    CVec z1;
    SiegelPoint W1;
    CVec x;
    CVec y;
    cplx lambda;
};

struct MeasureConstants {
    int n = 1;
    double k = 0.0;
    double p = 0.0;
    double Lambda = 0.0;
};

namespace jacobi {

// phase e^{i c t} carried by the central coordinate
inline constexpr double kCentralPhase = 1.0;

struct CocycleOptions {
    symplectic::Branch branch = symplectic::Branch::EvenOnly;
    double central_phase = kCentralPhase;
};

inline CSPoint make_point(const CVec& z, const CMat& W)
{
    if (z.size() != W.rows())
        fail(Errc::InvalidArgument, "z and W dimensions differ");
    return {z, SiegelPoint::make(W)};
}

inline CSPoint origin(Eigen::Index n) { return {CVec::Zero(n), SiegelPoint::origin(n)}; }

inline JacobiElement jacobi_identity(Eigen::Index n) { return {symplectic::sp_identity(n), CVec::Zero(n), 0.0}; }

// g.alpha = a alpha + b conj(alpha)
inline CVec sp_act_vector(const SpElement& g, const CVec& alpha) { return g.a * alpha + g.b * alpha.conjugate(); }

// g^{-1}.alpha = a* alpha - b^t conj(alpha)
inline CVec sp_inv_act_vector(const SpElement& g, const CVec& alpha)
{
    return g.a.adjoint() * alpha - g.b.transpose() * alpha.conjugate();
}

inline JacobiElement jacobi_compose(const JacobiElement& h1, const JacobiElement& h2, double tol = kDefaultTol)
{
    if (h1.dim() != h2.dim())
        fail(Errc::InvalidArgument, "dimension mismatch in jacobi_compose");
    const CVec a1 = sp_inv_act_vector(h2.g, h1.alpha);
    JacobiElement out;
    out.g = symplectic::sp_compose(h1.g, h2.g, tol);
    out.alpha = a1 + h2.alpha;
    out.t = h1.t + h2.t + h2.alpha.dot(a1).imag();  // dot conjugates its left argument
    return out;
}

inline JacobiElement jacobi_inverse(const JacobiElement& h)
{
    return {symplectic::sp_inverse(h.g), -sp_act_vector(h.g, h.alpha), -h.t};
}

inline CSPoint act(const JacobiElement& h, const CSPoint& x)
{
    if (h.dim() != x.dim())
        fail(Errc::InvalidArgument, "dimension mismatch in act");
    const CMat& W = x.W.W();
    const CMat D = W * h.g.b.adjoint() + h.g.a.adjoint();
    CSPoint out;
    out.z = matfun::solve(D, x.z + h.alpha - W * h.alpha.conjugate());
    out.W = symplectic::moebius(h.g, x.W);
    return out;
}

inline CocycleData lambda_cocycle(const JacobiElement& h, const CSPoint& x, double k, const CocycleOptions& opt = {})
{
    if (opt.branch == symplectic::Branch::EvenOnly && !symplectic::is_even_integer(k))
        fail(Errc::BranchViolation, "lambda_cocycle needs even integer k");
    const Eigen::Index n = x.dim();
    const CMat& W = x.W.W();
    const CMat& a = h.g.a;
    const CMat& b = h.g.b;
    CocycleData out;
    const CSPoint hx = act(h, x);
    out.z1 = hx.z;
    out.W1 = hx.W;
    out.x = matfun::solve(eye(n) - W * W.conjugate(), x.z + W * x.z.conjugate());
    const CVec ax = h.alpha + out.x;
    out.y = a * ax + b * ax.conjugate();
    const cplx pre = matfun::detpow(W * b.adjoint() + a.adjoint(), -k / 2.0);
    const cplx expo = 0.5 * out.x.dot(x.z) - 0.5 * out.y.dot(out.z1);
    const double theta = out.x.dot(h.alpha).imag();  // Im(alpha^t conj x)
    out.lambda = pre * std::exp(expo) * std::polar(1.0, theta + opt.central_phase * h.t);
    return out;
}

// 2 lambda_1 with the conj(b)^{-1} factors cancelled; valid for any b
inline cplx lambda1_general(const JacobiElement& h, const CSPoint& x)
{
    const Eigen::Index n = x.dim();
    const CMat& W = x.W.W();
    const CMat abar = h.g.a.conjugate();
    const CMat bbar = h.g.b.conjugate();
    const CVec& z = x.z;
    const CVec& al = h.alpha;
    const CVec z0 = al - W * al.conjugate();
    const CMat R = matfun::solve(abar + bbar * W, bbar);
    const CMat S = matfun::inverse(eye(n) + W * matfun::solve(abar, bbar));
    const CVec w = 2.0 * z + z0;
    const cplx two_l1 = (z.transpose() * R * z)(0) + (al.transpose() * R * w)(0)
                        + (al.conjugate().transpose() * S * w)(0);
    return 0.5 * two_l1;
}

// the same with T = conj(b)^{-1} conj(a); needs invertible b
inline cplx lambda1_b_inverse(const JacobiElement& h, const CSPoint& x)
{
    const CMat& W = x.W.W();
    const CMat T = matfun::solve(h.g.b.conjugate(), h.g.a.conjugate());
    const CMat R = matfun::inverse(W + T);
    const CVec& z = x.z;
    const CVec& al = h.alpha;
    const CVec z0 = al - W * al.conjugate();
    const CVec w = 2.0 * z + z0;
    const cplx two_l1 = (z.transpose() * R * z)(0)
                        + ((al.transpose() + al.conjugate().transpose() * T) * R * w)(0);
    return 0.5 * two_l1;
}

inline bool b_invertible(const SpElement& g)
{
    if (g.b.size() == 0)
        return false;
    Eigen::JacobiSVD<CMat> svd(g.b);
    const auto& s = svd.singularValues();
    return s(s.size() - 1) > 1e-8 * std::max(1.0, s(0));
}

enum class EzRoute { Auto, General, BInverse };

inline cplx lambda_cocycle_ez(const JacobiElement& h, const CSPoint& x, double k, const CocycleOptions& opt = {},
                              EzRoute route = EzRoute::Auto)
{
    if (opt.branch == symplectic::Branch::EvenOnly && !symplectic::is_even_integer(k))
        fail(Errc::BranchViolation, "lambda_cocycle_ez needs even integer k");
    if (route == EzRoute::Auto)
        route = b_invertible(h.g) ? EzRoute::BInverse : EzRoute::General;
    const cplx l1 = route == EzRoute::BInverse ? lambda1_b_inverse(h, x) : lambda1_general(h, x);
    const CMat& W = x.W.W();
    const cplx pre = matfun::detpow(W * h.g.b.adjoint() + h.g.a.adjoint(), -k / 2.0);
    return pre * std::exp(-l1) * std::polar(1.0, opt.central_phase * h.t);
}

// (e_x, e_y): antilinear in x, holomorphic in y
inline cplx kernel(const CSPoint& x, const CSPoint& y, double k)
{
    if (x.dim() != y.dim())
        fail(Errc::InvalidArgument, "dimension mismatch in kernel");
    const Eigen::Index n = x.dim();
    const CMat& V = x.W.W();
    const CMat& W = y.W.W();
    const CMat G = eye(n) - W * V.conjugate();
    const CMat U = matfun::inverse(G);
    const CVec xb = x.z.conjugate();
    const cplx e = (xb.transpose() * U * y.z)(0)
                   + 0.5 * (y.z.transpose() * V.conjugate() * U * y.z)(0)
                   + 0.5 * (xb.transpose() * U * W * xb)(0);
    return matfun::detpow(G, -k / 2.0) * std::exp(e);
}

inline double kahler_potential(const CSPoint& x, double k)
{
    const Eigen::Index n = x.dim();
    const CMat& W = x.W.W();
    const CMat G = eye(n) - W * W.conjugate();
    const CVec Mz = matfun::solve(G, x.z);
    const double ld = matfun::principal_logdet(G).real();
    const cplx quad = x.z.dot(Mz);
    const cplx mix = (x.z.transpose() * W.conjugate() * Mz)(0);
    return -0.5 * k * ld + quad.real() + mix.real();
}

// holomorphic coordinates (z_1..z_n, w_ij for i <= j)
inline CVec to_coords(const CSPoint& x)
{
    const int n = static_cast<int>(x.dim());
    const auto pairs = symplectic::sym_pairs(n);
    CVec xi(n + static_cast<Eigen::Index>(pairs.size()));
    xi.head(n) = x.z;
    for (std::size_t p = 0; p < pairs.size(); ++p)
        xi[n + static_cast<Eigen::Index>(p)] = x.W.W()(pairs[p].first, pairs[p].second);
    return xi;
}

inline int coord_dim(int n) { return n + n * (n + 1) / 2; }

inline CSPoint from_coords(const CVec& xi, int n)
{
    const auto pairs = symplectic::sym_pairs(n);
    if (xi.size() != coord_dim(n))
        fail(Errc::InvalidArgument, "coordinate vector has the wrong length");
    CMat W(n, n);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto [i, j] = pairs[p];
        W(i, j) = W(j, i) = xi[n + static_cast<Eigen::Index>(p)];
    }
    return {xi.head(n), SiegelPoint::unchecked(W)};
}

inline CMat sym_unit(int n, int a, int b)
{
    CMat E = CMat::Zero(n, n);
    E(a, b) = 1.0;
    E(b, a) = 1.0;
    return E;
}

// coefficients H_pq of d xi_p ^ d conj(xi_q), H_pq = d^2 f / d xi_p d conj(xi_q)
inline CMat kahler_form(const CSPoint& x, double k)
{
    const int n = static_cast<int>(x.dim());
    const CMat& W = x.W.W();
    const CMat M = matfun::inverse(eye(n) - W * W.conjugate());
    const CVec xv = M * (x.z + W * x.z.conjugate());
    const CVec xb = xv.conjugate();
    const auto pairs = symplectic::sym_pairs(n);
    const int N = coord_dim(n);
    CMat P = CMat::Zero(n, N);
    P.leftCols(n) = eye(n);
    for (std::size_t p = 0; p < pairs.size(); ++p)
        P.col(n + static_cast<Eigen::Index>(p)) = sym_unit(n, pairs[p].first, pairs[p].second) * xb;
    CMat H = P.transpose() * M.conjugate() * P.conjugate();
    H.bottomRightCorner(N - n, N - n) += symplectic::sp_two_form(x.W, k);
    return H;
}

inline double density(const CSPoint& x)
{
    const Eigen::Index n = x.dim();
    const cplx ld = matfun::principal_logdet(eye(n) - x.W.W() * x.W.W().conjugate());
    return std::exp(-static_cast<double>(n + 2) * ld.real());
}

inline double lambda_product_form(double k, int n)
{
    double lg = 0.0;
    double poly = 1.0;
    for (int i = 1; i <= n - 1; ++i) {
        poly *= (k - 3.0) / 2.0 - n + i;
        lg += std::lgamma(k + i - n - 2.0) - std::lgamma(k + 2.0 * (i - n - 1));
    }
    return (k - 3.0) / (2.0 * std::pow(kPi, n * (n + 3) / 2.0)) * poly * std::exp(lg);
}

inline MeasureConstants measure_constants(int n, double k)
{
    MeasureConstants mc;
    mc.n = n;
    mc.k = k;
    mc.p = (k - 3.0) / 2.0 - n;
    if (n < 1 || !(mc.p > -1.0))
        fail(Errc::OutOfDomain, "measure constants need k > 2n + 1");
    mc.Lambda = std::pow(kPi, -n) / symplectic::jn(mc.p, n);
    const double alt = lambda_product_form(k, n);
    if (std::abs(alt - mc.Lambda) > 1e-12 * mc.Lambda)
        fail(Errc::FormMismatch, "normalization routes disagree");
    return mc;
}

using PointFunction = std::function<cplx(const CSPoint&)>;

// lambda(h^{-1}, x) f(h^{-1}.x)
inline cplx pik_apply(const JacobiElement& h, double k, const PointFunction& f, const CSPoint& x,
                      const CocycleOptions& opt = {})
{
    const JacobiElement hi = jacobi_inverse(h);
    const CocycleData cd = lambda_cocycle(hi, x, k, opt);
    return cd.lambda * f(CSPoint{cd.z1, cd.W1});
}

inline JacobiElement jacobi_random(Eigen::Index n, double scale, double alpha_scale, Rng& rng)
{
    JacobiElement h;
    h.g = symplectic::sp_random(n, scale, rng);
    h.alpha = random_ball_vector(n, alpha_scale, rng);
    h.t = uniform(rng, -1.0, 1.0);
    return h;
}

inline CSPoint random_point(Eigen::Index n, double z_radius, double w_radius, Rng& rng)
{
    CSPoint x;
    x.z = random_ball_vector(n, z_radius, rng);
    x.W = SiegelPoint::unchecked(random_siegel(n, w_radius, rng));
    return x;
}

} // namespace jacobi
} // namespace gjn
