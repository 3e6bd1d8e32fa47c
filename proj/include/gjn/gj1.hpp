#pragma once

#include <array>
#include <cmath>

#include "gjn/diffops.hpp"
#include "gjn/jacobi.hpp"
#include "gjn/matfun.hpp"

// the n = 1 case in upper half-plane and disk coordinates
namespace gjn::gj1 {

struct UpperHalfPoint {
    cplx v;
    cplx u;
};

struct EZCoords {
    double x = 0.0, y = 1.0, p = 0.0, q = 0.0;
};

// real SL(2) element and translation row vector (l1, l2)
struct Gj0Element {
    Eigen::Matrix2d M = Eigen::Matrix2d::Identity();
    Eigen::RowVector2d l = Eigen::RowVector2d::Zero();
};

inline double kappa_of_k(double k) { return k / 4.0; }
inline double k_of_kappa(double kappa) { return 4.0 * kappa; }

inline diffops::VarSet zw_vars()
{
    static const diffops::VarSet v = diffops::make_vars({"z", "w"});
    return v;
}

inline std::int64_t factorial(int n)
{
    std::int64_t f = 1;
    for (int i = 2; i <= n; ++i)
        f *= i;
    return f;
}

// n! sum_j (w/2)^j z^{n-2j} / (j!(n-2j)!)
inline diffops::MPoly pn_poly(int n)
{
    if (n < 0 || n > 20)
        fail(Errc::InvalidArgument, "pn_poly supports 0 <= n <= 20");
    diffops::MPoly p(zw_vars());
    for (int j = 0; 2 * j <= n; ++j) {
        const exact::Rational c(factorial(n), factorial(j) * factorial(n - 2 * j) * (std::int64_t{1} << j));
        p.add_term({n - 2 * j, j}, exact::Coef(c));
    }
    return p;
}

inline cplx eval(const diffops::MPoly& p, cplx z, cplx w)
{
    cplx acc = 0.0;
    for (const auto& [e, c] : p.terms()) {
        if (c.degree() > 0)
            fail(Errc::InvalidArgument, "polynomial carries the symbol k");
        const auto g = c.at(0);
        acc += cplx(g.re.to_double(), g.im.to_double()) * std::pow(z, e[0]) * std::pow(w, e[1]);
    }
    return acc;
}

inline cplx hermite_h(int n, cplx x)
{
    cplx h0 = 1.0;
    if (n == 0)
        return h0;
    cplx h1 = 2.0 * x;
    for (int m = 1; m < n; ++m) {
        const cplx h2 = 2.0 * x * h1 - 2.0 * static_cast<double>(m) * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

// (i/sqrt2)^n w^{n/2} H_n(-i z / sqrt(2w)) with the principal root of w
inline cplx hermite_form(int n, cplx z, cplx w)
{
    if (w.imag() == 0.0 && w.real() <= 0.0)
        fail(Errc::BranchViolation, "w lies on the branch cut (-inf, 0]");
    const cplx sw = std::sqrt(w);
    const cplx pre = std::pow(cplx(0.0, 1.0) / std::sqrt(2.0), n) * std::pow(sw, n);
    return pre * hermite_h(n, cplx(0.0, -1.0) * z / (std::sqrt(2.0) * sw));
}

inline double hermite_check(int n, cplx z, cplx w)
{
    return std::abs(eval(pn_poly(n), z, w) - hermite_form(n, z, w));
}

// the Hermite form expanded symbolically: the half-integer powers of w and of 2 pair up term by term
inline diffops::MPoly hermite_exact(int n)
{
    using exact::GaussRat;
    using exact::Rational;
    auto ipow = [](GaussRat b, int e) {
        GaussRat r(1);
        for (int i = 0; i < e; ++i)
            r = r * b;
        return r;
    };
    diffops::MPoly p(zw_vars());
    for (int j = 0; 2 * j <= n; ++j) {
        // H_n(x) = n! sum_j (-1)^j (2x)^{n-2j} / (j!(n-2j)!), x = -i z / (sqrt2 sqrt w)
        const int m = n - 2 * j;
        GaussRat c = ipow(GaussRat(0, 1), n) * ipow(GaussRat(0, -2), m);
        c = c * GaussRat(Rational(j % 2 == 0 ? 1 : -1) * Rational(factorial(n), factorial(j) * factorial(m)));
        // sqrt2 exponent: -n from the prefactor, -m from the argument, even in total
        const int s2 = -n - m;
        Rational two_pow = 1;
        for (int t = 0; t < -s2 / 2; ++t)
            two_pow = two_pow / Rational(2);
        // w exponent: n/2 - m/2 = j
        p.add_term({m, j}, exact::Coef(c * GaussRat(two_pow)));
    }
    return p;
}

// P_n(z, w)/sqrt(n!) from P_{n+1} = z P_n + n w P_{n-1}; usable far past the exact range
inline cplx pn_normalized(int n, cplx z, cplx w)
{
    if (n < 0)
        fail(Errc::InvalidArgument, "negative index");
    cplx q0 = 1.0;
    if (n == 0)
        return q0;
    cplx q1 = z;
    for (int m = 1; m < n; ++m) {
        const cplx q2 = (z * q1 + std::sqrt(static_cast<double>(m)) * w * q0) / std::sqrt(m + 1.0);
        q0 = q1;
        q1 = q2;
    }
    return q1;
}

// sqrt(Gamma(m+2k)/(m! Gamma(2k))) w^m
inline cplx f_e(double k, int m, cplx w)
{
    const double lg = std::lgamma(m + 2.0 * k) - std::lgamma(m + 1.0) - std::lgamma(2.0 * k);
    return std::exp(0.5 * lg) * std::pow(w, m);
}

// weight index of the w-factor paired with the z-factor
inline double weight_index(double kappa) { return kappa - 0.25; }

inline cplx basis_fn(int nidx, int midx, double kappa, cplx z, cplx w)
{
    if (!(kappa > 0.25))
        fail(Errc::OutOfDomain, "basis functions need kappa > 1/4");
    return f_e(weight_index(kappa), midx, w) * pn_normalized(nidx, z, w);
}

// (1 - w conj(w'))^{-2 kappa} exp((2 conj(z') z + z^2 conj(w') + conj(z')^2 w) / (2(1 - w conj(w'))))
inline cplx kernel_closed(cplx z, cplx w, cplx zp, cplx wp, double kappa)
{
    const cplx d = 1.0 - w * std::conj(wp);
    const cplx e = (2.0 * std::conj(zp) * z + z * z * std::conj(wp) + std::conj(zp) * std::conj(zp) * w) / (2.0 * d);
    return std::pow(d, -2.0 * kappa) * std::exp(e);
}

inline cplx kernel_partial_sum(cplx z, cplx w, cplx zp, cplx wp, double kappa, int order)
{
    cplx acc = 0.0;
    for (int n = 0; n <= order; ++n)
        for (int m = 0; m <= order; ++m)
            acc += basis_fn(n, m, kappa, z, w) * std::conj(basis_fn(n, m, kappa, zp, wp));
    return acc;
}

inline std::pair<cplx, cplx> cayley(cplx v, cplx u)
{
    if (!(v.imag() > 0))
        fail(Errc::DomainViolation, "Im v must be positive");
    const cplx i(0.0, 1.0);
    return {(v - i) / (v + i), 2.0 * i * u / (v + i)};
}

inline UpperHalfPoint cayley_inverse(cplx w, cplx z)
{
    if (!(std::abs(w) < 1.0))
        fail(Errc::DomainViolation, "|w| must be below 1");
    const cplx i(0.0, 1.0);
    return {i * (1.0 + w) / (1.0 - w), z / (1.0 - w)};
}

// Hermitian coefficients in (z, w): 2 kappa/(1-|w|^2)^2 dw^dw* + A^A*/(1-|w|^2), A = dz + conj(alpha0) dw
inline Eigen::Matrix2cd disk_form(cplx z, cplx w, double kappa)
{
    const double d = 1.0 - std::norm(w);
    const cplx a0 = (z + std::conj(z) * w) / d;
    const Eigen::Vector2cd A(1.0, std::conj(a0));
    Eigen::Matrix2cd H = A * A.adjoint() / d;
    H(1, 1) += 2.0 * kappa / (d * d);
    return H;
}

// Hermitian coefficients in (v, u): -2 kappa/(vb-v)^2 dv^dv* + 2/(i(vb-v)) B^B*
inline Eigen::Matrix2cd halfplane_form(cplx v, cplx u, double kappa)
{
    const cplx i(0.0, 1.0);
    const cplx vb = std::conj(v);
    const Eigen::Vector2cd B(-(u - std::conj(u)) / (v - vb), 1.0);
    Eigen::Matrix2cd H = (2.0 / (i * (vb - v))) * (B * B.adjoint());
    H(0, 0) += -2.0 * kappa / ((vb - v) * (vb - v));
    return H;
}

// J^t H(cayley(v,u)) conj(J) with J = d(z,w)/d(v,u)
inline Eigen::Matrix2cd pullback_disk_form(cplx v, cplx u, double kappa)
{
    const cplx i(0.0, 1.0);
    const auto [w, z] = cayley(v, u);
    const cplx s = v + i;
    Eigen::Matrix2cd J;
    J << -2.0 * i * u / (s * s), 2.0 * i / s, 2.0 * i / (s * s), 0.0;
    return J.transpose() * disk_form(z, w, kappa) * J.conjugate();
}

inline double kb_form_check(cplx v, cplx u, double kappa)
{
    return (pullback_disk_form(v, u, kappa) - halfplane_form(v, u, kappa)).cwiseAbs().maxCoeff();
}

inline Eigen::Matrix4d ez_metric(const EZCoords& c, double kappa)
{
    if (!(c.y > 0))
        fail(Errc::DomainViolation, "y must be positive");
    Eigen::Matrix4d g = Eigen::Matrix4d::Zero();
    g(0, 0) = g(1, 1) = kappa / (2.0 * c.y * c.y);
    g(2, 2) = (c.x * c.x + c.y * c.y) / c.y;
    g(3, 3) = 1.0 / c.y;
    g(2, 3) = g(3, 2) = c.x / c.y;
    return g;
}

inline UpperHalfPoint from_ez(const EZCoords& c)
{
    const cplx v(c.x, c.y);
    return {v, c.p * v + c.q};
}

// Re(J^t H J*) with J = d(v,u)/d(x,y,p,q) and H the (v,u) form
inline Eigen::Matrix4d ez_metric_from_form(const EZCoords& c, double kappa)
{
    const UpperHalfPoint pt = from_ez(c);
    const cplx i(0.0, 1.0);
    Eigen::Matrix<cplx, 2, 4> J;
    J << 1.0, i, 0.0, 0.0, c.p, i * c.p, pt.v, 1.0;
    const Eigen::Matrix4cd G = J.transpose() * halfplane_form(pt.v, pt.u, kappa) * J.conjugate();
    return G.real();
}

inline UpperHalfPoint gj0_act(const Gj0Element& g, const UpperHalfPoint& pt, double tol = 1e-10)
{
    if (std::abs(g.M.determinant() - 1.0) > tol)
        fail(Errc::InvalidArgument, "det M must be 1");
    if (!(pt.v.imag() > 0))
        fail(Errc::DomainViolation, "Im v must be positive");
    const double a = g.M(0, 0), b = g.M(0, 1), c = g.M(1, 0), d = g.M(1, 1);
    const cplx den = c * pt.v + d;
    if (std::abs(den) == 0.0)
        fail(Errc::Singular, "cv + d vanishes");
    return {(a * pt.v + b) / den, (pt.u + g.l(0) * pt.v + g.l(1)) / den};
}

inline Gj0Element gj0_compose(const Gj0Element& g1, const Gj0Element& g2)
{
    return {g1.M * g2.M, g1.l * g2.M + g2.l};
}

// the disk-model element matching (M, l) under the Cayley map
inline JacobiElement cayley_to_jacobi(const Gj0Element& g)
{
    const cplx i(0.0, 1.0);
    Eigen::Matrix2cd C;
    C << 1.0, -i, 1.0, i;
    const Eigen::Matrix2cd G = C * g.M.cast<cplx>() * C.inverse();
    JacobiElement h;
    h.g = {CMat::Constant(1, 1, G(0, 0)), CMat::Constant(1, 1, G(0, 1))};
    h.alpha = CVec::Constant(1, g.l(1) + i * g.l(0));
    h.t = 0.0;
    return h;
}

inline Gj0Element gj0_random(Rng& rng, double scale = 0.5)
{
    Eigen::Matrix2d A;
    A << uniform(rng, -scale, scale), uniform(rng, -scale, scale), uniform(rng, -scale, scale),
        uniform(rng, -scale, scale);
    Eigen::Matrix2d M = Eigen::Matrix2d::Identity() + A;
    double det = M.determinant();
    if (det < 0) {
        M.col(0) *= -1.0;
        det = -det;
    }
    M /= std::sqrt(det);
    Gj0Element g;
    g.M = M;
    g.l << uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0);
    return g;
}

} // namespace gjn::gj1
