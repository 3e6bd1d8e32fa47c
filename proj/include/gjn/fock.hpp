#pragma once

#include <cmath>
#include <utility>

#include "gjn/jacobi.hpp"
#include "gjn/matfun.hpp"
#include "gjn/symplectic.hpp"

// single-mode Fock space truncated to |0>..|N>
namespace gjn::fock {

inline constexpr double kTailThreshold = 1e-6;

struct FockOp {
    int cutoff = 0;
    CMat m;
};

struct FockVec {
    int cutoff = 0;
    CVec amp;

    // relative squared mass on levels above 0.9 N
    double tail_mass() const
    {
        const double total = amp.squaredNorm();
        if (total == 0)
            return 0.0;
        const int lo = static_cast<int>(std::ceil(0.9 * cutoff));
        double t = 0.0;
        for (int m = lo; m <= cutoff; ++m)
            t += std::norm(amp[m]);
        return t / total;
    }
};

inline void require_cutoff(int N)
{
    if (N < 2)
        fail(Errc::CutoffTooSmall, "cutoff must be at least 2");
}

inline std::pair<FockOp, FockOp> ladder(int N)
{
    require_cutoff(N);
    CMat a = CMat::Zero(N + 1, N + 1);
    for (int m = 1; m <= N; ++m)
        a(m - 1, m) = std::sqrt(static_cast<double>(m));
    return {FockOp{N, a}, FockOp{N, a.adjoint()}};
}

inline FockOp k_plus(int N)
{
    const auto [a, ad] = ladder(N);
    return {N, 0.5 * ad.m * ad.m};
}

inline FockOp k_minus(int N)
{
    const auto [a, ad] = ladder(N);
    return {N, 0.5 * a.m * a.m};
}

// (a+ a + a a+)/4 = (2m+1)/4 on |m>; the untruncated diagonal avoids a corner artifact
inline FockOp k_zero(int N)
{
    require_cutoff(N);
    CMat k = CMat::Zero(N + 1, N + 1);
    for (int m = 0; m <= N; ++m)
        k(m, m) = 0.5 * m + 0.25;
    return {N, k};
}

inline CMat expm(const CMat& X)
{
    const double nrm = X.cwiseAbs().rowwise().sum().maxCoeff();
    int s = 0;
    if (nrm > 0.5)
        s = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
    const CMat Y = X / std::ldexp(1.0, s);
    CMat term = eye(X.rows());
    CMat acc = term;
    for (int j = 1; j < 60; ++j) {
        term = term * Y / static_cast<double>(j);
        acc += term;
        if (max_abs(term) < 1e-18 * std::max(1.0, max_abs(acc)))
            break;
    }
    for (int i = 0; i < s; ++i)
        acc = acc * acc;
    return acc;
}

inline FockOp vacuum_projector(int N)
{
    CMat p = CMat::Zero(N + 1, N + 1);
    p(0, 0) = 1.0;
    return {N, p};
}

inline FockVec vacuum(int N)
{
    require_cutoff(N);
    CVec v = CVec::Zero(N + 1);
    v[0] = 1.0;
    return {N, v};
}

// exp(alpha a+ - conj(alpha) a)
inline FockOp displacement(cplx alpha, int N)
{
    const auto [a, ad] = ladder(N);
    return {N, expm(alpha * ad.m - std::conj(alpha) * a.m)};
}

// exp(-|alpha|^2/2) exp(alpha a+) exp(-conj(alpha) a); exact on the retained levels
inline FockOp displacement_normal(cplx alpha, int N)
{
    const auto [a, ad] = ladder(N);
    return {N, std::exp(-0.5 * std::norm(alpha)) * expm(alpha * ad.m) * expm(-std::conj(alpha) * a.m)};
}

inline void require_disk(cplx w)
{
    if (!(std::abs(w) < 1.0))
        fail(Errc::DomainViolation, "|w| must be below 1");
}

// exp(w K+) exp(eta K0) exp(-conj(w) K-), eta = log(1 - |w|^2)
inline FockOp squeeze(cplx w, int N)
{
    require_disk(w);
    const double eta = std::log(1.0 - std::norm(w));
    return {N, expm(w * k_plus(N).m) * expm(eta * k_zero(N).m) * expm(-std::conj(w) * k_minus(N).m)};
}

// exp(-conj(w) K-) exp(-eta K0) exp(w K+); accurate only away from the cutoff
inline FockOp squeeze_antinormal(cplx w, int N)
{
    require_disk(w);
    const double eta = std::log(1.0 - std::norm(w));
    return {N, expm(-std::conj(w) * k_minus(N).m) * expm(-eta * k_zero(N).m) * expm(w * k_plus(N).m)};
}

// exp(zeta K+ - conj(zeta) K-)
inline FockOp squeeze_underline(cplx zeta, int N)
{
    return {N, expm(zeta * k_plus(N).m - std::conj(zeta) * k_minus(N).m)};
}

// w = tanh|zeta| zeta/|zeta|
inline cplx w_of_zeta(cplx zeta) { return matfun::tanhc(std::abs(zeta)) * zeta; }

// S(g) = S(w) exp(2 log(v) K0) with (Z, v) the Cartan factors of g
inline FockOp metaplectic(const SpElement& g, int N)
{
    if (g.dim() != 1)
        fail(Errc::InvalidArgument, "the Fock oracle is single-mode");
    const CartanFactors cf = symplectic::cartan_decompose(g);
    const cplx w = w_of_zeta(cf.Z(0, 0));
    const cplx A = std::log(cf.v(0, 0));
    return {N, squeeze(w, N).m * expm(2.0 * A * k_zero(N).m)};
}

// exp(z a+ + w K+)|0> by series; X only raises, so retained amplitudes are exact
inline FockVec cs_vector(cplx z, cplx w, int N, double tail_threshold = kTailThreshold)
{
    require_cutoff(N);
    const auto [a, ad] = ladder(N);
    const CMat X = z * ad.m + w * k_plus(N).m;
    CVec term = vacuum(N).amp;
    CVec acc = term;
    for (int j = 1; j <= 4 * N + 40; ++j) {
        term = X * term / static_cast<double>(j);
        acc += term;
        if (term.norm() < 1e-18 * acc.norm())
            break;
    }
    FockVec v{N, acc};
    if (v.tail_mass() > tail_threshold)
        fail(Errc::CutoffTooSmall, "tail mass " + std::to_string(v.tail_mass()) + " above threshold");
    return v;
}

inline FockVec cs_vector(const CSPoint& x, int N, double tail_threshold = kTailThreshold)
{
    if (x.dim() != 1)
        fail(Errc::InvalidArgument, "the Fock oracle is single-mode");
    return cs_vector(x.z[0], x.W.W()(0, 0), N, tail_threshold);
}

// (e_x, e_y)
inline cplx oracle_kernel(const CSPoint& x, const CSPoint& y, int N)
{
    return cs_vector(x, N).amp.dot(cs_vector(y, N).amp);
}

inline double check_lemma6(cplx alpha, cplx w, int N)
{
    const FockVec s0{N, squeeze(w, N).m.col(0)};
    const CVec lhs = displacement_normal(alpha, N).m * s0.amp;
    const cplx z = alpha - w * std::conj(alpha);
    const cplx pref = std::pow(1.0 - std::norm(w), 0.25) * std::exp(-0.5 * std::conj(alpha) * z);
    const CVec rhs = pref * cs_vector(z, w, N).amp;
    return (lhs - rhs).norm();
}

struct HpbResiduals {
    double bogoliubov = 0.0;    // a S = S (cosh|zeta| a + sinh|zeta|/|zeta| zeta a+)
    double exchange = 0.0;      // D(alpha) S(zeta) = S(zeta) D(beta)
    double conjugation = 0.0;   // S(g) D(alpha) = D(a alpha + b conj(alpha)) S(g)
    double beta_roundtrip = 0.0;

    double max() const { return std::max({bogoliubov, exchange, conjugation, beta_roundtrip}); }
};

// operator identities compared on the lowest N/2 levels
inline HpbResiduals check_hpb(cplx zeta, cplx alpha, int N)
{
    require_cutoff(N);
    const int L = N / 2 + 1;
    const auto [a, ad] = ladder(N);
    const double r = std::abs(zeta);
    const double ch = std::cosh(r);
    const cplx sh = matfun::sinhc(r) * zeta;
    const cplx w = w_of_zeta(zeta);
    const CMat S = squeeze(w, N).m;
    HpbResiduals out;

    // intertwined forms; the normal-ordered S is exact entrywise, its truncated inverse is not
    const CMat lhs1 = a.m * S;
    const CMat rhs1 = S * (ch * a.m + sh * ad.m);
    out.bogoliubov = max_abs(CMat((lhs1 - rhs1).topLeftCorner(L, L)));

    const cplx beta = ch * alpha - sh * std::conj(alpha);
    const CMat lhs2 = displacement_normal(alpha, N).m * S;
    const CMat rhs2 = S * displacement_normal(beta, N).m;
    out.exchange = max_abs(CMat((lhs2 - rhs2).topLeftCorner(L, L)));

    const cplx beta2 = (alpha - w * std::conj(alpha)) / std::sqrt(1.0 - std::norm(w));
    const cplx back = ch * beta + sh * std::conj(beta);
    out.beta_roundtrip = std::max(std::abs(beta - beta2), std::abs(back - alpha));

    // element with Cartan factors (zeta, 1)
    const CMat Z = CMat::Constant(1, 1, zeta);
    const SpElement g = symplectic::cartan_synthesize(Z, eye(1));
    const cplx ag = g.a(0, 0) * alpha + g.b(0, 0) * std::conj(alpha);
    const CMat lhs3 = S * displacement_normal(alpha, N).m;
    const CMat rhs3 = displacement_normal(ag, N).m * S;
    out.conjugation = max_abs(CMat((lhs3 - rhs3).topLeftCorner(L, L)));
    return out;
}

// || S(g) D(alpha) e_x - lambda e_{h.x} || at k = 1
inline double check_cs_action(const JacobiElement& h, const CSPoint& x, int N)
{
    if (h.dim() != 1)
        fail(Errc::InvalidArgument, "the Fock oracle is single-mode");
    jacobi::CocycleOptions opt;
    opt.branch = symplectic::Branch::Unchecked;
    const CocycleData cd = jacobi::lambda_cocycle(h, x, 1.0, opt);
    const CVec ex = cs_vector(x, N).amp;
    const CVec lhs = std::polar(1.0, opt.central_phase * h.t) * metaplectic(h.g, N).m
                     * (displacement_normal(h.alpha[0], N).m * ex);
    const CVec rhs = cd.lambda * cs_vector(cd.z1[0], cd.W1.W()(0, 0), N).amp;
    return (lhs - rhs).norm();
}

} // namespace gjn::fock
