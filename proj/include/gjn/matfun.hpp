#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <complex>
#include <type_traits>
#include <utility>

#include "gjn/errors.hpp"

namespace gjn {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-10;
inline constexpr double kPi = 3.14159265358979323846;

inline double max_abs(const CMat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
inline double max_abs(const CVec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

inline CMat eye(Eigen::Index n) { return CMat::Identity(n, n); }

inline double spectral_norm(const CMat& m)
{
    if (m.size() == 0)
        return 0.0;
    Eigen::JacobiSVD<CMat> svd(m);
    return svd.singularValues()(0);
}

} // namespace gjn

namespace gjn::matfun {

struct HermEig {
    RVec evals;  // ascending
    CMat evecs;
};

inline bool is_square(const CMat& m) { return m.rows() == m.cols(); }

inline HermEig herm_eig(const CMat& H, double tol = 1e-12)
{
    if (!is_square(H))
        fail(Errc::NonHermitian, "matrix is not square");
    const double scale = std::max(1.0, max_abs(H));
    const double asym = max_abs(CMat(H - H.adjoint()));
    if (asym > tol * scale)
        fail(Errc::NonHermitian, "||H - H*|| = " + std::to_string(asym));
    const CMat Hs = 0.5 * (H + H.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(Hs);
    if (es.info() != Eigen::Success)
        fail(Errc::NoConvergence, "Hermitian eigensolver did not converge");
    return {es.eigenvalues(), es.eigenvectors()};
}

// V f(diag lambda) V*; f may return real or complex values
template <class F>
CMat herm_func(const CMat& H, F&& f, double tol = 1e-10)
{
    const HermEig e = herm_eig(H, tol);
    CVec d(e.evals.size());
    for (Eigen::Index i = 0; i < e.evals.size(); ++i) {
        const cplx v = cplx(f(e.evals[i]));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            fail(Errc::DomainViolation, "eigenvalue " + std::to_string(e.evals[i]) + " outside the domain of f");
        d[i] = v;
    }
    return e.evecs * d.asDiagonal() * e.evecs.adjoint();
}

inline double sinhc(double x) { return std::abs(x) < 1e-8 ? 1.0 + x * x / 6.0 : std::sinh(x) / x; }
inline double tanhc(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 3.0 : std::tanh(x) / x; }
inline double atanhc(double x)
{
    if (std::abs(x) >= 1.0)
        return std::numeric_limits<double>::quiet_NaN();
    return std::abs(x) < 1e-8 ? 1.0 + x * x / 3.0 : std::atanh(x) / x;
}

// eigenvalues of Gram-type products can dip below zero by roundoff
inline double clamp_sqrt(double lam) { return std::sqrt(std::max(lam, 0.0)); }

inline bool is_symmetric(const CMat& Z, double tol = 1e-10)
{
    return is_square(Z) && max_abs(CMat(Z - Z.transpose())) <= tol * std::max(1.0, max_abs(Z));
}

struct CartanBlocks {
    CMat m;
    CMat n;
};

inline CartanBlocks cartan_blocks(const CMat& Z, double tol = 1e-10)
{
    if (!is_symmetric(Z, tol))
        fail(Errc::NotSymmetric, "Z is not symmetric");
    const CMat ZZ = Z * Z.adjoint();  // Z Zbar for symmetric Z
    CartanBlocks out;
    out.m = herm_func(ZZ, [](double l) { return std::cosh(clamp_sqrt(l)); }, 1e-9);
    out.n = herm_func(ZZ, [](double l) { return sinhc(clamp_sqrt(l)); }, 1e-9) * Z;
    return out;
}

// the other ordering, Z sinhc(sqrt(Zbar Z))
inline CMat cartan_n_right(const CMat& Z)
{
    const CMat ZbZ = Z.conjugate() * Z;
    return Z * herm_func(ZbZ, [](double l) { return sinhc(clamp_sqrt(l)); }, 1e-9);
}

inline cplx principal_logdet(const CMat& M)
{
    if (!is_square(M))
        fail(Errc::Singular, "logdet of a non-square matrix");
    const Eigen::Index n = M.rows();
    if (n == 0)
        return 0.0;
    Eigen::PartialPivLU<CMat> lu(M);
    const CMat& LU = lu.matrixLU();
    const double thresh = 1e-14 * std::max(1.0, max_abs(M));
    cplx acc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const cplx u = LU(i, i);
        if (std::abs(u) <= thresh)
            fail(Errc::Singular, "pivot below threshold in logdet");
        acc += std::log(u);
    }
    if (lu.permutationP().determinant() < 0)
        acc += cplx(0.0, kPi);
    return acc;
}

// A^{-1} B with a pivot check
inline CMat solve(const CMat& A, const CMat& B)
{
    Eigen::PartialPivLU<CMat> lu(A);
    const CMat& LU = lu.matrixLU();
    const double thresh = 1e-14 * std::max(1.0, max_abs(A));
    for (Eigen::Index i = 0; i < LU.rows(); ++i)
        if (std::abs(LU(i, i)) <= thresh)
            fail(Errc::Singular, "matrix is numerically singular");
    return lu.solve(B);
}

inline CMat inverse(const CMat& A) { return solve(A, eye(A.rows())); }

// B A^{-1}
inline CMat right_divide(const CMat& B, const CMat& A)
{
    return solve(A.transpose(), B.transpose()).transpose();
}

inline cplx detpow(const CMat& M, double s) { return std::exp(s * principal_logdet(M)); }

inline bool is_siegel(const CMat& W, double tol = 1e-12)
{
    if (!is_square(W))
        return false;
    if (max_abs(CMat(W - W.transpose())) > tol)
        return false;
    const CMat G = eye(W.rows()) - W * W.adjoint();
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (G + G.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() > tol;
}

} // namespace gjn::matfun
