#pragma once

#include <functional>

#include "gjn/matfun.hpp"

// finite-difference oracles
namespace gjn::numdiff {

// J_pq = dF_p/dxi_q for holomorphic F, fourth-order central stencil along the real axis
inline CMat holomorphic_jacobian(const std::function<CVec(const CVec&)>& F, const CVec& xi, double h = 1e-3)
{
    const CVec f0 = F(xi);
    CMat J(f0.size(), xi.size());
    for (Eigen::Index q = 0; q < xi.size(); ++q) {
        auto at = [&](double s) {
            CVec x = xi;
            x[q] += s * h;
            return F(x);
        };
        J.col(q) = (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * h);
    }
    return J;
}

// H_pq = d^2 f / d xi_p d conj(xi_q) for real f
inline CMat mixed_hessian(const std::function<double(const CVec&)>& f, const CVec& xi, double h = 1e-4)
{
    const Eigen::Index N = xi.size();
    auto dir = [&](Eigen::Index r) {
        CVec e = CVec::Zero(N);
        e[r % N] = r < N ? cplx(1, 0) : cplx(0, 1);
        return e;
    };
    auto second = [&](Eigen::Index a, Eigen::Index b) {
        const CVec ea = dir(a) * h, eb = dir(b) * h;
        return (f(xi + ea + eb) - f(xi + ea - eb) - f(xi - ea + eb) + f(xi - ea - eb)) / (4.0 * h * h);
    };
    CMat H(N, N);
    for (Eigen::Index p = 0; p < N; ++p)
        for (Eigen::Index q = 0; q < N; ++q) {
            const double xx = second(p, q), yy = second(N + p, N + q);
            const double xy = second(p, N + q), yx = second(N + p, q);
            H(p, q) = 0.25 * cplx(xx + yy, xy - yx);
        }
    return H;
}

} // namespace gjn::numdiff
