#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gjn/diffops.hpp"
#include "gjn/fock.hpp"
#include "gjn/gj1.hpp"
#include "gjn/jacobi.hpp"
#include "gjn/json_io.hpp"
#include "gjn/measure.hpp"
#include "gjn/numdiff.hpp"
#include "gjn/random.hpp"
#include "gjn/symplectic.hpp"

// verification suites shared by the command line and the acceptance run
namespace gjn::verify {

using nlohmann::json;

struct CheckRecord {
    std::string check;
    std::string anchor;
    int n = 1;
    double k = 0.0;
    std::uint64_t samples = 0;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

struct Conventions {
    std::string action_order = "unresolved";
    int sigma = 0;
    double central_phase = 0.0;
    std::string kernel_placement = "unresolved";
    std::string coordinates = "unresolved";
    std::string k0_order = "unresolved";
    std::string i_convention = "unresolved";
    diffops::Realization realization{};
};

struct Options {
    int n = 2;
    std::optional<double> k;
    std::uint64_t seed = 7;
    std::uint64_t samples = 1000000;
    int cutoff = 60;
    unsigned workers = 1;
    std::function<void(const std::string&)> progress;
};

struct VerifyReport {
    std::string suite;
    Options options;
    Conventions conventions;
    std::vector<CheckRecord> checks;

    bool pass() const
    {
        for (const auto& c : checks)
            if (!c.pass)
                return false;
        return !checks.empty();
    }
};

inline const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"algebra", "symplectic", "jacobi", "oracle", "gj1", "measure", "all"};
    return names;
}

inline bool is_suite(const std::string& s)
{
    for (const auto& n : suite_names())
        if (n == s)
            return true;
    return false;
}

namespace detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class Recorder {
public:
    explicit Recorder(std::vector<CheckRecord>& out, const Options& opt) : out_(out), opt_(opt) {}

    void add(const std::string& id, const std::string& anchor, int n, double k, std::uint64_t samples, double residual,
             double tol, std::string note = {})
    {
        const bool ok = std::isfinite(residual) && residual <= tol;
        out_.push_back({id, anchor, n, k, samples, residual, tol, ok, std::move(note)});
        if (opt_.progress)
            opt_.progress(id + (ok ? " pass" : " FAIL"));
    }

    // residual from f(); an exception counts as an infinite residual
    void run(const std::string& id, const std::string& anchor, int n, double k, std::uint64_t samples, double tol,
             const std::function<double()>& f)
    {
        try {
            add(id, anchor, n, k, samples, f(), tol);
        } catch (const std::exception& e) {
            add(id, anchor, n, k, samples, kInf, tol, e.what());
        }
    }

private:
    std::vector<CheckRecord>& out_;
    const Options& opt_;
};

inline double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline double dist(const SpElement& g, const SpElement& h)
{
    return std::max(max_abs(CMat(g.a - h.a)), max_abs(CMat(g.b - h.b)));
}

inline double dist(const CSPoint& x, const CSPoint& y)
{
    return std::max((x.z - y.z).cwiseAbs().maxCoeff(), max_abs(CMat(x.W.W() - y.W.W())));
}

inline double dist(const JacobiElement& a, const JacobiElement& b)
{
    return std::max({dist(a.g, b.g), (a.alpha - b.alpha).cwiseAbs().maxCoeff(), std::abs(a.t - b.t)});
}

inline SiegelPoint rand_siegel(int n, double r, Rng& rng) { return SiegelPoint::unchecked(random_siegel(n, r, rng)); }

// element with Cartan factors (zeta, e^{i phi}), |zeta| <= r, phi in (-pi/2, pi/2)
inline SpElement sp1_sample(double r, Rng& rng)
{
    const cplx zeta = r * std::polar(uniform(rng, 0.0, 1.0), uniform(rng, -kPi, kPi));
    const double phi = uniform(rng, -1.2, 1.2);
    return symplectic::cartan_synthesize(CMat::Constant(1, 1, zeta), CMat::Constant(1, 1, std::polar(1.0, phi)));
}

inline cplx cocycle(const JacobiElement& h, const CSPoint& x, double k, double c)
{
    jacobi::CocycleOptions opt;
    opt.central_phase = c;
    opt.branch = symplectic::Branch::Unchecked;
    return jacobi::lambda_cocycle(h, x, k, opt).lambda;
}

inline double multiplicativity(int n, double k, double c, int count, Rng& rng)
{
    double worst = 0.0;
    for (int s = 0; s < count; ++s) {
        const JacobiElement h1 = jacobi::jacobi_random(n, 0.5, 0.8, rng);
        const JacobiElement h2 = jacobi::jacobi_random(n, 0.5, 0.8, rng);
        const CSPoint x = jacobi::random_point(n, 0.8, 0.6, rng);
        const cplx lhs = cocycle(jacobi::jacobi_compose(h1, h2), x, k, c);
        const cplx rhs = cocycle(h1, jacobi::act(h2, x), k, c) * cocycle(h2, x, k, c);
        worst = std::max(worst, rel(rhs, lhs));
    }
    return worst;
}

inline std::vector<std::pair<int, int>> pairs_of(int n) { return symplectic::sym_pairs(n); }

inline CVec w_coords(const CMat& W)
{
    const auto pr = pairs_of(static_cast<int>(W.rows()));
    CVec xi(static_cast<Eigen::Index>(pr.size()));
    for (std::size_t p = 0; p < pr.size(); ++p)
        xi[static_cast<Eigen::Index>(p)] = W(pr[p].first, pr[p].second);
    return xi;
}

inline CMat w_from_coords(const CVec& xi, int n)
{
    const auto pr = pairs_of(n);
    CMat W(n, n);
    for (std::size_t p = 0; p < pr.size(); ++p)
        W(pr[p].first, pr[p].second) = W(pr[p].second, pr[p].first) = xi[static_cast<Eigen::Index>(p)];
    return W;
}

} // namespace detail

// fixes every convention the formulas leave open by scanning the candidates once
inline Conventions resolve_conventions(std::uint64_t seed)
{
    using namespace detail;
    Conventions c;
    Rng rng = substream(seed, 1000);

    double left = 0.0, right = 0.0;
    for (int s = 0; s < 10; ++s) {
        const JacobiElement h1 = jacobi::jacobi_random(2, 0.5, 0.8, rng), h2 = jacobi::jacobi_random(2, 0.5, 0.8, rng);
        const CSPoint x = jacobi::random_point(2, 0.8, 0.6, rng);
        const CSPoint y = jacobi::act(h1, jacobi::act(h2, x));
        left = std::max(left, dist(y, jacobi::act(jacobi::jacobi_compose(h1, h2), x)));
        right = std::max(right, dist(y, jacobi::act(jacobi::jacobi_compose(h2, h1), x)));
    }
    c.action_order = left < 1e-9 ? "left" : right < 1e-9 ? "right" : "unresolved";

    double best = kInf;
    for (double cand : {1.0, -1.0, 2.0, -2.0}) {
        Rng r = substream(seed, 1001);
        const double res = multiplicativity(1, 2.0, cand, 20, r);
        if (res < best) {
            best = res;
            c.central_phase = cand;
        }
    }
    if (best > 1e-9)
        c.central_phase = 0.0;

    double p1 = 0.0, p2 = 0.0;
    for (int s = 0; s < 10; ++s) {
        const SpElement g = symplectic::sp_random(2, 0.5, rng);
        const SiegelPoint X = rand_siegel(2, 0.5, rng), Y = rand_siegel(2, 0.5, rng);
        const double k = 2.0;
        const cplx lhs = symplectic::sp_kernel(symplectic::moebius(g, X), symplectic::moebius(g, Y), k);
        const cplx JX = symplectic::sp_multiplier(g, X, k), JY = symplectic::sp_multiplier(g, Y, k);
        const cplx K = symplectic::sp_kernel(X, Y, k);
        p1 = std::max(p1, rel(JY * K * std::conj(JX), lhs));
        p2 = std::max(p2, rel(JX * K * std::conj(JY), lhs));
    }
    c.kernel_placement = p1 < 1e-9 ? "K(gX,gY)=J(g,Y)K(X,Y)J(g,X)*"
                         : p2 < 1e-9 ? "K(gX,gY)=J(g,X)K(X,Y)J(g,Y)*"
                                     : "unresolved";

    for (auto coords : {diffops::CoordConvention::Halved, diffops::CoordConvention::Independent}) {
        for (auto order : {diffops::K0Order::Transposed, diffops::K0Order::AsPrinted}) {
            const diffops::Realization conv{coords, order};
            const auto rep = diffops::fit_sign(diffops::jacobi_generators_diff(2, conv), diffops::AlgebraTable::jacobi(2));
            if (rep.pass()) {
                c.realization = conv;
                c.coordinates = diffops::to_string(coords);
                c.k0_order = diffops::to_string(order);
                const auto one = diffops::fit_sign(diffops::jacobi_generators_diff(1, conv), diffops::AlgebraTable::jacobi(1));
                c.sigma = one.pass() ? one.sigma : 0;
                break;
            }
        }
        if (c.sigma != 0)
            break;
    }

    const int N = 40;
    const cplx w(0.25, -0.2);
    const CVec s0 = fock::squeeze(w, N).m.col(0);
    const double pref = std::pow(1.0 - std::norm(w), 0.25);
    const double free_res = (s0 - pref * fock::cs_vector(0.0, w, N).amp).norm();
    const double i_res = (s0 - pref * fock::cs_vector(0.0, w / cplx(0.0, 1.0), N).amp).norm();
    c.i_convention = free_res < 1e-9 ? "i-free" : i_res < 1e-9 ? "with-i" : "unresolved";
    return c;
}

inline void suite_algebra(const Options& opt, const Conventions& conv, std::vector<CheckRecord>& out)
{
    using namespace diffops;
    detail::Recorder rec(out, opt);
    const std::string sp_tag = "[K-_ij,K+_kl]=(d_ki K0_lj+d_li K0_kj+d_kj K0_li+d_lj K0_ki)/2; [K-,K0]; [K+,K0]; [K0,K0]";
    const std::string hw_tag = sp_tag + "; [a_i,a+_j]=d_ij; [a_i,K+_jk]=(d_ij a+_k+d_ik a+_j)/2; [K-,a+]; [K0,a+-]";
    rec.add("algebra.sigma_fitted", "[rho X, rho Y] = sigma rho[X,Y]", 1, 0, 0, conv.sigma == 0 ? 1.0 : 0.0, 0.0,
            "sigma = " + std::to_string(conv.sigma));
    for (int m = 1; m <= opt.n; ++m) {
        const std::string sfx = ".n" + std::to_string(m);
        rec.run("algebra.table_jacobi_identity" + sfx, "[X,[Y,Z]] + cyclic = 0", m, 0, 0, 0.0, [&] {
            return AlgebraTable::jacobi(m).jacobi_identity_failure() ? 1.0 : 0.0;
        });
        rec.run("algebra.sp_structure" + sfx, sp_tag, m, 0, 0, 0.0, [&] {
            const auto r = verify_structure_constants(sp_generators_diff(m, conv.realization), AlgebraTable::sp(m),
                                                      conv.sigma == 0 ? 1 : conv.sigma);
            return static_cast<double>(r.mismatches.size());
        });
        rec.run("algebra.jacobi_structure" + sfx, hw_tag, m, 0, 0, 0.0, [&] {
            const auto r = verify_structure_constants(jacobi_generators_diff(m, conv.realization),
                                                      AlgebraTable::jacobi(m), conv.sigma == 0 ? 1 : conv.sigma);
            return static_cast<double>(r.mismatches.size());
        });
    }
    if (opt.n >= 2)
        rec.run("algebra.convention_unique", "exactly one coordinate/K0 convention closes", 2, 0, 0, 0.0, [&] {
            int passing = 0;
            for (auto coords : {CoordConvention::Halved, CoordConvention::Independent})
                for (auto order : {K0Order::Transposed, K0Order::AsPrinted})
                    passing += fit_sign(jacobi_generators_diff(2, {coords, order}), AlgebraTable::jacobi(2)).pass();
            return std::abs(passing - 1.0);
        });
}

inline void suite_symplectic(const Options& opt, const Conventions& conv, std::vector<CheckRecord>& out)
{
    using namespace symplectic;
    using detail::rel;
    detail::Recorder rec(out, opt);
    const int n = opt.n;
    const double k = opt.k.value_or(4.0);
    const int count = 200;
    Rng rng = substream(opt.seed, 1);
    std::vector<SpElement> gs;
    for (int s = 0; s < count; ++s)
        gs.push_back(sp_random(n, 0.7, rng));

    rec.run("symplectic.closure", "aa*-bb*=1, ab^t=ba^t", n, k, count, 1e-10, [&] {
        double w = 0;
        for (int s = 0; s + 1 < count; ++s) {
            const SpElement p = sp_compose(gs[s], gs[s + 1]);
            w = std::max(w, sp_residual(p.a, p.b));
        }
        return w;
    });
    rec.run("symplectic.inverse", "g^{-1}=(a*, -b^t)", n, k, count, 1e-11, [&] {
        double w = 0;
        for (const auto& g : gs)
            w = std::max(w, detail::dist(sp_compose(g, sp_inverse(g)), sp_identity(n)));
        return w;
    });
    rec.run("symplectic.gauss_reassembly", "Y=b conj(a)^{-1}, Y'=conj(a)^{-1} conj(b)", n, k, count, 1e-9, [&] {
        double w = 0;
        for (const auto& g : gs)
            w = std::max(w, max_abs(CMat(gauss_reassemble(gauss_decompose(g)) - g.full())));
        return w;
    });
    rec.run("symplectic.cartan_reassembly", "m=cosh sqrt(ZZ̄), n=sinh sqrt(ZZ̄)/sqrt(ZZ̄) Z", n, k, count, 1e-9, [&] {
        double w = 0;
        for (const auto& g : gs) {
            const CartanFactors f = cartan_decompose(g);
            w = std::max(w, detail::dist(cartan_synthesize(f.Z, f.v), g));
        }
        return w;
    });
    rec.run("symplectic.zw_roundtrip", "W=Z tanh sqrt(Z̄Z)/sqrt(Z̄Z)", n, k, count, 1e-11, [&] {
        double w = 0;
        for (int s = 0; s < count; ++s) {
            const CMat Z = random_symmetric(n, rng);
            w = std::max(w, max_abs(CMat(z_of_w(w_of_z(Z)) - Z)));
        }
        return w;
    });
    rec.run("symplectic.moebius_forms", "(aW+b)(b̄W+ā)^{-1}=(Wb*+a*)^{-1}(Wa^t+b^t)", n, k, count, 1e-11, [&] {
        double w = 0;
        for (const auto& g : gs) {
            const SiegelPoint W = detail::rand_siegel(n, 0.8, rng);
            w = std::max(w, max_abs(CMat(moebius(g, W).W() - moebius_alt(g, W))));
        }
        return w;
    });
    rec.run("symplectic.moebius_left_action", "g1.(g2.W)=(g1 g2).W", n, k, count, 1e-10, [&] {
        double w = 0;
        for (int s = 0; s + 1 < count; ++s) {
            const SiegelPoint W = detail::rand_siegel(n, 0.8, rng);
            const CMat a = moebius(gs[s], moebius(gs[s + 1], W)).W();
            w = std::max(w, max_abs(CMat(a - moebius(sp_compose(gs[s], gs[s + 1]), W).W())));
        }
        return w;
    });
    double w3 = 0, unit = 0, detm = 0;
    for (int s = 0; s < count; ++s) {
        const SiegelPoint W1 = detail::rand_siegel(n, 0.7, rng), W2 = detail::rand_siegel(n, 0.7, rng);
        const BallComposition bc = ball_compose(W1, W2);
        const CartanFactors cf = cartan_decompose(sp_compose(sp_of(W1), sp_of(W2)));
        w3 = std::max(w3, max_abs(CMat(bc.W3.W() - w_of_z(cf.Z).W())));
        const cplx dv = bc.v.determinant();
        const cplx d = (eye(n) + W1.W() * W2.W().adjoint()).determinant();
        unit = std::max(unit, std::abs(std::abs(dv) - 1.0));
        detm = std::max({detm, std::abs(dv - std::sqrt(d / std::conj(d))), std::abs(dv - cf.v.determinant())});
    }
    rec.add("symplectic.ball_compose_w3", "W3=(W1+W2)(1+W1*W2)^{-1} composed", n, k, count, w3, 1e-9);
    rec.add("symplectic.ball_compose_unit_det", "|det v|=1", n, k, count, unit, 1e-10);
    rec.add("symplectic.ball_compose_det", "det v=[det(1+W1W2*)/conj det(1+W1W2*)]^{1/2}", n, k, count, detm, 1e-9);
    rec.run("symplectic.kernel_transform", conv.kernel_placement, n, k, count, 1e-9, [&] {
        double w = 0;
        for (int s = 0; s < count; ++s) {
            const SpElement g = sp_random(n, 0.5, rng);
            const SiegelPoint X = detail::rand_siegel(n, 0.5, rng), Y = detail::rand_siegel(n, 0.5, rng);
            const cplx lhs = sp_kernel(moebius(g, X), moebius(g, Y), k);
            const cplx rhs = sp_multiplier(g, Y, k) * sp_kernel(X, Y, k) * std::conj(sp_multiplier(g, X, k));
            w = std::max(w, is_even_integer(k) ? rel(rhs, lhs) : std::abs(std::abs(rhs) / std::abs(lhs) - 1.0));
        }
        return w;
    });
    rec.run("symplectic.multiplier_cocycle", "J(g1g2,W)=J(g1,g2.W)J(g2,W)", n, k, count, 1e-10, [&] {
        double w = 0;
        for (int s = 0; s + 1 < count; ++s) {
            const SiegelPoint W = detail::rand_siegel(n, 0.6, rng);
            const cplx lhs = sp_multiplier(sp_compose(gs[s], gs[s + 1]), W, 2.0);
            w = std::max(w, rel(sp_multiplier(gs[s], moebius(gs[s + 1], W), 2.0) * sp_multiplier(gs[s + 1], W, 2.0), lhs));
        }
        return w;
    });
    rec.run("symplectic.two_form_hessian", "-(k/2) ddbar log det(1-WW̄)", n, k, 50, 1e-5, [&] {
        double w = 0;
        for (int s = 0; s < 50; ++s) {
            const SiegelPoint W = detail::rand_siegel(n, 0.7, rng);
            const CMat H = sp_two_form(W, k);
            const CMat fd = numdiff::mixed_hessian(
                [&](const CVec& xi) {
                    const CMat M = detail::w_from_coords(xi, n);
                    return -0.5 * k * matfun::principal_logdet(eye(n) - M * M.conjugate()).real();
                },
                detail::w_coords(W.W()));
            w = std::max(w, max_abs(CMat(fd - H)) / std::max(1.0, max_abs(H)));
        }
        return w;
    });
    rec.run("symplectic.density_invariance", "Q(g.W)|det dg.W/dW|^2=Q(W)", n, k, 50, 1e-5, [&] {
        double w = 0;
        for (int s = 0; s < 50; ++s) {
            const SpElement g = sp_random(n, 0.5, rng);
            const SiegelPoint W = detail::rand_siegel(n, 0.6, rng);
            const CMat J = numdiff::holomorphic_jacobian(
                [&](const CVec& xi) {
                    return detail::w_coords(moebius(g, SiegelPoint::unchecked(detail::w_from_coords(xi, n))).W());
                },
                detail::w_coords(W.W()));
            w = std::max(w, std::abs(sp_density(moebius(g, W)) * std::norm(J.determinant()) / sp_density(W) - 1.0));
        }
        return w;
    });
    rec.run("symplectic.jn_forms", "J_n(p) Gamma-ratio form = product form", n, k, 0, 1e-12, [&] {
        double w = 0;
        for (int m = 1; m <= 4; ++m)
            for (double p = -0.9; p < 12.0; p += 0.37)
                w = std::max(w, std::abs(jn_gamma_ratio(p, m) / jn_product(p, m) - 1.0));
        return w;
    });
    rec.run("symplectic.lambda_routes", "Lambda=pi^{-n}/J_n(p) = product form", n, k, 0, 1e-12, [&] {
        double w = 0;
        for (int m = 1; m <= 4; ++m)
            for (double kk = 2 * m + 1.25; kk < 2 * m + 12; kk += 0.5)
                w = std::max(w, std::abs(jacobi::lambda_product_form(kk, m) / jacobi::measure_constants(m, kk).Lambda - 1.0));
        return w;
    });
    if (is_even_integer(k))
        rec.run("symplectic.rep_homomorphism", "T(g1)T(g2)=T(g1g2)", n, k, 50, 1e-10, [&] {
            double w = 0;
            const auto f = [](const SiegelPoint& W) { return cplx(1.0) + W.W().sum() + W.W().squaredNorm(); };
            for (int s = 0; s < 50; ++s) {
                const SpElement g1 = sp_random(n, 0.5, rng), g2 = sp_random(n, 0.5, rng);
                const SiegelPoint X = detail::rand_siegel(n, 0.5, rng);
                const auto inner = [&](const SiegelPoint& Y) { return sp_rep_apply(g2, k, f, Y); };
                const cplx rhs = sp_rep_apply(sp_compose(g1, g2), k, f, X);
                w = std::max(w, rel(sp_rep_apply(g1, k, inner, X), rhs));
            }
            return w;
        });
}

inline void suite_jacobi(const Options& opt, const Conventions& conv, std::vector<CheckRecord>& out)
{
    using namespace jacobi;
    using detail::rel;
    detail::Recorder rec(out, opt);
    const int n = opt.n;
    const double k = opt.k.value_or(2.0);
    if (!symplectic::is_even_integer(k))
        fail(Errc::InvalidArgument, "the jacobi suite needs even integer k");
    const double c = conv.central_phase;
    CocycleOptions copt;
    copt.central_phase = c;
    const int count = 200;
    Rng rng = substream(opt.seed, 2);

    rec.run("jacobi.compose_associative", "(h1h2)h3=h1(h2h3)", n, k, 100, 1e-10, [&] {
        double w = 0;
        for (int s = 0; s < 100; ++s) {
            const JacobiElement a = jacobi_random(n, 0.6, 1.0, rng), b = jacobi_random(n, 0.6, 1.0, rng),
                                d = jacobi_random(n, 0.6, 1.0, rng);
            w = std::max(w, detail::dist(jacobi_compose(jacobi_compose(a, b), d), jacobi_compose(a, jacobi_compose(b, d))));
        }
        return w;
    });
    rec.run("jacobi.inverse", "h h^{-1}=1", n, k, 100, 1e-11, [&] {
        double w = 0;
        for (int s = 0; s < 100; ++s) {
            const JacobiElement h = jacobi_random(n, 0.6, 1.0, rng);
            w = std::max(w, detail::dist(jacobi_compose(h, jacobi_inverse(h)), jacobi_identity(n)));
        }
        return w;
    });
    rec.run("jacobi.action", "h1.(h2.x)=(h1h2).x", n, k, 100, 1e-10, [&] {
        double w = 0;
        for (int s = 0; s < 100; ++s) {
            const JacobiElement h1 = jacobi_random(n, 0.5, 1.0, rng), h2 = jacobi_random(n, 0.5, 1.0, rng);
            const CSPoint x = random_point(n, 1.0, 0.6, rng);
            w = std::max(w, detail::dist(act(h1, act(h2, x)), act(jacobi_compose(h1, h2), x)));
        }
        return w;
    });
    rec.run("jacobi.cocycle_multiplicative", "lambda(h1h2,x)=lambda(h1,h2.x)lambda(h2,x)", n, k, count, 1e-9, [&] {
        return detail::multiplicativity(n, k, c, count, rng);
    });
    double unit = 0, cov = 0, route = 0, routes = 0;
    for (int s = 0; s < count; ++s) {
        const JacobiElement h = jacobi_random(n, 0.5, 0.8, rng);
        const CSPoint x = random_point(n, 0.8, 0.6, rng), y = random_point(n, 0.8, 0.5, rng);
        const CocycleData cd = lambda_cocycle(h, x, k, copt);
        const CSPoint hx{cd.z1, cd.W1};
        unit = std::max(unit, std::abs(std::norm(cd.lambda) * kernel(hx, hx, k).real() / kernel(x, x, k).real() - 1.0));
        const cplx ly = lambda_cocycle(h, y, k, copt).lambda;
        cov = std::max(cov, rel(std::conj(cd.lambda) * ly * kernel(hx, act(h, y), k), kernel(x, y, k)));
        route = std::max(route, rel(lambda_cocycle_ez(h, x, k, copt), cd.lambda));
        if (b_invertible(h.g))
            routes = std::max(routes, std::abs(lambda1_general(h, x) - lambda1_b_inverse(h, x)) / std::max(1.0, std::abs(lambda1_general(h, x))));
    }
    rec.add("jacobi.unitarity", "|lambda|^2 K(h.x,h.x)=K(x,x)", n, k, count, unit, 1e-9);
    rec.add("jacobi.kernel_covariance", "conj(lambda(h,x)) lambda(h,y) K(h.x,h.y)=K(x,y)", n, k, count, cov, 1e-9);
    rec.add("jacobi.lambda_routes", "lambda closed form = det(Wb*+a*)^{-k/2} exp(-lambda_1)", n, k, count, route, 1e-9);
    rec.add("jacobi.lambda1_routes", "lambda_1 with T=conj(b)^{-1}conj(a) = b->0 form", n, k, count, routes, 1e-10);

    double herm = 0, pot = 0;
    for (int s = 0; s < count; ++s) {
        const CSPoint x = random_point(n, 1.0, 0.7, rng), y = random_point(n, 1.0, 0.7, rng);
        herm = std::max(herm, rel(kernel(x, y, k), std::conj(kernel(y, x, k))));
        const cplx lk = std::log(kernel(x, x, k));
        pot = std::max({pot, std::abs(kahler_potential(x, k) - lk.real()), std::abs(lk.imag())});
    }
    rec.add("jacobi.kernel_hermitian", "K(x,y)=conj K(y,x)", n, k, count, herm, 1e-12);
    rec.add("jacobi.potential_log_kernel", "f=log K(x,x)", n, k, count, pot, 1e-11);
    rec.run("jacobi.kernel_psd", "Gram matrix of K >= 0", n, k, 20, 1e-9, [&] {
        std::vector<CSPoint> pts;
        for (int s = 0; s < 20; ++s)
            pts.push_back(random_point(n, 0.8, 0.6, rng));
        CMat G(20, 20);
        for (int i = 0; i < 20; ++i)
            for (int j = 0; j < 20; ++j)
                G(i, j) = kernel(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)], k);
        Eigen::SelfAdjointEigenSolver<CMat> es(G);
        return std::max(0.0, -es.eigenvalues().minCoeff() / spectral_norm(G));
    });
    double fd = 0, neg = 0;
    for (int s = 0; s < 50; ++s) {
        const CSPoint p = random_point(n, 1.0, 0.6, rng);
        const CMat H = kahler_form(p, k);
        const CMat Hfd = numdiff::mixed_hessian(
            [&](const CVec& xi) { return kahler_potential(from_coords(xi, n), k); }, to_coords(p));
        fd = std::max(fd, max_abs(CMat(Hfd - H)) / std::max(1.0, max_abs(H)));
        Eigen::SelfAdjointEigenSolver<CMat> es(H);
        neg = std::max(neg, -es.eigenvalues().minCoeff());
    }
    rec.add("jacobi.kahler_form_hessian", "omega coefficients = ddbar f", n, k, 50, fd, 1e-5);
    rec.add("jacobi.kahler_form_positive", "omega > 0", n, k, 50, std::max(0.0, neg), 0.0);
    double inv = 0, qinv = 0;
    for (int s = 0; s < 20; ++s) {
        const JacobiElement h = jacobi_random(n, 0.4, 0.6, rng);
        const CSPoint p = random_point(n, 0.6, 0.5, rng);
        const CMat J = numdiff::holomorphic_jacobian(
            [&](const CVec& xi) { return to_coords(act(h, from_coords(xi, n))); }, to_coords(p));
        const CMat H = kahler_form(p, k);
        inv = std::max(inv, max_abs(CMat(J.transpose() * kahler_form(act(h, p), k) * J.conjugate() - H)) / max_abs(H));
        qinv = std::max(qinv, std::abs(density(act(h, p)) * std::norm(J.determinant()) / density(p) - 1.0));
    }
    rec.add("jacobi.kahler_form_invariant", "J^t omega(h.x) conj J = omega(x)", n, k, 20, inv, 1e-5);
    rec.add("jacobi.density_invariant", "Q(h.x)|det J|^2=Q(x), Q=det(1-WW̄)^{-(n+2)}", n, k, 20, qinv, 1e-5);
    rec.run("jacobi.representation_homomorphism", "pi(h1)pi(h2)=pi(h1h2)", n, k, 20, 1e-9, [&] {
        double w = 0;
        const PointFunction f = [](const CSPoint& x) { return cplx(1.0) + x.z.sum() + x.z.squaredNorm() + x.W.W().sum(); };
        for (int s = 0; s < 20; ++s) {
            const JacobiElement h1 = jacobi_random(n, 0.4, 0.6, rng), h2 = jacobi_random(n, 0.4, 0.6, rng);
            const CSPoint p = random_point(n, 0.6, 0.5, rng);
            const PointFunction inner = [&](const CSPoint& y) { return pik_apply(h2, k, f, y, copt); };
            w = std::max(w, rel(pik_apply(h1, k, inner, p, copt), pik_apply(jacobi_compose(h1, h2), k, f, p, copt)));
        }
        return w;
    });
}

inline void suite_oracle(const Options& opt, const Conventions& conv, std::vector<CheckRecord>& out)
{
    using namespace fock;
    detail::Recorder rec(out, opt);
    const int N = opt.cutoff;
    const int L = N / 2;
    Rng rng = substream(opt.seed, 3);
    auto block = [](const CMat& M, int l) { return max_abs(CMat(M.topLeftCorner(l, l))); };

    rec.add("oracle.i_convention", "S(w)e0=(1-|w|^2)^{1/4} exp(wK+)e0", 1, 1, 0,
            conv.i_convention == "i-free" ? 0.0 : 1.0, 0.0, conv.i_convention);
    rec.run("oracle.vacuum", "a e0=0, K0 e0=e0/4", 1, 1, 0, 1e-15, [&] {
        const auto [a, ad] = ladder(N);
        const CVec e0 = vacuum(N).amp;
        return std::max((a.m * e0).norm(), (k_zero(N).m * e0 - 0.25 * e0).norm());
    });
    rec.run("oracle.table_brackets", "[K-,K+]=2K0, [K0,K+-]=+-K+-, [a,K+]=a+", 1, 1, 0, 1e-12, [&] {
        const CMat Kp = k_plus(N).m, Km = k_minus(N).m, K0 = k_zero(N).m;
        const auto [a, ad] = ladder(N);
        auto br = [](const CMat& x, const CMat& y) { return CMat(x * y - y * x); };
        return std::max({block(br(Km, Kp) - 2.0 * K0, N - 1), block(br(K0, Kp) - Kp, N - 1),
                         block(br(K0, Km) + Km, N - 1), block(br(a.m, Kp) - ad.m, N - 1),
                         block(br(a.m, ad.m) - eye(N + 1), N)});
    });
    rec.run("oracle.displacement_forms", "exp(alpha a+ - conj(alpha) a) = e^{-|alpha|^2/2} e^{alpha a+} e^{-conj(alpha) a}",
            1, 1, 0, 1e-9, [&] {
                const cplx al(0.3, -0.2);
                return std::max(block(displacement(al, N).m - displacement_normal(al, N).m, L),
                                std::abs(displacement_normal(0.5, N).m(0, 0) - std::exp(-0.125)));
            });
    rec.run("oracle.displacement_product", "D(a2)D(a1)=e^{i Im(a2 conj a1)}D(a1+a2)", 1, 1, 0, 1e-9, [&] {
        const cplx a1(0.3, -0.2), a2(-0.1, 0.4);
        const CMat lhs = displacement_normal(a2, N).m * displacement_normal(a1, N).m;
        return block(lhs - std::polar(1.0, (a2 * std::conj(a1)).imag()) * displacement_normal(a1 + a2, N).m, L);
    });
    rec.run("oracle.squeeze_forms", "S(w)=e^{wK+}e^{eta K0}e^{-conj(w)K-}=e^{-conj(w)K-}e^{-eta K0}e^{wK+}", 1, 1, 0, 1e-9, [&] {
        return block(squeeze(0.3, N).m - squeeze_antinormal(0.3, N).m, N / 4);
    });
    rec.run("oracle.squeeze_underline", "S(w)=exp(zeta K+ - conj(zeta) K-), w=tanh|zeta| zeta/|zeta|", 1, 1, 0, 1e-8, [&] {
        const cplx zeta(0.2, 0.25);
        return std::max(block(squeeze_underline(std::atanh(0.3), N).m - squeeze(0.3, N).m, L),
                        block(squeeze_underline(zeta, N).m - squeeze(w_of_zeta(zeta), N).m, L));
    });
    rec.run("oracle.squeezed_vacuum", "S(w)e0=(1-|w|^2)^{1/4} e_{0,w}", 1, 1, 0, 1e-9,
            [&] { return check_lemma6(0.0, 0.3, N); });
    rec.run("oracle.displaced_vacuum", "D(alpha)e0=e^{-|alpha|^2/2} e_{alpha,0}", 1, 1, 0, 1e-10,
            [&] { return check_lemma6(0.4, 0.0, N); });
    rec.run("oracle.displaced_squeezed_vacuum", "D(alpha)S(w)e0=(1-|w|^2)^{1/4} e^{-conj(alpha)z/2} e_{z,w}, z=alpha-w conj(alpha)", 1, 1, 0,
            1e-7, [&] { return check_lemma6(0.4, 0.3, N); });
    rec.run("oracle.hpb", "aS=S(cosh|zeta| a+sinh|zeta| zeta/|zeta| a+); D(alpha)S=SD(beta); SD(alpha)=D(alpha_g)S", 1, 1,
            0, 1e-7, [&] {
                return std::max(check_hpb(0.3, 0.2, N).max(), check_hpb(cplx(0.2, -0.25), cplx(0.1, 0.15), N).max());
            });
    const int pairs = 20;
    double kres = 0, kres2 = 0;
    for (int s = 0; s < pairs; ++s) {
        const CSPoint x{random_ball_vector(1, 0.4, rng), detail::rand_siegel(1, 0.4, rng)};
        const CSPoint y{random_ball_vector(1, 0.4, rng), detail::rand_siegel(1, 0.4, rng)};
        const cplx closed = jacobi::kernel(x, y, 1.0);
        kres = std::max(kres, std::abs(oracle_kernel(x, y, N) - closed));
        kres2 = std::max(kres2, std::abs(oracle_kernel(x, y, 2 * N) - closed));
    }
    rec.add("oracle.kernel", "(e_x,e_y) = K(x,y) at k=1", 1, 1, pairs, kres, 1e-7);
    rec.add("oracle.kernel_cutoff_doubling", "residual(2N) <= residual(N)", 1, 1, pairs,
            std::max(0.0, kres2 - std::max(kres, 1e-14)), 0.0);
    const int mm = 20;
    rec.run("oracle.cs_action", "S(g)D(alpha)e_{z,w}=lambda e_{z1,w1}", 1, 1, mm, 1e-6, [&] {
        double w = 0;
        for (int s = 0; s < mm; ++s) {
            const JacobiElement h{detail::sp1_sample(0.4, rng), random_ball_vector(1, 0.4, rng), uniform(rng, -1.0, 1.0)};
            const CSPoint x{random_ball_vector(1, 0.4, rng), detail::rand_siegel(1, 0.4, rng)};
            w = std::max(w, check_cs_action(h, x, N));
        }
        return w;
    });
    rec.run("oracle.central_phase", "pi(h)=e^{ict}S(g)D(alpha), c resolved", 1, 2, 20, 1e-9, [&] {
        if (conv.central_phase == 0.0)
            return detail::kInf;
        Rng r = substream(opt.seed, 31);
        return detail::multiplicativity(1, 2.0, conv.central_phase, 20, r);
    });
}

inline void suite_gj1(const Options& opt, const Conventions&, std::vector<CheckRecord>& out)
{
    using namespace gj1;
    detail::Recorder rec(out, opt);
    const double k = opt.k.value_or(4.0);
    const double kappa = kappa_of_k(k);
    Rng rng = substream(opt.seed, 4);
    const cplx I(0.0, 1.0);

    rec.run("gj1.pn_table", "P_n=n! sum (w/2)^j z^{n-2j}/(j!(n-2j)!)", 1, k, 0, 0.0, [&] {
        const std::vector<std::string> table{"1", "z", "w + z^2", "3*z*w + z^3", "3*w^2 + 6*z^2*w + z^4",
                                             "15*z*w^2 + 10*z^3*w + z^5"};
        double bad = 0;
        for (int m = 0; m <= 5; ++m)
            bad += pn_poly(m).str() != table[static_cast<std::size_t>(m)];
        return bad;
    });
    rec.run("gj1.hermite_exact", "P_n=(i/sqrt2)^n w^{n/2} H_n(-iz/sqrt(2w))", 1, k, 0, 0.0, [&] {
        double bad = 0;
        for (int m = 0; m <= 8; ++m)
            bad += !(hermite_exact(m) == pn_poly(m));
        return bad;
    });
    rec.run("gj1.hermite_numeric", "P_5(0.3,0.2) via H_5", 1, k, 0, 1e-12, [&] { return hermite_check(5, 0.3, 0.2); });
    rec.run("gj1.kernel_series", "sum f conj f = (1-w conj w')^{-2 kappa} exp(...)", 1, 4.0, 0, 1e-6, [&] {
        const cplx closed = kernel_closed(0.1, 0.2, 0.2, 0.1, 1.0);
        return std::abs(kernel_partial_sum(0.1, 0.2, 0.2, 0.1, 1.0, 40) - closed) / std::abs(closed);
    });
    rec.run("gj1.kernel_series_monotone", "truncation error decreases with order", 1, 6.0, 0, 0.0, [&] {
        double prev = detail::kInf, bad = 0;
        for (int order : {4, 8, 16, 32}) {
            const double e = std::abs(kernel_partial_sum(0.5, 0.5, 0.4, 0.45, 1.5, order)
                                      - kernel_closed(0.5, 0.5, 0.4, 0.45, 1.5));
            bad += e >= prev;
            prev = e;
        }
        return bad;
    });
    rec.run("gj1.kernel_matches_general", "kappa=k/4", 1, k, 50, 1e-12, [&] {
        double w = 0;
        for (int s = 0; s < 50; ++s) {
            const CSPoint x = jacobi::random_point(1, 0.8, 0.6, rng), y = jacobi::random_point(1, 0.8, 0.6, rng);
            const cplx a = kernel_closed(y.z[0], y.W.W()(0, 0), x.z[0], x.W.W()(0, 0), kappa);
            w = std::max(w, detail::rel(jacobi::kernel(x, y, k), a));
        }
        return w;
    });
    auto uhp = [&] {
        return UpperHalfPoint{cplx(uniform(rng, -2.0, 2.0), uniform(rng, 0.2, 3.0)),
                              cplx(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0))};
    };
    rec.run("gj1.cayley_roundtrip", "w=(v-i)/(v+i), z=2iu/(v+i)", 1, k, 100, 1e-12, [&] {
        double w = 0;
        for (int s = 0; s < 100; ++s) {
            const UpperHalfPoint p = uhp();
            const auto [cw, cz] = cayley(p.v, p.u);
            const UpperHalfPoint q = cayley_inverse(cw, cz);
            w = std::max(w, (std::abs(q.v - p.v) + std::abs(q.u - p.u)) / (1.0 + std::abs(p.v)));
        }
        return w;
    });
    rec.run("gj1.kb_form", "pullback of dz+conj(alpha0)dw form = du-(u-ū)/(v-v̄)dv form", 1, k, 100, 1e-8, [&] {
        double w = kb_form_check(I, 0.0, kappa);
        for (int s = 0; s < 100; ++s) {
            const UpperHalfPoint p = uhp();
            w = std::max(w, kb_form_check(p.v, p.u, kappa));
        }
        return w;
    });
    rec.run("gj1.kb_form_origin", "-2 kappa/(v̄-v)^2 at v=i", 1, k, 0, 1e-15,
            [&] { return std::abs(halfplane_form(I, 0.0, kappa)(0, 0) - 0.5 * kappa); });
    double ez = 0, ezneg = 0;
    for (int s = 0; s < 100; ++s) {
        const EZCoords c{uniform(rng, -2, 2), uniform(rng, 0.2, 3), uniform(rng, -1, 1), uniform(rng, -1, 1)};
        const Eigen::Matrix4d m = ez_metric(c, kappa);
        ez = std::max(ez, (ez_metric_from_form(c, kappa) - m).cwiseAbs().maxCoeff() / m.cwiseAbs().maxCoeff());
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(m);
        ezneg = std::max(ezneg, -es.eigenvalues().minCoeff());
    }
    rec.add("gj1.ez_metric", "ds^2=kappa/(2y^2)(dx^2+dy^2)+((x^2+y^2)dp^2+dq^2+2x dp dq)/y", 1, k, 100, ez, 1e-8);
    rec.add("gj1.ez_metric_positive", "ds^2 > 0", 1, k, 100, std::max(0.0, ezneg), 0.0);
    double act = 0, tw = 0;
    for (int s = 0; s < 100; ++s) {
        const Gj0Element g1 = gj0_random(rng), g2 = gj0_random(rng);
        const UpperHalfPoint p = uhp();
        const UpperHalfPoint a = gj0_act(g1, gj0_act(g2, p)), b = gj0_act(gj0_compose(g1, g2), p);
        act = std::max(act, (std::abs(a.v - b.v) + std::abs(a.u - b.u)) / (1.0 + std::abs(a.v) + std::abs(a.u)));
        const UpperHalfPoint gp = gj0_act(g1, p);
        const auto [w1, z1] = cayley(gp.v, gp.u);
        const auto [w0, z0] = cayley(p.v, p.u);
        const CSPoint x{CVec::Constant(1, z0), SiegelPoint::unchecked(CMat::Constant(1, 1, w0))};
        const CSPoint y = jacobi::act(cayley_to_jacobi(g1), x);
        tw = std::max(tw, std::abs(y.W.W()(0, 0) - w1) + std::abs(y.z[0] - z1));
    }
    rec.add("gj1.gj0_action", "v1=(av+b)/(cv+d), u1=(u+l1 v+l2)/(cv+d)", 1, k, 100, act, 1e-11);
    rec.add("gj1.cayley_intertwines", "cayley(g.p)=h_g.cayley(p), alpha=l2+i l1", 1, k, 100, tw, 1e-8);
}

inline void suite_measure(const Options& opt, const Conventions&, std::vector<CheckRecord>& out)
{
    detail::Recorder rec(out, opt);
    const int n = opt.n;
    const double k = opt.k.value_or(2.0 * n + 4.0);
    if (!(k > 2.0 * n + 1.0))
        fail(Errc::InvalidArgument, "the measure suite needs k > 2n+1");
    const jacobi::PointFunction one = [](const CSPoint&) { return cplx(1.0); };
    const auto est = measure::estimate(n, k, opt.samples, opt.seed, {one}, opt.workers);
    rec.add("measure.normalization", "Lambda int Q K^{-1} dz dW = 1", n, k, opt.samples,
            std::abs(est[0].mean - 1.0), 1e-2, "stderr " + std::to_string(est[0].stderr_));
    rec.run("measure.worker_invariance", "estimate independent of worker count", n, k, 65536, 0.0, [&] {
        const std::uint64_t m = std::min<std::uint64_t>(opt.samples, 65536);
        const auto a = measure::estimate(n, k, m, opt.seed, {one}, 1);
        const auto b = measure::estimate(n, k, m, opt.seed, {one}, 3);
        return std::abs(a[0].mean - b[0].mean) + std::abs(a[0].stderr_ - b[0].stderr_);
    });
    if (n == 1) {
        auto point = [](cplx z, cplx w) {
            return CSPoint{CVec::Constant(1, z), SiegelPoint::make(CMat::Constant(1, 1, w))};
        };
        const jacobi::PointFunction fz = [](const CSPoint& x) { return x.z[0]; };
        const jacobi::PointFunction fw = [](const CSPoint& x) { return x.W.W()(0, 0); };
        struct Case {
            std::string id;
            jacobi::PointFunction f;
            CSPoint x0;
            double tol;
        };
        const std::vector<Case> cases{{"measure.reproduce_one", one, point(0.0, 0.0), 1e-2},
                                      {"measure.reproduce_z", fz, point(0.2, 0.1), 3e-2},
                                      {"measure.reproduce_w", fw, point(0.0, 0.3), 3e-2}};
        std::uint64_t sub = 1;
        for (const auto& c : cases) {
            const std::uint64_t seed = opt.seed * 1000003ULL + sub++;
            rec.run(c.id, "f(x0)=Lambda int K(x,x0) f(x) Q K(x,x)^{-1} dx", n, k, opt.samples, c.tol, [&] {
                return measure::reproduce_check(c.f, c.x0, k, opt.samples, seed, opt.workers).relerr;
            });
        }
    }
}

inline VerifyReport run(const std::string& suite, const Options& opt)
{
    if (!is_suite(suite))
        fail(Errc::InvalidArgument, "unknown suite " + suite);
    if (opt.n < 1 || opt.n > 4)
        fail(Errc::InvalidArgument, "n must be between 1 and 4");
    if (opt.cutoff < 8 || opt.cutoff > 400)
        fail(Errc::InvalidArgument, "cutoff must be between 8 and 400");
    if (opt.samples < 1)
        fail(Errc::InvalidArgument, "samples must be positive");
    VerifyReport rep;
    rep.suite = suite;
    rep.options = opt;
    rep.conventions = resolve_conventions(opt.seed);
    const bool all = suite == "all";
    if (all || suite == "algebra")
        suite_algebra(opt, rep.conventions, rep.checks);
    if (all || suite == "symplectic")
        suite_symplectic(opt, rep.conventions, rep.checks);
    if (all || suite == "jacobi")
        suite_jacobi(opt, rep.conventions, rep.checks);
    if (all || suite == "oracle")
        suite_oracle(opt, rep.conventions, rep.checks);
    if (all || suite == "gj1")
        suite_gj1(opt, rep.conventions, rep.checks);
    if (all || suite == "measure")
        suite_measure(opt, rep.conventions, rep.checks);
    return rep;
}

inline json to_json(const VerifyReport& r)
{
    json checks = json::array();
    for (const auto& c : r.checks) {
        json j{{"check", c.check}, {"anchor", c.anchor},          {"n", c.n},
               {"k", c.k},         {"samples", c.samples},        {"residual", c.residual},
               {"tolerance", c.tolerance}, {"pass", c.pass}};
        if (!std::isfinite(c.residual))
            j["residual"] = "inf";
        if (!c.note.empty())
            j["note"] = c.note;
        checks.push_back(j);
    }
    const Conventions& cv = r.conventions;
    json conv{{"action_order", cv.action_order},
              {"sigma", cv.sigma},
              {"central_phase", cv.central_phase},
              {"kernel_placement", cv.kernel_placement},
              {"coordinates", cv.coordinates},
              {"k0_order", cv.k0_order},
              {"i_convention", cv.i_convention}};
    json opts{{"n", r.options.n},
              {"seed", r.options.seed},
              {"samples", r.options.samples},
              {"cutoff", r.options.cutoff}};
    if (r.options.k)
        opts["k"] = *r.options.k;
    return {{"suite", r.suite}, {"pass", r.pass()}, {"options", opts}, {"conventions", conv}, {"checks", checks}};
}

} // namespace gjn::verify
