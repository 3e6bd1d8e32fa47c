#pragma once

#include <json.hpp>

#include <string>

#include "gjn/errors.hpp"
#include "gjn/jacobi.hpp"
#include "gjn/matfun.hpp"
#include "gjn/symplectic.hpp"

// {"rows","cols","re","im"} row-major matrices; points and elements built from them
namespace gjn::json_io {

using nlohmann::json;

// adding 0.0 maps -0.0 to 0.0
inline json to_json(cplx c) { return json::array({c.real() + 0.0, c.imag() + 0.0}); }

inline json to_json(const CMat& m)
{
    json re = json::array(), im = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            re.push_back(m(i, j).real() + 0.0);
            im.push_back(m(i, j).imag() + 0.0);
        }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

inline json to_json(const CVec& v)
{
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        a.push_back(to_json(v[i]));
    return a;
}

inline json to_json(const SpElement& g) { return {{"a", to_json(g.a)}, {"b", to_json(g.b)}}; }
inline json to_json(const CSPoint& x) { return {{"z", to_json(x.z)}, {"W", to_json(x.W.W())}}; }
inline json to_json(const JacobiElement& h)
{
    return {{"g", to_json(h.g)}, {"alpha", to_json(h.alpha)}, {"t", h.t}};
}

[[noreturn]] inline void bad(const std::string& what) { fail(Errc::InvalidArgument, "malformed JSON: " + what); }

inline double number(const json& j, const std::string& what)
{
    if (!j.is_number())
        bad(what + " must be a number");
    return j.get<double>();
}

inline cplx complex_from(const json& j)
{
    if (j.is_number())
        return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2)
        bad("complex values are [re, im] pairs");
    return {number(j[0], "re"), number(j[1], "im")};
}

inline CMat cmat_from(const json& j)
{
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("re"))
        bad("matrix needs rows, cols, re");
    const auto r = j["rows"].get<long long>();
    const auto c = j["cols"].get<long long>();
    if (r < 0 || c < 0)
        bad("negative matrix size");
    const json& re = j["re"];
    const json im = j.contains("im") ? j["im"] : json::array();
    if (!re.is_array() || static_cast<long long>(re.size()) != r * c)
        bad("re has the wrong length");
    if (!im.empty() && (!im.is_array() || static_cast<long long>(im.size()) != r * c))
        bad("im has the wrong length");
    CMat m(r, c);
    for (long long i = 0; i < r; ++i)
        for (long long k = 0; k < c; ++k) {
            const auto idx = static_cast<std::size_t>(i * c + k);
            m(i, k) = cplx(number(re[idx], "re entry"), im.empty() ? 0.0 : number(im[idx], "im entry"));
        }
    return m;
}

inline CVec cvec_from(const json& j)
{
    if (!j.is_array())
        bad("vectors are arrays of [re, im] pairs");
    CVec v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v[static_cast<Eigen::Index>(i)] = complex_from(j[i]);
    return v;
}

inline SpElement sp_from(const json& j, double tol = kDefaultTol)
{
    if (!j.is_object() || !j.contains("a") || !j.contains("b"))
        bad("SpElement needs a and b");
    return symplectic::sp_new(cmat_from(j["a"]), cmat_from(j["b"]), tol);
}

inline CSPoint point_from(const json& j)
{
    if (!j.is_object() || !j.contains("z") || !j.contains("W"))
        bad("point needs z and W");
    const json& W = j["W"];
    // n=1 shorthand: W as a number or [re, im]
    if (!W.is_object())
        return jacobi::make_point(cvec_from(j["z"]), CMat::Constant(1, 1, complex_from(W)));
    return jacobi::make_point(cvec_from(j["z"]), cmat_from(W));
}

inline JacobiElement jacobi_from(const json& j, double tol = kDefaultTol)
{
    if (!j.is_object() || !j.contains("g") || !j.contains("alpha"))
        bad("JacobiElement needs g and alpha");
    JacobiElement h{sp_from(j["g"], tol), cvec_from(j["alpha"]), j.contains("t") ? number(j["t"], "t") : 0.0};
    if (h.alpha.size() != h.g.dim())
        bad("alpha and g dimensions differ");
    return h;
}

} // namespace gjn::json_io
