#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gjn/rational.hpp"

namespace gjn::diffops {

using exact::Coef;
using exact::GaussRat;
using exact::Rational;

using VarSet = std::shared_ptr<const std::vector<std::string>>;
using Exps = std::vector<int>;

inline VarSet make_vars(std::vector<std::string> names)
{
    return std::make_shared<const std::vector<std::string>>(std::move(names));
}

inline bool same_vars(const VarSet& a, const VarSet& b) { return a == b || (a && b && *a == *b); }

inline void require_same(const VarSet& a, const VarSet& b)
{
    if (!same_vars(a, b))
        fail(Errc::VariableMismatch, "operands use different variable sets");
}

// graded order: total degree first, then reverse lexicographic on exponents
struct ExpsLess {
    bool operator()(const Exps& a, const Exps& b) const
    {
        int da = 0, db = 0;
        for (int e : a) da += e;
        for (int e : b) db += e;
        if (da != db)
            return da < db;
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    }
};

class MPoly {
public:
    MPoly() = default;
    explicit MPoly(VarSet vars) : vars_(std::move(vars)) {}

    static MPoly constant(VarSet vars, const Coef& c)
    {
        MPoly p(vars);
        p.add_term(Exps(p.nvars(), 0), c);
        return p;
    }

    static MPoly variable(VarSet vars, int index, const Coef& c = Coef(1))
    {
        MPoly p(vars);
        Exps e(p.nvars(), 0);
        e.at(static_cast<std::size_t>(index)) = 1;
        p.add_term(e, c);
        return p;
    }

    const VarSet& vars() const { return vars_; }
    std::size_t nvars() const { return vars_ ? vars_->size() : 0; }
    const std::map<Exps, Coef, ExpsLess>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Exps& e, const Coef& c)
    {
        if (c.is_zero())
            return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
            return;
        }
        it->second = it->second + c;
        if (it->second.is_zero())
            terms_.erase(it);
    }

    friend MPoly operator+(const MPoly& a, const MPoly& b)
    {
        require_same(a.vars_, b.vars_);
        MPoly r = a;
        for (const auto& [e, c] : b.terms_)
            r.add_term(e, c);
        return r;
    }
    friend MPoly operator-(const MPoly& a) { return a * Coef(-1); }
    friend MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }

    friend MPoly operator*(const MPoly& a, const Coef& s)
    {
        MPoly r(a.vars_);
        for (const auto& [e, c] : a.terms_)
            r.add_term(e, c * s);
        return r;
    }

    friend MPoly operator*(const MPoly& a, const MPoly& b)
    {
        require_same(a.vars_, b.vars_);
        MPoly r(a.vars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exps e(ea.size());
                for (std::size_t i = 0; i < e.size(); ++i)
                    e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    friend bool operator==(const MPoly& a, const MPoly& b) { return same_vars(a.vars_, b.vars_) && a.terms_ == b.terms_; }

    MPoly derivative(int index) const
    {
        MPoly r(vars_);
        const auto i = static_cast<std::size_t>(index);
        for (const auto& [e, c] : terms_) {
            if (e[i] == 0)
                continue;
            Exps f = e;
            f[i] -= 1;
            r.add_term(f, c * Coef(e[i]));
        }
        return r;
    }

    int max_kappa_degree() const
    {
        int d = -1;
        for (const auto& [e, c] : terms_)
            d = std::max(d, c.degree());
        return d;
    }

    std::string str() const
    {
        if (terms_.empty())
            return "0";
        std::string s;
        for (const auto& [e, c] : terms_) {
            if (!s.empty())
                s += " + ";
            std::string mono;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0)
                    continue;
                if (!mono.empty())
                    mono += "*";
                mono += (*vars_)[i];
                if (e[i] > 1)
                    mono += "^" + std::to_string(e[i]);
            }
            const std::string cs = c.str();
            if (mono.empty())
                s += cs;
            else if (cs == "1")
                s += mono;
            else if (cs == "-1")
                s += "-" + mono;
            else
                s += cs + "*" + mono;
        }
        return s;
    }

private:
    VarSet vars_;
    std::map<Exps, Coef, ExpsLess> terms_;
};

// scalar + sum_v coef_v d/dv
class PolyDiffOp {
public:
    PolyDiffOp() = default;
    explicit PolyDiffOp(VarSet vars) : vars_(vars), scalar_(vars) {}

    static PolyDiffOp multiplication(const MPoly& p)
    {
        PolyDiffOp d(p.vars());
        d.scalar_ = p;
        return d;
    }

    static PolyDiffOp partial(VarSet vars, int index, const Coef& c = Coef(1))
    {
        PolyDiffOp d(vars);
        d.add_first(index, MPoly::constant(vars, c));
        return d;
    }

    const VarSet& vars() const { return vars_; }
    const MPoly& scalar() const { return scalar_; }
    const std::map<int, MPoly>& first_order() const { return d_; }

    void add_scalar(const MPoly& p) { scalar_ = scalar_ + p; }

    void add_first(int index, const MPoly& p)
    {
        auto it = d_.find(index);
        if (it == d_.end()) {
            if (!p.is_zero())
                d_.emplace(index, p);
            return;
        }
        it->second = it->second + p;
        if (it->second.is_zero())
            d_.erase(it);
    }

    bool is_zero() const { return scalar_.is_zero() && d_.empty(); }

    friend PolyDiffOp operator+(const PolyDiffOp& a, const PolyDiffOp& b)
    {
        require_same(a.vars_, b.vars_);
        PolyDiffOp r = a;
        r.add_scalar(b.scalar_);
        for (const auto& [v, p] : b.d_)
            r.add_first(v, p);
        return r;
    }
    friend PolyDiffOp operator*(const PolyDiffOp& a, const Coef& s)
    {
        PolyDiffOp r(a.vars_);
        r.scalar_ = a.scalar_ * s;
        for (const auto& [v, p] : a.d_)
            r.add_first(v, p * s);
        return r;
    }
    friend PolyDiffOp operator-(const PolyDiffOp& a, const PolyDiffOp& b) { return a + b * Coef(-1); }

    // left multiplication by a polynomial
    friend PolyDiffOp operator*(const MPoly& p, const PolyDiffOp& a)
    {
        PolyDiffOp r(a.vars_);
        r.scalar_ = p * a.scalar_;
        for (const auto& [v, c] : a.d_)
            r.add_first(v, p * c);
        return r;
    }

    friend bool operator==(const PolyDiffOp& a, const PolyDiffOp& b)
    {
        if (!same_vars(a.vars_, b.vars_) || !(a.scalar_ == b.scalar_) || a.d_.size() != b.d_.size())
            return false;
        for (const auto& [v, p] : a.d_) {
            auto it = b.d_.find(v);
            if (it == b.d_.end() || !(it->second == p))
                return false;
        }
        return true;
    }

    std::string str() const
    {
        std::string s;
        if (!scalar_.is_zero())
            s = scalar_.str();
        for (const auto& [v, p] : d_) {
            if (!s.empty())
                s += " + ";
            s += "(" + p.str() + ")*d/d" + (*vars_)[static_cast<std::size_t>(v)];
        }
        return s.empty() ? "0" : s;
    }

private:
    VarSet vars_;
    MPoly scalar_;
    std::map<int, MPoly> d_;
};

inline MPoly op_apply(const PolyDiffOp& D, const MPoly& p)
{
    require_same(D.vars(), p.vars());
    MPoly r = D.scalar() * p;
    for (const auto& [v, c] : D.first_order())
        r = r + c * p.derivative(v);
    return r;
}

// D1 o D2 keeps a second-order part; commutators must cancel it
struct SecondOrderOp {
    MPoly scalar;
    std::map<int, MPoly> first;
    std::map<std::pair<int, int>, MPoly> second;  // keys with u <= v
};

inline void accumulate(std::map<int, MPoly>& m, int k, const MPoly& p)
{
    auto it = m.find(k);
    if (it == m.end())
        m.emplace(k, p);
    else
        it->second = it->second + p;
}

inline void accumulate(std::map<std::pair<int, int>, MPoly>& m, std::pair<int, int> k, const MPoly& p)
{
    auto it = m.find(k);
    if (it == m.end())
        m.emplace(k, p);
    else
        it->second = it->second + p;
}

inline SecondOrderOp compose(const PolyDiffOp& D1, const PolyDiffOp& D2)
{
    require_same(D1.vars(), D2.vars());
    SecondOrderOp r{op_apply(D1, D2.scalar()), {}, {}};
    for (const auto& [v, c2] : D2.first_order())
        accumulate(r.first, v, op_apply(D1, c2));
    for (const auto& [u, c1] : D1.first_order()) {
        accumulate(r.first, u, c1 * D2.scalar());
        for (const auto& [v, c2] : D2.first_order())
            accumulate(r.second, {std::min(u, v), std::max(u, v)}, c1 * c2);
    }
    return r;
}

inline PolyDiffOp op_commutator(const PolyDiffOp& D1, const PolyDiffOp& D2)
{
    const SecondOrderOp a = compose(D1, D2);
    const SecondOrderOp b = compose(D2, D1);
    for (const auto& [k, p] : a.second) {
        auto it = b.second.find(k);
        const MPoly diff = it == b.second.end() ? p : p - it->second;
        if (!diff.is_zero())
            fail(Errc::SecondOrderResidue, "second-order terms did not cancel: " + diff.str());
    }
    for (const auto& [k, p] : b.second)
        if (a.second.find(k) == a.second.end() && !p.is_zero())
            fail(Errc::SecondOrderResidue, "second-order terms did not cancel: " + p.str());
    PolyDiffOp r = PolyDiffOp::multiplication(a.scalar - b.scalar);
    for (const auto& [v, p] : a.first)
        r.add_first(v, p);
    for (const auto& [v, p] : b.first)
        r.add_first(v, -p);
    return r;
}

// generator labels
enum class Kind { A, Adag, Kplus, Kminus, Kzero, One };

struct Label {
    Kind kind = Kind::One;
    int i = 0;
    int j = 0;

    // K+ and K- are symmetric in their indices
    Label canonical() const
    {
        if ((kind == Kind::Kplus || kind == Kind::Kminus) && i > j)
            return {kind, j, i};
        return *this;
    }

    std::string str() const
    {
        const std::string ij = std::to_string(i + 1) + std::to_string(j + 1);
        switch (kind) {
        case Kind::A: return "a_" + std::to_string(i + 1);
        case Kind::Adag: return "a+_" + std::to_string(i + 1);
        case Kind::Kplus: return "K+_" + ij;
        case Kind::Kminus: return "K-_" + ij;
        case Kind::Kzero: return "K0_" + ij;
        case Kind::One: return "1";
        }
        return "?";
    }

    friend bool operator<(const Label& a, const Label& b)
    {
        return std::tie(a.kind, a.i, a.j) < std::tie(b.kind, b.i, b.j);
    }
    friend bool operator==(const Label& a, const Label& b)
    {
        return a.kind == b.kind && a.i == b.i && a.j == b.j;
    }
};

using LinComb = std::map<Label, Rational>;

inline void add_to(LinComb& lc, const Label& l, const Rational& c)
{
    if (c.is_zero())
        return;
    const Label k = l.canonical();
    auto it = lc.find(k);
    if (it == lc.end()) {
        lc.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero())
        lc.erase(it);
}

inline LinComb negate(const LinComb& lc)
{
    LinComb r;
    for (const auto& [l, c] : lc)
        r.emplace(l, -c);
    return r;
}

inline std::string lincomb_str(const LinComb& lc)
{
    if (lc.empty())
        return "0";
    std::string s;
    for (const auto& [l, c] : lc) {
        if (!s.empty())
            s += " + ";
        s += c.str() + "*" + l.str();
    }
    return s;
}

inline std::vector<Label> jacobi_labels(int n, bool with_heisenberg = true)
{
    std::vector<Label> out;
    if (with_heisenberg) {
        for (int i = 0; i < n; ++i)
            out.push_back({Kind::A, i, 0});
        for (int i = 0; i < n; ++i)
            out.push_back({Kind::Adag, i, 0});
    }
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            out.push_back({Kind::Kplus, i, j});
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            out.push_back({Kind::Kminus, i, j});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.push_back({Kind::Kzero, i, j});
    return out;
}

// the commutation relations in the form they are tabulated; nullopt when only the reversed order is tabulated
inline std::optional<LinComb> tabulated_bracket(const Label& X, const Label& Y)
{
    auto d = [](int p, int q) { return p == q ? Rational(1) : Rational(0); };
    const Rational half(1, 2);
    LinComb r;
    const Kind x = X.kind, y = Y.kind;
    if (x == Kind::One || y == Kind::One)
        return r;
    if (x == Kind::A && y == Kind::Adag) {
        add_to(r, {Kind::One, 0, 0}, d(X.i, Y.i));
        return r;
    }
    if ((x == Kind::A && y == Kind::A) || (x == Kind::Adag && y == Kind::Adag))
        return r;
    if ((x == Kind::Kminus && y == Kind::Kminus) || (x == Kind::Kplus && y == Kind::Kplus))
        return r;
    if (x == Kind::Kminus && y == Kind::Kplus) {
        const int i = X.i, j = X.j, k = Y.i, l = Y.j;
        add_to(r, {Kind::Kzero, k, j}, half * d(l, i));
        add_to(r, {Kind::Kzero, l, j}, half * d(k, i));
        add_to(r, {Kind::Kzero, k, i}, half * d(l, j));
        add_to(r, {Kind::Kzero, l, i}, half * d(k, j));
        return r;
    }
    if (x == Kind::Kminus && y == Kind::Kzero) {
        const int i = X.i, j = X.j, k = Y.i, l = Y.j;
        add_to(r, {Kind::Kminus, i, l}, half * d(k, j));
        add_to(r, {Kind::Kminus, j, l}, half * d(k, i));
        return r;
    }
    if (x == Kind::Kplus && y == Kind::Kzero) {
        const int i = X.i, j = X.j, k = Y.i, l = Y.j;
        add_to(r, {Kind::Kplus, i, k}, -half * d(j, l));
        add_to(r, {Kind::Kplus, j, k}, -half * d(l, i));
        return r;
    }
    if (x == Kind::Kzero && y == Kind::Kzero) {
        const int j = X.i, i = X.j, k = Y.i, l = Y.j;
        add_to(r, {Kind::Kzero, j, l}, half * d(k, i));
        add_to(r, {Kind::Kzero, k, i}, -half * d(l, j));
        return r;
    }
    if ((x == Kind::Adag && y == Kind::Kplus) || (x == Kind::A && y == Kind::Kminus))
        return r;
    if (x == Kind::A && y == Kind::Kplus) {
        const int i = X.i, k = Y.i, j = Y.j;
        add_to(r, {Kind::Adag, j, 0}, half * d(i, k));
        add_to(r, {Kind::Adag, k, 0}, half * d(i, j));
        return r;
    }
    if (x == Kind::Kminus && y == Kind::Adag) {
        const int k = X.i, j = X.j, i = Y.i;
        add_to(r, {Kind::A, j, 0}, half * d(i, k));
        add_to(r, {Kind::A, k, 0}, half * d(i, j));
        return r;
    }
    if (x == Kind::Kzero && y == Kind::Adag) {
        const int i = X.i, j = X.j, k = Y.i;
        add_to(r, {Kind::Adag, i, 0}, half * d(j, k));
        return r;
    }
    if (x == Kind::A && y == Kind::Kzero) {
        const int k = X.i, i = Y.i, j = Y.j;
        add_to(r, {Kind::A, j, 0}, half * d(i, k));
        return r;
    }
    return std::nullopt;
}

class AlgebraTable {
public:
    AlgebraTable() = default;

    AlgebraTable(std::vector<Label> labels) : labels_(std::move(labels))  // NOLINT(google-explicit-constructor)
    {
        for (std::size_t p = 0; p < labels_.size(); ++p)
            for (std::size_t q = 0; q < labels_.size(); ++q) {
                const Label& X = labels_[p];
                const Label& Y = labels_[q];
                auto f = tabulated_bracket(X, Y);
                auto g = tabulated_bracket(Y, X);
                if (f && g && *f != negate(*g))
                    fail(Errc::FormMismatch, "table is not antisymmetric at [" + X.str() + ", " + Y.str() + "]");
                if (!f && !g)
                    fail(Errc::FormMismatch, "no tabulated bracket for [" + X.str() + ", " + Y.str() + "]");
                table_[{X, Y}] = f ? *f : negate(*g);
            }
        check_index_symmetry();
    }

    static AlgebraTable jacobi(int n) { return AlgebraTable(jacobi_labels(n, true)); }
    static AlgebraTable sp(int n) { return AlgebraTable(jacobi_labels(n, false)); }

    const std::vector<Label>& labels() const { return labels_; }

    const LinComb& bracket(const Label& X, const Label& Y) const { return table_.at({X.canonical(), Y.canonical()}); }

    // [X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]] over every triple; returns the first failing triple
    std::optional<std::string> jacobi_identity_failure() const
    {
        auto br = [&](const LinComb& a, const Label& Y, bool left) {
            LinComb r;
            for (const auto& [l, c] : a) {
                if (l.kind == Kind::One)
                    continue;
                const LinComb& b = left ? bracket(Y, l) : bracket(l, Y);
                for (const auto& [m, e] : b)
                    add_to(r, m, c * e);
            }
            return r;
        };
        for (const auto& X : labels_)
            for (const auto& Y : labels_)
                for (const auto& Z : labels_) {
                    LinComb s = br(bracket(Y, Z), X, true);
                    for (const auto& [l, c] : br(bracket(Z, X), Y, true))
                        add_to(s, l, c);
                    for (const auto& [l, c] : br(bracket(X, Y), Z, true))
                        add_to(s, l, c);
                    if (!s.empty())
                        return X.str() + ", " + Y.str() + ", " + Z.str();
                }
        return std::nullopt;
    }

private:
    // K+_ij and K+_ji name the same generator, so their tabulated brackets must agree
    void check_index_symmetry() const
    {
        for (const auto& X : labels_) {
            if (X.kind != Kind::Kplus && X.kind != Kind::Kminus)
                continue;
            const Label Xs{X.kind, X.j, X.i};
            for (const auto& Y : labels_) {
                auto f = tabulated_bracket(X, Y);
                auto g = tabulated_bracket(Xs, Y);
                if (f && g && *f != *g)
                    fail(Errc::FormMismatch, "table depends on index order of " + X.str());
            }
        }
    }

    std::vector<Label> labels_;
    std::map<std::pair<Label, Label>, LinComb> table_;
};

enum class CoordConvention { Independent, Halved };
enum class K0Order { AsPrinted, Transposed };

struct Realization {
    CoordConvention coords = CoordConvention::Halved;
    K0Order k0 = K0Order::Transposed;
};

inline std::string to_string(CoordConvention c)
{
    return c == CoordConvention::Independent ? "independent" : "halved-off-diagonal";
}
inline std::string to_string(K0Order o) { return o == K0Order::AsPrinted ? "as-printed" : "transposed"; }

struct LabeledOps {
    VarSet vars;
    std::vector<std::pair<Label, PolyDiffOp>> ops;

    const PolyDiffOp& at(const Label& l) const
    {
        const Label c = l.canonical();
        for (const auto& [m, op] : ops)
            if (m == c)
                return op;
        fail(Errc::InvalidArgument, "no generator labelled " + l.str());
    }
};

namespace detail {

struct Builder {
    int n;
    bool with_z;
    Realization conv;
    VarSet vars;

    Builder(int n_, bool with_z_, Realization c) : n(n_), with_z(with_z_), conv(c)
    {
        std::vector<std::string> names;
        if (with_z)
            for (int i = 0; i < n; ++i)
                names.push_back("z" + std::to_string(i + 1));
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                names.push_back("w" + std::to_string(i + 1) + std::to_string(j + 1));
        vars = make_vars(std::move(names));
    }

    int zi(int i) const { return i; }
    int wi(int i, int j) const
    {
        if (i > j)
            std::swap(i, j);
        int idx = with_z ? n : 0;
        for (int r = 0; r < i; ++r)
            idx += n - r;
        return idx + (j - i);
    }

    MPoly z(int i) const { return MPoly::variable(vars, zi(i)); }
    MPoly w(int i, int j) const { return MPoly::variable(vars, wi(i, j)); }
    MPoly c(const Coef& v) const { return MPoly::constant(vars, v); }

    PolyDiffOp dz(int i) const { return PolyDiffOp::partial(vars, zi(i)); }
    PolyDiffOp dw(int i, int j) const
    {
        const Coef f = (i != j && conv.coords == CoordConvention::Halved) ? Coef(Rational(1, 2)) : Coef(1);
        return PolyDiffOp::partial(vars, wi(i, j), f);
    }
    PolyDiffOp zero() const { return PolyDiffOp(vars); }

    PolyDiffOp kminus(int k, int l) const { return dw(k, l); }

    PolyDiffOp kzero(int k, int l) const
    {
        PolyDiffOp op = zero();
        if (k == l)
            op.add_scalar(c(Coef::kappa(Rational(1, 4))));
        const bool tr = conv.k0 == K0Order::Transposed;
        if (with_z)
            op = op + (tr ? z(k) : z(l)) * dz(tr ? l : k) * Coef(Rational(1, 2));
        for (int j = 0; j < n; ++j)
            op = op + (tr ? w(k, j) * dw(j, l) : w(j, l) * dw(k, j));
        return op;
    }

    PolyDiffOp kplus(int k, int l) const
    {
        PolyDiffOp op = zero();
        op.add_scalar(w(k, l) * Coef::kappa(Rational(1, 2)));
        if (with_z) {
            op.add_scalar(z(k) * z(l) * Coef(Rational(1, 2)));
            for (int i = 0; i < n; ++i)
                op = op + (z(l) * w(k, i) + z(k) * w(i, l)) * dz(i) * Coef(Rational(1, 2));
        }
        for (int i = 0; i < n; ++i)
            for (int a = 0; a < n; ++a)
                op = op + (w(k, i) * w(a, l)) * dw(i, a);
        return op;
    }

    PolyDiffOp a(int k) const { return dz(k); }

    PolyDiffOp adag(int k) const
    {
        PolyDiffOp op = PolyDiffOp::multiplication(z(k));
        for (int j = 0; j < n; ++j)
            op = op + w(k, j) * dz(j);
        return op;
    }

    LabeledOps build() const
    {
        LabeledOps out{vars, {}};
        for (const Label& l : jacobi_labels(n, with_z)) {
            switch (l.kind) {
            case Kind::A: out.ops.emplace_back(l, a(l.i)); break;
            case Kind::Adag: out.ops.emplace_back(l, adag(l.i)); break;
            case Kind::Kplus: out.ops.emplace_back(l, kplus(l.i, l.j)); break;
            case Kind::Kminus: out.ops.emplace_back(l, kminus(l.i, l.j)); break;
            case Kind::Kzero: out.ops.emplace_back(l, kzero(l.i, l.j)); break;
            case Kind::One: break;
            }
        }
        return out;
    }
};

} // namespace detail

inline LabeledOps sp_generators_diff(int n, Realization conv = {})
{
    if (n < 1)
        fail(Errc::InvalidArgument, "n must be positive");
    return detail::Builder(n, false, conv).build();
}

inline LabeledOps jacobi_generators_diff(int n, Realization conv = {})
{
    if (n < 1)
        fail(Errc::InvalidArgument, "n must be positive");
    return detail::Builder(n, true, conv).build();
}

struct BracketMismatch {
    Label x, y;
    std::string expected;
    std::string residual;
};

struct StructureReport {
    int sigma = 1;
    std::size_t brackets = 0;
    std::vector<BracketMismatch> mismatches;

    bool pass() const { return mismatches.empty(); }
};

inline PolyDiffOp realize(const LabeledOps& gens, const LinComb& lc)
{
    PolyDiffOp r(gens.vars);
    for (const auto& [l, c] : lc) {
        if (l.kind == Kind::One)
            r.add_scalar(MPoly::constant(gens.vars, Coef(c)));
        else
            r = r + gens.at(l) * Coef(c);
    }
    return r;
}

// [rho(X), rho(Y)] = sigma rho([X, Y]) for every pair in the table
inline StructureReport verify_structure_constants(const LabeledOps& gens, const AlgebraTable& table, int sigma)
{
    StructureReport rep;
    rep.sigma = sigma;
    const auto& L = table.labels();
    for (std::size_t p = 0; p < L.size(); ++p)
        for (std::size_t q = p + 1; q < L.size(); ++q) {
            ++rep.brackets;
            const LinComb& lc = table.bracket(L[p], L[q]);
            const PolyDiffOp lhs = op_commutator(gens.at(L[p]), gens.at(L[q]));
            const PolyDiffOp rhs = realize(gens, lc) * Coef(sigma);
            const PolyDiffOp res = lhs - rhs;
            if (!res.is_zero())
                rep.mismatches.push_back({L[p], L[q], lincomb_str(lc), res.str()});
        }
    return rep;
}

// the sign with fewer mismatches; +1 on ties
inline StructureReport fit_sign(const LabeledOps& gens, const AlgebraTable& table)
{
    StructureReport plus = verify_structure_constants(gens, table, +1);
    if (plus.pass())
        return plus;
    StructureReport minus = verify_structure_constants(gens, table, -1);
    return minus.mismatches.size() < plus.mismatches.size() ? minus : plus;
}

} // namespace gjn::diffops
