#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "gjn/errors.hpp"

namespace gjn::exact {

__extension__ using i128 = __int128;

class Rational {
public:
    Rational() = default;
    Rational(std::int64_t p) : p_(p), q_(1) {}  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t p, std::int64_t q) { set(p, q); }

    std::int64_t num() const { return p_; }
    std::int64_t den() const { return q_; }
    bool is_zero() const { return p_ == 0; }

    friend Rational operator+(const Rational& a, const Rational& b)
    {
        const std::int64_t g = std::gcd(a.q_, b.q_);
        const i128 q = static_cast<i128>(a.q_ / g) * b.q_;
        const i128 p = static_cast<i128>(a.p_) * (b.q_ / g) + static_cast<i128>(b.p_) * (a.q_ / g);
        return from128(p, q);
    }
    friend Rational operator-(const Rational& a) { return Rational(-a.p_, a.q_); }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b)
    {
        return from128(static_cast<i128>(a.p_) * b.p_, static_cast<i128>(a.q_) * b.q_);
    }
    friend Rational operator/(const Rational& a, const Rational& b)
    {
        if (b.p_ == 0)
            fail(Errc::InvalidArgument, "division by zero rational");
        return from128(static_cast<i128>(a.p_) * b.q_, static_cast<i128>(a.q_) * b.p_);
    }
    friend bool operator==(const Rational& a, const Rational& b) { return a.p_ == b.p_ && a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    double to_double() const { return static_cast<double>(p_) / static_cast<double>(q_); }

    std::string str() const
    {
        return q_ == 1 ? std::to_string(p_) : std::to_string(p_) + "/" + std::to_string(q_);
    }

private:
    static Rational from128(i128 p, i128 q)
    {
        if (q == 0)
            fail(Errc::InvalidArgument, "zero denominator");
        if (q < 0) {
            p = -p;
            q = -q;
        }
        i128 a = p < 0 ? -p : p;
        i128 b = q;
        while (b != 0) {
            const i128 t = a % b;
            a = b;
            b = t;
        }
        if (a > 1) {
            p /= a;
            q /= a;
        }
        constexpr i128 lim = INT64_MAX;
        if (p > lim || p < -lim || q > lim)
            fail(Errc::Overflow, "rational overflow");
        Rational r;
        r.p_ = static_cast<std::int64_t>(p);
        r.q_ = static_cast<std::int64_t>(q);
        return r;
    }

    void set(std::int64_t p, std::int64_t q) { *this = from128(p, q); }

    std::int64_t p_ = 0;
    std::int64_t q_ = 1;
};

// a + b i with rational parts
struct GaussRat {
    Rational re;
    Rational im;

    GaussRat() = default;
    GaussRat(Rational r) : re(r) {}  // NOLINT(google-explicit-constructor)
    GaussRat(std::int64_t r) : re(r) {}  // NOLINT(google-explicit-constructor)
    GaussRat(Rational r, Rational i) : re(r), im(i) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    friend GaussRat operator+(const GaussRat& a, const GaussRat& b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

    std::string str() const
    {
        if (im.is_zero())
            return re.str();
        if (re.is_zero())
            return im.str() + "i";
        return "(" + re.str() + (im.num() < 0 ? "" : "+") + im.str() + "i)";
    }
};

// polynomial in the symbol k with Gaussian-rational coefficients
class Coef {
public:
    Coef() = default;
    Coef(GaussRat c) { if (!c.is_zero()) c_.push_back(c); }  // NOLINT(google-explicit-constructor)
    Coef(std::int64_t c) : Coef(GaussRat(c)) {}  // NOLINT(google-explicit-constructor)
    Coef(Rational c) : Coef(GaussRat(c)) {}  // NOLINT(google-explicit-constructor)

    static Coef kappa(Rational factor = 1)
    {
        Coef c;
        if (!factor.is_zero())
            c.c_ = {GaussRat(), GaussRat(factor)};
        return c;
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    GaussRat at(std::size_t p) const { return p < c_.size() ? c_[p] : GaussRat(); }

    friend Coef operator+(const Coef& a, const Coef& b)
    {
        Coef r;
        r.c_.resize(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.c_.size(); ++i)
            r.c_[i] = a.at(i) + b.at(i);
        r.trim();
        return r;
    }
    friend Coef operator-(const Coef& a)
    {
        Coef r = a;
        for (auto& x : r.c_)
            x = -x;
        return r;
    }
    friend Coef operator-(const Coef& a, const Coef& b) { return a + (-b); }
    friend Coef operator*(const Coef& a, const Coef& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        Coef r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, GaussRat());
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
        r.trim();
        return r;
    }
    friend bool operator==(const Coef& a, const Coef& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Coef& a, const Coef& b) { return !(a == b); }

    std::string str() const
    {
        if (c_.empty())
            return "0";
        std::string s;
        for (std::size_t p = 0; p < c_.size(); ++p) {
            if (c_[p].is_zero())
                continue;
            if (!s.empty())
                s += " + ";
            s += c_[p].str();
            if (p == 1)
                s += "*k";
            else if (p > 1)
                s += "*k^" + std::to_string(p);
        }
        return c_.size() > 1 && s.find(" + ") != std::string::npos ? "(" + s + ")" : s;
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back().is_zero())
            c_.pop_back();
    }
    std::vector<GaussRat> c_;
};

} // namespace gjn::exact
