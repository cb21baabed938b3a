#pragma once

#include <cstddef>
#include <vector>

#include "gonodyn/errors.hpp"
#include "gonodyn/scalar.hpp"

namespace gonodyn {

/// Dense truncated power series (polynomial modulo alpha^{order+1}) with
/// exact-rational or floating coefficients. All binary operations require
/// matching truncation orders; composition requires the inner series to have
/// zero constant term.
template <typename S>
class TruncatedSeries {
public:
    explicit TruncatedSeries(int order) : order_(order), c_(static_cast<std::size_t>(order) + 1, S(0)) {
        if (order < 0) throw PreconditionError("series truncation order must be non-negative");
    }

    static TruncatedSeries constant(int order, const S& value) {
        TruncatedSeries s(order);
        s.c_[0] = value;
        return s;
    }

    static TruncatedSeries variable(int order) {
        TruncatedSeries s(order);
        if (order >= 1) s.c_[1] = S(1);
        return s;
    }

    int order() const { return order_; }

    const S& operator[](int k) const { return c_.at(static_cast<std::size_t>(k)); }
    S& operator[](int k) { return c_.at(static_cast<std::size_t>(k)); }

    TruncatedSeries& operator+=(const TruncatedSeries& o) {
        check_order(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = S(c_[i] + o.c_[i]);
        return *this;
    }

    TruncatedSeries& operator-=(const TruncatedSeries& o) {
        check_order(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = S(c_[i] - o.c_[i]);
        return *this;
    }

    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        a.check_order(b);
        TruncatedSeries out(a.order_);
        for (int i = 0; i <= a.order_; ++i) {
            const S& ai = a.c_[static_cast<std::size_t>(i)];
            if (ai == S(0)) continue;
            for (int j = 0; i + j <= a.order_; ++j) {
                S& t = out.c_[static_cast<std::size_t>(i + j)];
                t = S(t + S(ai * b.c_[static_cast<std::size_t>(j)]));
            }
        }
        return out;
    }

    friend TruncatedSeries operator*(TruncatedSeries a, const S& s) {
        for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] = S(a.c_[i] * s);
        return a;
    }
    friend TruncatedSeries operator*(const S& s, TruncatedSeries a) { return std::move(a) * s; }

    /// this(inner): Horner over polynomial coefficients; inner(0) must vanish
    /// so the truncation order is preserved.
    TruncatedSeries compose(const TruncatedSeries& inner) const {
        check_order(inner);
        if (!(inner.c_[0] == S(0)))
            throw PreconditionError("series composition requires a zero constant term in the inner series");
        TruncatedSeries out = constant(order_, c_[static_cast<std::size_t>(order_)]);
        for (int k = order_ - 1; k >= 0; --k) {
            out = out * inner;
            out.c_[0] = S(out.c_[0] + c_[static_cast<std::size_t>(k)]);
        }
        return out;
    }

    /// Horner evaluation at a scalar of the same backend.
    S eval(const S& x) const {
        S r = c_[static_cast<std::size_t>(order_)];
        for (int k = order_ - 1; k >= 0; --k) r = S(S(r * x) + c_[static_cast<std::size_t>(k)]);
        return r;
    }

    const std::vector<S>& coefficients() const { return c_; }

private:
    void check_order(const TruncatedSeries& o) const {
        if (order_ != o.order_)
            throw PreconditionError("series operation requires matching truncation orders");
    }

    int order_;
    std::vector<S> c_;
};

/// Consecutive powers inner^1 .. inner^count, each truncated at inner.order().
template <typename S>
std::vector<TruncatedSeries<S>> series_powers(const TruncatedSeries<S>& inner, int count) {
    std::vector<TruncatedSeries<S>> pw;
    pw.reserve(static_cast<std::size_t>(count));
    if (count >= 1) pw.push_back(inner);
    for (int l = 2; l <= count; ++l) pw.push_back(pw.back() * inner);
    return pw;
}

}  // namespace gonodyn
