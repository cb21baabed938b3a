#pragma once

#include <cmath>
#include <cstdlib>
#include <string>
#include <type_traits>

#include <gmpxx.h>

#include "gonodyn/errors.hpp"

namespace gonodyn {

/// Exact-rational scalar. Arbitrary precision: series coefficients and
/// long products of map denominators overflow any fixed-width rational.
using Rational = mpq_class;

/// Traits unifying the two arithmetic backends (double / Rational) so the
/// dynamics, series and verification code can be written once.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static double from_int(long n) { return static_cast<double>(n); }
    static double from_ratio(long num, long den) {
        return static_cast<double>(num) / static_cast<double>(den);
    }
    static double to_double(double x) { return x; }
    static double abs(double x) { return std::fabs(x); }
    static void canonicalize(double&) {}
    static const char* name() { return "float"; }
};

template <>
struct scalar_traits<Rational> {
    static constexpr bool exact = true;
    static Rational from_int(long n) { return Rational(n); }
    static Rational from_ratio(long num, long den) {
        Rational r(num, den);
        r.canonicalize();
        return r;
    }
    static double to_double(const Rational& x) { return x.get_d(); }
    static Rational abs(const Rational& x) { return ::abs(x); }
    // GMP's two-argument mpq constructor does not reduce num/den; values built
    // that way must pass through here before entering any arithmetic.
    static void canonicalize(Rational& x) { x.canonicalize(); }
    static const char* name() { return "rational"; }
};

template <class S>
double to_double(const S& x) {
    return scalar_traits<S>::to_double(x);
}

template <class S>
S abs_val(const S& x) {
    return scalar_traits<S>::abs(x);
}

/// Parse a plain decimal literal ("0.25", "-3", "1e-3" is NOT supported) into
/// an exact rational. Used where CLI/file inputs must reach the exact backend
/// without a double round-trip.
inline Rational rational_from_decimal(const std::string& text) {
    std::string s = text;
    bool neg = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        neg = s[0] == '-';
        s.erase(0, 1);
    }
    const auto slash = s.find('/');
    if (slash != std::string::npos) {  // "3/23" style
        const std::string ns = s.substr(0, slash);
        const std::string ds = s.substr(slash + 1);
        if (ns.empty() || ds.empty() || ns.find_first_not_of("0123456789") != std::string::npos ||
            ds.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("not a fraction literal: '" + text + "'");
        const mpz_class num(ns, 10);
        const mpz_class den(ds, 10);
        if (den == 0) throw ParseError("zero denominator in '" + text + "'");
        Rational r(num, den);
        r.canonicalize();
        return neg ? Rational(-r) : r;
    }
    const auto dot = s.find('.');
    std::string digits = s;
    std::size_t frac_len = 0;
    if (dot != std::string::npos) {
        frac_len = s.size() - dot - 1;
        digits = s.substr(0, dot) + s.substr(dot + 1);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("not a decimal literal: '" + text + "'");
    mpz_class num(digits, 10);
    mpz_class den(1);
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    Rational r(num, den);
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

/// Exact conversion: every finite double is a dyadic rational.
inline Rational rational_from_double(double x) { return Rational(x); }

}  // namespace gonodyn
