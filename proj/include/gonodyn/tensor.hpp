#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "gonodyn/errors.hpp"
#include "gonodyn/params.hpp"
#include "gonodyn/scalar.hpp"

namespace gonodyn {

/// Heredity coefficients of the general n x nu operator.
///
/// gamma_f(i,k,j): probability that the pair (female i, male k) contributes a
/// female of type j; gamma_m(i,k,l) likewise for a male of type l. For every
/// pair (i,k) the female and male rows together form a probability vector:
///   sum_j gamma_f(i,k,j) + sum_l gamma_m(i,k,l) = 1, all entries >= 0.
template <class S>
struct InheritanceTensor {
    int n = 0;
    int nu = 0;
    std::vector<S> gamma_f;  // index ((i*nu)+k)*n  + j
    std::vector<S> gamma_m;  // index ((i*nu)+k)*nu + l

    static InheritanceTensor zeros(int n, int nu) {
        InheritanceTensor t;
        t.n = n;
        t.nu = nu;
        t.gamma_f.assign(static_cast<std::size_t>(n) * nu * n, S(0));
        t.gamma_m.assign(static_cast<std::size_t>(n) * nu * nu, S(0));
        return t;
    }

    const S& gf(int i, int k, int j) const { return gamma_f[(static_cast<std::size_t>(i) * nu + k) * n + j]; }
    S& gf(int i, int k, int j) { return gamma_f[(static_cast<std::size_t>(i) * nu + k) * n + j]; }
    const S& gm(int i, int k, int l) const { return gamma_m[(static_cast<std::size_t>(i) * nu + k) * nu + l]; }
    S& gm(int i, int k, int l) { return gamma_m[(static_cast<std::size_t>(i) * nu + k) * nu + l]; }

    /// The two-type table realizing the specialized operator:
    /// pair (1,1) -> a : b, pair (1,2) -> sigma1 : sigma2 (female type 2 / male type 1),
    /// pair (2,1) -> a : b (female type 2 / male type 1), pair (2,2) -> a : b (type 2 / type 2).
    static InheritanceTensor special(const GonosomalParams<S>& p) {
        InheritanceTensor t = zeros(2, 2);
        t.gf(0, 0, 0) = p.a;
        t.gm(0, 0, 0) = p.b;
        t.gf(0, 1, 1) = p.sigma1;
        t.gm(0, 1, 0) = p.sigma2;
        t.gf(1, 0, 1) = p.a;
        t.gm(1, 0, 0) = p.b;
        t.gf(1, 1, 1) = p.a;
        t.gm(1, 1, 1) = p.b;
        return t;
    }
};

/// Outcome of checking the probability constraints. `ok` plus a first-failure
/// message carrying the offending indices / pair and the sum residual.
struct TensorValidation {
    bool ok = true;
    std::string message = "valid";
    double worst_residual = 0.0;
};

template <class S>
TensorValidation validate_tensor(const InheritanceTensor<S>& t, double tol = 1e-12) {
    TensorValidation r;
    if (t.n < 1 || t.nu < 1 ||
        t.gamma_f.size() != static_cast<std::size_t>(t.n) * t.nu * t.n ||
        t.gamma_m.size() != static_cast<std::size_t>(t.n) * t.nu * t.nu) {
        r.ok = false;
        r.message = "dimension mismatch between (n, nu) and coefficient storage";
        return r;
    }
    for (int i = 0; i < t.n; ++i)
        for (int k = 0; k < t.nu; ++k) {
            for (int j = 0; j < t.n; ++j)
                if (t.gf(i, k, j) < S(0)) {
                    r.ok = false;
                    std::ostringstream os;
                    os << "negative female coefficient gamma_f(" << i + 1 << "," << k + 1 << ","
                       << j + 1 << ") = " << to_double(t.gf(i, k, j));
                    r.message = os.str();
                    return r;
                }
            for (int l = 0; l < t.nu; ++l)
                if (t.gm(i, k, l) < S(0)) {
                    r.ok = false;
                    std::ostringstream os;
                    os << "negative male coefficient gamma_m(" << i + 1 << "," << k + 1 << ","
                       << l + 1 << ") = " << to_double(t.gm(i, k, l));
                    r.message = os.str();
                    return r;
                }
        }
    for (int i = 0; i < t.n; ++i)
        for (int k = 0; k < t.nu; ++k) {
            S sum(0);
            for (int j = 0; j < t.n; ++j) sum += t.gf(i, k, j);
            for (int l = 0; l < t.nu; ++l) sum += t.gm(i, k, l);
            const double residual = to_double<S>(sum - S(1));
            if (std::fabs(residual) > tol) {
                r.ok = false;
                if (std::fabs(residual) > std::fabs(r.worst_residual)) r.worst_residual = residual;
                std::ostringstream os;
                os << "pair (" << i + 1 << "," << k + 1 << ") offspring probabilities sum to "
                   << to_double(sum) << " (residual " << residual << ")";
                r.message = os.str();
                return r;
            }
        }
    return r;
}

}  // namespace gonodyn
