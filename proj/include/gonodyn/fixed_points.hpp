#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "gonodyn/errors.hpp"
#include "gonodyn/gonosomal_operator.hpp"

namespace gonodyn {

/// The two fixed-point segments of the specialized operator.
///   F11: (0, a, u, b-u), u in [0, b]  — female type 1 extinct
///   F12: (x, a-x, b, 0), x in [0, a]  — male type 2 extinct
/// Their union is the entire fixed-point set; both segments share the corner
/// (0, a, b, 0). No fixed point has x v != 0.
enum class FixedPointFamily { F11, F12 };

inline const char* to_string(FixedPointFamily f) {
    return f == FixedPointFamily::F11 ? "F11" : "F12";
}

template <class S>
struct FixedPointDescriptor {
    FixedPointFamily family;
    S free_parameter;  // u for F11, x for F12
    SimplexPoint<S> point;
    std::array<S, 3> eigenvalues;  // tangent-space spectrum, ascending
};

template <class S>
SimplexPoint<S> f11_point(const GonosomalParams<S>& p, const S& u) {
    if (u < S(0) || u > p.b) throw DomainError("F11 parameter u must lie in [0, b]");
    return SimplexPoint<S>::from_xyuv(S(0), p.a, u, S(p.b - u));
}

template <class S>
SimplexPoint<S> f12_point(const GonosomalParams<S>& p, const S& x) {
    if (x < S(0) || x > p.a) throw DomainError("F12 parameter x must lie in [0, a]");
    return SimplexPoint<S>::from_xyuv(x, S(p.a - x), p.b, S(0));
}

template <class S>
S fixed_point_residual(const GonosomalParams<S>& p, const SimplexPoint<S>& s) {
    return apply_W(p, s).max_norm_distance(s);
}

/// Tangent-space spectrum from the closed formulas, sorted ascending:
///   on F11: {0, 1 - v/b, 1};  on F12: {0, 1 - x/a, 1}.
/// Every fixed point keeps the neutral eigenvalue 1 (direction along its own
/// segment), so none is hyperbolic. The point must lie on one of the segments.
template <class S>
std::array<S, 3> analytic_eigenvalues(const GonosomalParams<S>& p, const SimplexPoint<S>& s,
                                      double tol = 1e-9) {
    const double a = to_double(p.a);
    const double b = to_double(p.b);
    const bool on_f11 = std::fabs(to_double(s.x())) <= tol &&
                        std::fabs(to_double(s.y()) - a) <= tol;
    const bool on_f12 = std::fabs(to_double(s.v())) <= tol &&
                        std::fabs(to_double(s.u()) - b) <= tol;
    S middle(0);
    if (on_f11)
        middle = S(1) - s.v() / p.b;
    else if (on_f12)
        middle = S(1) - s.x() / p.a;
    else
        throw PreconditionError("point does not lie on either fixed-point segment");
    std::array<S, 3> ev{S(0), middle, S(1)};
    std::sort(ev.begin(), ev.end());
    return ev;
}

/// Uniform samples of both fixed-point segments (endpoints included), each
/// descriptor carrying the materialized point and its analytic spectrum.
template <class S>
std::vector<FixedPointDescriptor<S>> enumerate_fixed_points(const GonosomalParams<S>& p,
                                                            int samples) {
    if (samples < 2) throw ConfigError("at least two samples per fixed-point segment are required");
    std::vector<FixedPointDescriptor<S>> out;
    out.reserve(2 * static_cast<std::size_t>(samples));
    auto push = [&](FixedPointFamily fam, const S& t) {
        SimplexPoint<S> pt = fam == FixedPointFamily::F11 ? f11_point(p, t) : f12_point(p, t);
        out.push_back(FixedPointDescriptor<S>{fam, t, pt, analytic_eigenvalues(p, pt)});
    };
    for (FixedPointFamily fam : {FixedPointFamily::F11, FixedPointFamily::F12}) {
        const S span = fam == FixedPointFamily::F11 ? p.b : p.a;
        for (int i = 0; i < samples; ++i)
            push(fam, S(span * scalar_traits<S>::from_ratio(i, samples - 1)));
    }
    return out;
}

/// Central finite-difference Jacobian of the chart map (x,y,u) -> W(x,y,u,1-x-y-u).
/// Step 1e-6 balances truncation (h^2) against cancellation (eps/h).
inline Eigen::Matrix3d fd_jacobian_chart(const GonosomalParams<double>& p,
                                         const SimplexPoint<double>& s, double h = 1e-6) {
    const std::array<double, 3> q{s.x(), s.y(), s.u()};
    Eigen::Matrix3d J;
    for (int j = 0; j < 3; ++j) {
        std::array<double, 3> qp = q, qm = q;
        qp[j] += h;
        qm[j] -= h;
        const std::array<double, 3> fp = detail::w_chart(p, qp);
        const std::array<double, 3> fm = detail::w_chart(p, qm);
        for (int i = 0; i < 3; ++i) J(i, j) = (fp[i] - fm[i]) / (2.0 * h);
    }
    return J;
}

/// Unrestricted 4x4 Jacobian (all four coordinates perturbed independently).
/// Because the operator is invariant under separate rescaling of each block,
/// this carries one structural extra eigenvalue near 0 on top of the
/// tangent-space spectrum; it is reported for inspection, never compared
/// against the closed formulas.
inline Eigen::Matrix4d fd_jacobian_full(const GonosomalParams<double>& p,
                                        const SimplexPoint<double>& s, double h = 1e-6) {
    const std::array<double, 4> base{s.x(), s.y(), s.u(), s.v()};
    auto eval = [&](const std::array<double, 4>& q) {
        const State4<double> t = detail::w_step(p, State4<double>{q[0], q[1], q[2], q[3]});
        return std::array<double, 4>{t.x, t.y, t.u, t.v};
    };
    Eigen::Matrix4d J;
    for (int j = 0; j < 4; ++j) {
        std::array<double, 4> qp = base, qm = base;
        qp[j] += h;
        qm[j] -= h;
        const std::array<double, 4> fp = eval(qp);
        const std::array<double, 4> fm = eval(qm);
        for (int i = 0; i < 4; ++i) J(i, j) = (fp[i] - fm[i]) / (2.0 * h);
    }
    return J;
}

namespace detail {

template <int N>
std::array<double, N> sorted_real_spectrum(const Eigen::Matrix<double, N, N>& J) {
    Eigen::EigenSolver<Eigen::Matrix<double, N, N>> solver(J, /*computeEigenvectors=*/false);
    std::array<double, N> ev{};
    for (int i = 0; i < N; ++i) ev[i] = solver.eigenvalues()(i).real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace detail

/// Numerically computed tangent-space eigenvalues at a fixed point, ascending.
/// Precondition: the point is fixed to within 1e-10 in max norm.
inline std::array<double, 3> eigenvalues_at(const GonosomalParams<double>& p,
                                            const SimplexPoint<double>& s, double h = 1e-6) {
    const double res = fixed_point_residual(p, s);
    if (res > 1e-10)
        throw PreconditionError("eigenvalues requested at a non-fixed point (residual " +
                                std::to_string(res) + ")");
    return detail::sorted_real_spectrum<3>(fd_jacobian_chart(p, s, h));
}

/// Full 4x4 spectrum (see fd_jacobian_full) — reported, not compared.
inline std::array<double, 4> eigenvalues_full(const GonosomalParams<double>& p,
                                              const SimplexPoint<double>& s, double h = 1e-6) {
    const double res = fixed_point_residual(p, s);
    if (res > 1e-10)
        throw PreconditionError("eigenvalues requested at a non-fixed point (residual " +
                                std::to_string(res) + ")");
    return detail::sorted_real_spectrum<4>(fd_jacobian_full(p, s, h));
}

}  // namespace gonodyn
