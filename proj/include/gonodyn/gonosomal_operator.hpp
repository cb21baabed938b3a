#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "gonodyn/errors.hpp"
#include "gonodyn/params.hpp"
#include "gonodyn/reduced.hpp"
#include "gonodyn/simplex.hpp"
#include "gonodyn/tensor.hpp"

namespace gonodyn {

/// Unvalidated two-type state for inner loops (iteration, finite differences).
/// Public API types validate at the boundary; kernels work on raw values.
template <class S>
struct State4 {
    S x, y, u, v;
};

namespace detail {

constexpr double denominator_floor = 1e-300;

template <class S>
void check_denominator(const S& d) {
    if constexpr (scalar_traits<S>::exact) {
        if (d == S(0)) throw NumericalDegeneracyError("operator denominator vanished");
    } else {
        if (!(to_double(d) > denominator_floor) || !std::isfinite(to_double(d)))
            throw NumericalDegeneracyError("operator denominator collapsed below 1e-300");
    }
}

/// One raw application of the specialized operator. D = (x+y)(u+v) is
/// computed once; callers guarantee (or check) positivity.
template <class S>
State4<S> w_step(const GonosomalParams<S>& p, const State4<S>& s) {
    const S d = S((s.x + s.y) * (s.u + s.v));
    check_denominator(d);
    return State4<S>{
        S(p.a * s.x * s.u / d),
        S((p.sigma1 * s.x * s.v + p.a * s.y * s.u + p.a * s.y * s.v) / d),
        S((p.sigma2 * s.x * s.v + p.b * s.x * s.u + p.b * s.y * s.u) / d),
        S(p.b * s.y * s.v / d)};
}

/// The specialized map in the chart (x, y, u) with v = 1 - x - y - u
/// eliminated. This is the parameterization used for tangent-space Jacobians;
/// it accepts slightly off-simplex inputs (finite-difference perturbations).
inline std::array<double, 3> w_chart(const GonosomalParams<double>& p,
                                     const std::array<double, 3>& q) {
    const double v = 1.0 - q[0] - q[1] - q[2];
    const State4<double> s{q[0], q[1], q[2], v};
    const State4<double> t = w_step(p, s);
    return {t.x, t.y, t.u};
}

}  // namespace detail

/// Image of a general state under the normalized gonosomal operator:
///   x'_j = sum_{i,k} gamma_f(i,k,j) x_i y_k / (sum_i x_i)(sum_k y_k),
/// and likewise for males. Throws DomainError when a block sum of the input is
/// zero, and when the image itself has an extinct block (possible for tensors
/// that route all offspring to one sex; the operator cannot be iterated past
/// such a state).
template <class S>
SimplexPoint<S> apply_general(const InheritanceTensor<S>& t, const SimplexPoint<S>& s) {
    if (s.n() != t.n || s.nu() != t.nu)
        throw DomainError("state dimensions do not match tensor dimensions");
    const S female = s.female_sum();
    const S male = s.male_sum();
    if (!(female > S(0)))
        throw DomainError("female block sum is zero");
    if (!(male > S(0)))
        throw DomainError("male block sum is zero");
    const S d = S(female * male);
    detail::check_denominator(d);

    std::vector<S> out(static_cast<std::size_t>(t.n) + t.nu, S(0));
    for (int i = 0; i < t.n; ++i)
        for (int k = 0; k < t.nu; ++k) {
            const S w = S(s.coord(i) * s.coord(t.n + k));
            if (w == S(0)) continue;
            for (int j = 0; j < t.n; ++j) out[j] += w * t.gf(i, k, j);
            for (int l = 0; l < t.nu; ++l) out[t.n + l] += w * t.gm(i, k, l);
        }
    for (S& c : out) c = c / d;
    return SimplexPoint<S>::create(std::move(out), t.n, t.nu);
}

/// Image under the specialized two-type operator (same map as apply_general
/// over InheritanceTensor::special, evaluated directly).
template <class S>
SimplexPoint<S> apply_W(const GonosomalParams<S>& p, const SimplexPoint<S>& s) {
    if (!s.is_two_by_two())
        throw DomainError("specialized operator acts on two-type states");
    const State4<S> t = detail::w_step(p, State4<S>{s.x(), s.y(), s.u(), s.v()});
    return SimplexPoint<S>::from_xyuv(t.x, t.y, t.u, t.v);
}

/// One step of the reduced planar map on [0,1]^2:
///   alpha' = alpha (1-beta) / (1 + (p1-1) alpha beta)
///   beta'  = beta (1-alpha) / (1 + (p2-1) alpha beta)
/// In the Equal case both denominators are identically 1 and the short form
/// alpha' = alpha - alpha beta, beta' = beta - alpha beta is used.
template <class S>
ReducedPoint<S> apply_reduced(const GonosomalParams<S>& p, const ReducedPoint<S>& r) {
    const S ab = S(r.alpha * r.beta);
    if (p.case_tag == CaseTag::Equal)
        return ReducedPoint<S>{S(r.alpha - ab), S(r.beta - ab)};
    const S da = S(S(1) + (p.p1 - S(1)) * ab);
    const S db = S(S(1) + (p.p2 - S(1)) * ab);
    return ReducedPoint<S>{S(r.alpha * (S(1) - r.beta) / da),
                           S(r.beta * (S(1) - r.alpha) / db)};
}

/// Closed-form image of the full state given only the reduced coordinates:
///   x' = a alpha (1-beta)            y' = sigma1 alpha beta + a (1-alpha)
///   u' = sigma2 alpha beta + b(1-beta)   v' = b beta (1-alpha)
/// This is what the specialized operator produces for ANY state reducing to
/// (alpha, beta); the image depends on the input only through the reduction.
template <class S>
State4<S> closed_form_image(const GonosomalParams<S>& p, const ReducedPoint<S>& r) {
    const S ab = S(r.alpha * r.beta);
    return State4<S>{
        S(p.a * r.alpha * (S(1) - r.beta)),
        S(p.sigma1 * ab + p.a * (S(1) - r.alpha)),
        S(p.sigma2 * ab + p.b * (S(1) - r.beta)),
        S(p.b * r.beta * (S(1) - r.alpha))};
}

/// Residuals of the two structural identities tying the three maps together:
///  - reduce_residual:      || reduce(W(s)) - V(reduce(s)) ||_inf
///  - closed_form_residual: || W(s) - closed_form_image(reduce(s)) ||_inf
/// Both are exactly zero in rational arithmetic and bounded by ~1e-14 in double.
template <class S>
struct CommuteResidual {
    S reduce_residual;
    S closed_form_residual;
    S max() const { return reduce_residual > closed_form_residual ? reduce_residual : closed_form_residual; }
};

template <class S>
CommuteResidual<S> commute_check(const GonosomalParams<S>& p, const SimplexPoint<S>& s) {
    const ReducedPoint<S> r = reduce(s);
    const SimplexPoint<S> ws = apply_W(p, s);
    const ReducedPoint<S> through_state = reduce(ws);
    const ReducedPoint<S> through_plane = apply_reduced(p, r);

    S r1 = abs_val<S>(through_state.alpha - through_plane.alpha);
    const S r1b = abs_val<S>(through_state.beta - through_plane.beta);
    if (r1b > r1) r1 = r1b;

    const State4<S> cf = closed_form_image(p, r);
    S r2 = abs_val<S>(ws.x() - cf.x);
    const S dy = abs_val<S>(ws.y() - cf.y);
    const S du = abs_val<S>(ws.u() - cf.u);
    const S dv = abs_val<S>(ws.v() - cf.v);
    if (dy > r2) r2 = dy;
    if (du > r2) r2 = du;
    if (dv > r2) r2 = dv;

    return CommuteResidual<S>{r1, r2};
}

}  // namespace gonodyn
