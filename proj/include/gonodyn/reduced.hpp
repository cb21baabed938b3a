#pragma once

#include "gonodyn/errors.hpp"
#include "gonodyn/simplex.hpp"

namespace gonodyn {

/// Coordinates of the planar reduction: alpha = x/(x+y) is the share of
/// female type 1, beta = v/(u+v) the share of male type 2. Both live in [0,1].
template <class S>
struct ReducedPoint {
    S alpha;
    S beta;

    static ReducedPoint create(S alpha, S beta) {
        if (alpha < S(0) || alpha > S(1) || beta < S(0) || beta > S(1))
            throw DomainError("reduced coordinates must lie in the unit square");
        return ReducedPoint{std::move(alpha), std::move(beta)};
    }
};

/// Project a two-type state to the plane. The projection only divides by the
/// block sums, which are positive for every accepted SimplexPoint; the guard
/// covers points constructed through future relaxed paths.
template <class S>
ReducedPoint<S> reduce(const SimplexPoint<S>& s) {
    if (!s.is_two_by_two())
        throw DomainError("reduction is defined for the two-type (2x2) state only");
    const S female = s.female_sum();
    const S male = s.male_sum();
    if (!(female > S(0)) || !(male > S(0)))
        throw DomainError("cannot reduce a state with an extinct sex block");
    return ReducedPoint<S>{S(s.x() / female), S(s.v() / male)};
}

}  // namespace gonodyn
