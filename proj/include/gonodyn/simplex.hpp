#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "gonodyn/errors.hpp"
#include "gonodyn/scalar.hpp"

namespace gonodyn {

/// A population state on the simplex S^{n+nu-1}: the first n coordinates are
/// female-type frequencies, the remaining nu are male-type frequencies.
/// Accepted points always lie in the operator's domain: coordinates are
/// non-negative, sum to 1 (exactly when rational-backed, within 1e-12 in
/// double), and both block sums are positive — states with an extinct sex
/// (a whole block of zeros) are rejected at construction.
///
/// Immutable; all mutating-looking operations return new values.
template <class S>
class SimplexPoint {
public:
    static constexpr double sum_tolerance = 1e-12;
    static constexpr double renormalize_band = 1e-9;

    /// Validating factory. Renormalizes when the raw sum is within
    /// [1 - 1e-9, 1 + 1e-9]; rejects beyond that band.
    static SimplexPoint create(std::vector<S> coords, int n_female, int n_male) {
        if (n_female < 1 || n_male < 1)
            throw DomainError("simplex point needs at least one type per sex");
        if (coords.size() != static_cast<std::size_t>(n_female + n_male))
            throw DomainError("coordinate count " + std::to_string(coords.size()) +
                              " does not match n+nu = " + std::to_string(n_female + n_male));
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (coords[i] < S(0))
                throw DomainError("coordinate " + std::to_string(i) + " is negative");
        }
        S sum(0);
        for (const S& c : coords) sum += c;
        const double dsum = to_double(sum);
        if (dsum < 1.0 - renormalize_band || dsum > 1.0 + renormalize_band)
            throw DomainError("coordinate sum " + std::to_string(dsum) +
                              " outside the renormalization band");
        if (!(sum == S(1))) {
            for (S& c : coords) c = c / sum;
        }
        S female(0), male(0);
        for (int i = 0; i < n_female; ++i) female += coords[i];
        for (int i = 0; i < n_male; ++i) male += coords[n_female + i];
        if (!(female > S(0)))
            throw DomainError("female block sum is zero (state lies in the excluded set)");
        if (!(male > S(0)))
            throw DomainError("male block sum is zero (state lies in the excluded set)");
        return SimplexPoint(std::move(coords), n_female, n_male);
    }

    /// Convenience for the two-type specialization: (x, y | u, v).
    static SimplexPoint from_xyuv(S x, S y, S u, S v) {
        return create({std::move(x), std::move(y), std::move(u), std::move(v)}, 2, 2);
    }

    int n() const { return n_; }
    int nu() const { return nu_; }
    std::size_t size() const { return coords_.size(); }
    const S& coord(std::size_t i) const { return coords_.at(i); }
    const std::vector<S>& coords() const { return coords_; }

    bool is_two_by_two() const { return n_ == 2 && nu_ == 2; }
    const S& x() const { return coords_[0]; }
    const S& y() const { return coords_[1]; }
    const S& u() const { return coords_[2]; }
    const S& v() const { return coords_[3]; }

    S female_sum() const {
        S s(0);
        for (int i = 0; i < n_; ++i) s += coords_[i];
        return s;
    }
    S male_sum() const {
        S s(0);
        for (int i = 0; i < nu_; ++i) s += coords_[n_ + i];
        return s;
    }

    /// True when some coordinate vanishes (for 2x2 this is the set x*y*u*v = 0).
    bool on_boundary() const {
        return std::any_of(coords_.begin(), coords_.end(), [](const S& c) { return c == S(0); });
    }

    S max_norm_distance(const SimplexPoint& other) const {
        S best(0);
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            S d = abs_val<S>(coords_[i] - other.coords_[i]);
            if (d > best) best = d;
        }
        return best;
    }

private:
    SimplexPoint(std::vector<S> coords, int n_female, int n_male)
        : coords_(std::move(coords)), n_(n_female), nu_(n_male) {}

    std::vector<S> coords_;
    int n_;
    int nu_;
};

}  // namespace gonodyn
