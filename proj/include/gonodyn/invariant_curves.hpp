#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "gonodyn/errors.hpp"
#include "gonodyn/params.hpp"
#include "gonodyn/power_series.hpp"
#include "gonodyn/scalar.hpp"

namespace gonodyn {

/// A one-branch invariant curve of the reduced map written as the advance map
/// f(alpha) = sum_{k>=1} c_k alpha^k of the abscissa along the curve. The
/// curve ordinate follows from f:
///     g(alpha) = (alpha - f) / (alpha (1 + (p1-1) f)),   beta = g(alpha),
/// so g(0) = 1 - c_1 is the intercept on the beta axis.
template <typename S>
struct InvariantCurveSeries {
    std::vector<S> c;  // c[k-1] holds c_k, k = 1..order
    S p1 = S(1);
    S p2 = S(1);
    int order = 0;

    /// Orders whose matching equation had no remaining unknowns and a nonzero
    /// residual (seed data off the solution family), as (order, |residual|).
    std::vector<std::pair<int, double>> consistency_events;

    /// |residual_k| of the companion recurrence transcription, k = 2..order
    /// (informational only; see printed_recurrence_residuals).
    std::vector<double> recurrence_residuals;

    bool divergence_warning = false;  // some |c_k|^{1/k} exceeds 1e3
    double validity_radius = 1.0;     // min(1, (1e-10/|c_K|)^{1/K})

    double coefficient(int k) const { return to_double<S>(c.at(static_cast<std::size_t>(k - 1))); }

    double f_at(double alpha) const {
        double r = 0.0;
        for (int k = order; k >= 1; --k) r = r * alpha + coefficient(k);
        return r * alpha;
    }

    /// Curve ordinate; the (alpha - f)/alpha factor is evaluated as a shifted
    /// series so alpha = 0 is exact.
    double g_at(double alpha) const {
        double num = 0.0;
        for (int k = order; k >= 2; --k) num = num * alpha - coefficient(k);
        num = num * alpha + (1.0 - coefficient(1));
        const double den = 1.0 + (to_double<S>(p1) - 1.0) * f_at(alpha);
        return num / den;
    }
};

namespace detail {

/// Residual series of the invariant-curve functional equation
///   f (alpha - f) (1 - alpha) (1 + (p1-1) f.f)
///     - alpha (f - f.f) (1 + (p2-1) alpha + (p1-p2) f)
/// which vanishes identically exactly when beta = g(alpha) is invariant.
/// p1 = p2 = 1 gives the balanced-rate (Equal) specialization.
template <typename S>
TruncatedSeries<S> curve_residual_series(const TruncatedSeries<S>& f, const S& p1, const S& p2) {
    const int K = f.order();
    const TruncatedSeries<S> alpha = TruncatedSeries<S>::variable(K);
    const TruncatedSeries<S> one = TruncatedSeries<S>::constant(K, S(1));
    const TruncatedSeries<S> ff = f.compose(f);
    const TruncatedSeries<S> lhs = f * (alpha - f) * (one - alpha) * (one + ff * S(p1 - S(1)));
    const TruncatedSeries<S> rhs =
        (alpha * (f - ff)) * (one + alpha * S(p2 - S(1)) + f * S(p1 - p2));
    return lhs - rhs;
}

/// Order-by-order matcher. At order m the residual coefficient is an affine
/// function of the not-yet-determined c_j (squares and cross terms of two
/// unknowns only reach orders beyond m), so it is reconstructed exactly by
/// probing the all-zero assignment and one unit assignment per unknown. The
/// resulting linear equations are eliminated over the scalar field as they
/// accumulate; unknowns left undetermined for too long signal a resonant
/// linearization.
template <typename S>
class CoefficientMatcher {
public:
    CoefficientMatcher(int order, const S& p1, const S& p2, bool strict)
        : K_(order), p1_(p1), p2_(p2), strict_(strict), c_(static_cast<std::size_t>(order) + 1, S(0)),
          known_(static_cast<std::size_t>(order) + 1, false) {}

    void preset(int k, const S& value) {
        c_[static_cast<std::size_t>(k)] = value;
        known_[static_cast<std::size_t>(k)] = true;
    }

    void run() {
        // Resonant intercepts (c_1 = 1) determine each coefficient two orders
        // after it first appears, so a short tail past the truncation order is
        // processed while anything is still pending; coefficients beyond the
        // truncation order are treated as zero there.
        for (int m = 3; m <= K_ + 1 || (!pending_.empty() && m <= K_ + 5); ++m) {
            const int fresh = m - 1;
            if (fresh <= K_ && !known_[static_cast<std::size_t>(fresh)] && !is_pending(fresh))
                pending_.push_back(fresh);
            if (pending_.size() > 3)
                throw ResonanceError(
                    "coefficient c_" + std::to_string(pending_.front()) +
                        " is not determined by its matching window (resonant linearization)",
                    pending_.front());

            Equation eq;
            const S r0 = residual_order(m, pending_, {});
            bool any_slope = false;
            for (std::size_t i = 0; i < pending_.size(); ++i) {
                std::vector<S> probe(pending_.size(), S(0));
                probe[i] = S(1);
                const S slope = S(residual_order(m, pending_, probe) - r0);
                if (!(slope == S(0))) {
                    eq.terms.emplace_back(pending_[i], slope);
                    any_slope = true;
                }
            }
            if (!any_slope) {
                if (!(r0 == S(0))) report_inconsistency(m, r0);
                continue;
            }
            eq.rhs = S(S(0) - r0);
            eqs_.push_back(std::move(eq));
            reduce_system();
        }
        if (!pending_.empty())
            throw ResonanceError("coefficient c_" + std::to_string(pending_.front()) +
                                     " remains undetermined at the truncation order (resonant linearization)",
                                 pending_.front());
    }

    const std::vector<S>& coefficients() const { return c_; }
    const std::vector<std::pair<int, double>>& events() const { return events_; }

private:
    struct Equation {
        std::vector<std::pair<int, S>> terms;  // (coefficient index, slope)
        S rhs = S(0);
    };

    bool is_pending(int j) const {
        return std::find(pending_.begin(), pending_.end(), j) != pending_.end();
    }

    void report_inconsistency(int m, const S& r) {
        if (strict_)
            throw PreconditionError("matching equation of order " + std::to_string(m) +
                                    " is inconsistent with the prescribed low-order coefficients");
        events_.emplace_back(m, std::fabs(to_double<S>(r)));
    }

    /// Residual coefficient [alpha^m] with pending unknowns set to `probe`
    /// (all zero when `probe` is empty) and determined coefficients at their
    /// solved values. Coefficients of index >= m cannot reach order m.
    S residual_order(int m, const std::vector<int>& pend, const std::vector<S>& probe) const {
        TruncatedSeries<S> f(m);
        for (int k = 1; k <= std::min(K_, m); ++k)
            if (known_[static_cast<std::size_t>(k)]) f[k] = c_[static_cast<std::size_t>(k)];
        if (!probe.empty())
            for (std::size_t i = 0; i < pend.size(); ++i)
                if (pend[i] <= m) f[pend[i]] = probe[i];
        return curve_residual_series(f, p1_, p2_)[m];
    }

    void assign(int j, const S& value) {
        c_[static_cast<std::size_t>(j)] = value;
        known_[static_cast<std::size_t>(j)] = true;
        pending_.erase(std::remove(pending_.begin(), pending_.end(), j), pending_.end());
        for (Equation& e : eqs_) {
            for (auto it = e.terms.begin(); it != e.terms.end();) {
                if (it->first == j) {
                    e.rhs = S(e.rhs - S(it->second * value));
                    it = e.terms.erase(it);
                } else {
                    ++it;
                }
            }
        }
    }

    /// Gaussian elimination over the pending unknowns, repeated until no
    /// equation determines a single unknown.
    void reduce_system() {
        bool progress = true;
        while (progress) {
            progress = false;
            // Eliminate pairwise: make later equations independent of the
            // leading unknown of earlier ones.
            for (std::size_t i = 0; i < eqs_.size(); ++i) {
                if (eqs_[i].terms.empty()) continue;
                const int lead = eqs_[i].terms.front().first;
                const S lead_coeff = eqs_[i].terms.front().second;
                for (std::size_t j = 0; j < eqs_.size(); ++j) {
                    if (j == i) continue;
                    S cj = coeff_of(eqs_[j], lead);
                    if (cj == S(0)) continue;
                    const S factor = S(cj / lead_coeff);
                    combine(eqs_[j], eqs_[i], factor);
                }
            }
            // Drop trivial rows, flag contradictions, solve singletons.
            for (auto it = eqs_.begin(); it != eqs_.end();) {
                if (it->terms.empty()) {
                    if (!(it->rhs == S(0))) report_inconsistency(0, it->rhs);
                    it = eqs_.erase(it);
                } else if (it->terms.size() == 1) {
                    const int j = it->terms.front().first;
                    const S value = S(it->rhs / it->terms.front().second);
                    it = eqs_.erase(it);
                    assign(j, value);
                    progress = true;
                } else {
                    ++it;
                }
            }
        }
    }

    static S coeff_of(const Equation& e, int j) {
        for (const auto& t : e.terms)
            if (t.first == j) return t.second;
        return S(0);
    }

    /// e -= factor * pivot
    void combine(Equation& e, const Equation& pivot, const S& factor) {
        for (const auto& t : pivot.terms) {
            bool found = false;
            for (auto& own : e.terms) {
                if (own.first == t.first) {
                    own.second = S(own.second - S(factor * t.second));
                    found = true;
                    break;
                }
            }
            if (!found) e.terms.emplace_back(t.first, S(S(0) - S(factor * t.second)));
        }
        e.rhs = S(e.rhs - S(factor * pivot.rhs));
        e.terms.erase(std::remove_if(e.terms.begin(), e.terms.end(),
                                     [](const std::pair<int, S>& t) { return t.second == S(0); }),
                      e.terms.end());
        std::sort(e.terms.begin(), e.terms.end(),
                  [](const std::pair<int, S>& a, const std::pair<int, S>& b) { return a.first < b.first; });
    }

    int K_;
    S p1_, p2_;
    bool strict_;
    std::vector<S> c_;
    std::vector<char> known_;
    std::vector<int> pending_;
    std::vector<Equation> eqs_;
    std::vector<std::pair<int, double>> events_;
};

template <typename S>
double validity_radius_of(const std::vector<S>& c, int K) {
    const double ck = std::fabs(to_double<S>(c[static_cast<std::size_t>(K - 1)]));
    if (ck == 0.0) return 1.0;
    return std::min(1.0, std::pow(1e-10 / ck, 1.0 / static_cast<double>(K)));
}

template <typename S>
bool divergence_check(const std::vector<S>& c) {
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double mag = std::fabs(to_double<S>(c[i]));
        if (mag == 0.0) continue;
        if (std::log(mag) / static_cast<double>(i + 1) > std::log(1e3)) return true;
        if (!std::isfinite(mag)) return true;
    }
    return false;
}

/// Transcription of the order-by-order recurrence printed alongside the
/// balanced/unbalanced curve construction, evaluated on a finished solution:
///   residual_k = c_k (1 - c_1^{k-1}) - (S1 + S2 + S3)
/// with d_j = [alpha^j] f.f and d'_j = sum_{l<=j} c_{l+1} [alpha^j] f^l. The
/// printed statement does not close (its k-th relation still involves c_k on
/// both sides and one sign is ambiguous in the source); the residuals are
/// reported for reference and carry no correctness weight.
template <typename S>
std::vector<double> printed_recurrence_residuals(const std::vector<S>& cfull, int K, const S& p1,
                                                 const S& p2) {
    TruncatedSeries<S> f(K);
    for (int k = 1; k <= K; ++k) f[k] = cfull[static_cast<std::size_t>(k - 1)];
    const std::vector<TruncatedSeries<S>> pw = series_powers(f, K);
    const TruncatedSeries<S> ff = f.compose(f);
    auto c = [&](int k) { return k >= 1 && k <= K ? cfull[static_cast<std::size_t>(k - 1)] : S(0); };
    auto d = [&](int j) { return j >= 0 && j <= K ? ff[j] : S(0); };
    auto fpow = [&](int j, int l) { return pw[static_cast<std::size_t>(l - 1)][j]; };
    auto dprime = [&](int j) {
        S acc(0);
        for (int l = 1; l <= j; ++l) acc = S(acc + S(c(l + 1) * fpow(j, l)));
        return acc;
    };
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(K - 1));
    for (int k = 2; k <= K; ++k) {
        S s1(0);
        for (int j = 1; j <= k - 2; ++j) {
            s1 = S(s1 + S(S(S(c(k - j - 1) - c(k - j)) * S(p1 - S(1))) * d(j)));
            s1 = S(s1 + S(S(S(p1 - p2) * c(k - j)) * dprime(j)));
        }
        S s2 = S(c(k - 1) - S(S(p1 - S(1)) * d(k - 2)));
        s2 = S(s2 + S(S(S(S(1) - c(1)) * S(p1 - S(1))) * d(k - 1)));
        s2 = S(s2 + S(S(S(S(1) - c(1)) * S(p1 - p2)) * c(k)));
        S s3 = S(S(p2 - S(1)) * dprime(k - 2));
        for (int l = 1; l <= k - 1; ++l) s3 = S(s3 - S(c(l + 1) * fpow(k, l)));
        S ck1(1);
        for (int i = 0; i < k - 1; ++i) ck1 = S(ck1 * c(1));
        const S residual = S(S(c(k) * S(S(1) - ck1)) - S(S(s1 + s2) + s3));
        out.push_back(std::fabs(to_double<S>(residual)));
    }
    return out;
}

}  // namespace detail

/// The two series branches through a fixed intercept in the balanced case:
/// A is the axis branch c = (1, 0, 0, ...), B the line branch c = (theta, -1, 0, ...).
enum class Case1Branch { A, B };

inline const char* to_string(Case1Branch b) { return b == Case1Branch::A ? "A" : "B"; }

/// Balanced-case (p1 = p2 = 1) series solution of the invariant-curve
/// functional equation. Branch A seeds c_1 = 1, c_2 = 0; branch B seeds
/// c_1 = theta, c_2 = -1. All higher coefficients are determined by the
/// order-by-order matching and come out zero: the branches are the exact
/// polynomials f = alpha and f = theta alpha - alpha^2.
template <typename S>
InvariantCurveSeries<S> solve_case1(Case1Branch branch, const S& theta, int order) {
    if (order < 2) throw ConfigError("series truncation order must be at least 2");
    if (branch == Case1Branch::B && theta == S(S(0) - S(1)))
        throw ResonanceError("theta = -1 gives c_1 = -1, a second-order resonance outside the "
                             "affine matching window",
                             4);
    detail::CoefficientMatcher<S> matcher(order, S(1), S(1), /*strict=*/true);
    if (branch == Case1Branch::A) {
        matcher.preset(1, S(1));
        matcher.preset(2, S(0));
    } else {
        matcher.preset(1, theta);
        matcher.preset(2, S(S(0) - S(1)));
    }
    matcher.run();
    InvariantCurveSeries<S> out;
    out.order = order;
    out.p1 = S(1);
    out.p2 = S(1);
    out.c.assign(matcher.coefficients().begin() + 1, matcher.coefficients().end());
    out.consistency_events = matcher.events();
    out.validity_radius = detail::validity_radius_of(out.c, order);
    out.divergence_warning = detail::divergence_check(out.c);
    return out;
}

/// The unique c_2 compatible with a prescribed intercept coefficient c_1 in
/// the unbalanced case: the order-3 matching equation contains no c_3 and
/// instead pins c_2 = -p2 - (p1-p2) c_1 + (p1-1) c_1^2.
template <typename S>
S case2_seed_c2(const GonosomalParams<S>& p, const S& c1) {
    return S(S(S(0) - p.p2) - S(S(p.p1 - p.p2) * c1) + S(S(S(p.p1 - S(1)) * c1) * c1));
}

/// Unbalanced-case series solution seeded with (c_1, c_2). c_1 = 1 and
/// c_1 = -1 are resonant values where the matching window never closes. A
/// seed c_2 off the order-3 constraint does not stop the construction: the
/// order-3 equation has no unknowns left, so its residual is recorded as a
/// consistency event and matching proceeds.
template <typename S>
InvariantCurveSeries<S> solve_case2(const GonosomalParams<S>& p, const S& c1, const S& c2, int order) {
    if (order < 2) throw ConfigError("series truncation order must be at least 2");
    if (c1 == S(1) || c1 == S(S(0) - S(1)))
        throw ResonanceError("intercept coefficient c_1 = +/-1 is resonant: the order-3 matching "
                             "equation degenerates and no series branch is selected",
                             3);
    detail::CoefficientMatcher<S> matcher(order, p.p1, p.p2, /*strict=*/false);
    matcher.preset(1, c1);
    matcher.preset(2, c2);
    matcher.run();
    InvariantCurveSeries<S> out;
    out.order = order;
    out.p1 = p.p1;
    out.p2 = p.p2;
    out.c.assign(matcher.coefficients().begin() + 1, matcher.coefficients().end());
    out.consistency_events = matcher.events();
    out.recurrence_residuals = detail::printed_recurrence_residuals(out.c, order, p.p1, p.p2);
    out.validity_radius = detail::validity_radius_of(out.c, order);
    out.divergence_warning = detail::divergence_check(out.c);
    return out;
}

/// Exact invariance defect of the line beta = alpha + 1 - theta under the
/// balanced reduced map, measured as the change of beta - alpha across one
/// step. Identically zero for every theta and alpha.
template <typename S>
S line_invariance_residual(const S& theta, const S& alpha) {
    const S beta = S(S(alpha + S(1)) - theta);
    const S ab = S(alpha * beta);
    const S a1 = S(alpha - ab);
    const S b1 = S(beta - ab);
    return S(S(b1 - a1) - S(beta - alpha));
}

/// Pointwise invariance check of a series curve on a grid over
/// (0, validity_radius]: push (alpha, g(alpha)) through the reduced map and
/// measure |g(alpha') - beta'|. Grid points leaving the unit square are
/// skipped (the series is a local object).
struct CurveVerification {
    double max_residual = 0.0;
    int points_checked = 0;
    bool ok = false;
};

template <typename S>
CurveVerification verify_series_curve(const InvariantCurveSeries<S>& curve, int grid = 100,
                                      double tol = 1e-8) {
    const double p1 = to_double<S>(curve.p1);
    const double p2 = to_double<S>(curve.p2);
    CurveVerification v;
    for (int i = 1; i <= grid; ++i) {
        const double alpha = curve.validity_radius * static_cast<double>(i) / static_cast<double>(grid);
        const double beta = curve.g_at(alpha);
        if (!(alpha >= 0.0 && alpha <= 1.0 && beta >= 0.0 && beta <= 1.0)) continue;
        const double ab = alpha * beta;
        const double a1 = alpha * (1.0 - beta) / (1.0 + (p1 - 1.0) * ab);
        const double b1 = beta * (1.0 - alpha) / (1.0 + (p2 - 1.0) * ab);
        const double r = std::fabs(curve.g_at(a1) - b1);
        v.max_residual = std::max(v.max_residual, r);
        ++v.points_checked;
    }
    v.ok = v.points_checked > 0 && v.max_residual <= tol;
    return v;
}

}  // namespace gonodyn
