#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "gonodyn/fixed_points.hpp"
#include "gonodyn/gonosomal_operator.hpp"

namespace gonodyn {

/// Terminal classification of a trajectory:
///   T0 — both alpha and beta die out; limit (0, a, b, 0), the shared corner
///   T1 — beta dies out, alpha survives; limit on F12
///   T2 — alpha dies out, beta survives; limit on F11
enum class Basin { T0, T1, T2 };

inline const char* to_string(Basin b) {
    switch (b) {
        case Basin::T0: return "T0";
        case Basin::T1: return "T1";
        default: return "T2";
    }
}

namespace detail {

/// Iterated Aitken delta-squared on a window of consecutive iterates.
/// Levels with vanishing second differences are skipped (already converged).
/// Each level amplifies rounding noise of the second differences by roughly
/// the square of the local decay scale, so depth is capped and — since every
/// sequence fed in here is monotone — a level that scrambles the ordering of
/// a monotone input is discarded: the last clean level wins.
inline double aitken_extrapolate(std::vector<double> w) {
    if (w.empty()) return std::numeric_limits<double>::quiet_NaN();
    auto direction = [](const std::vector<double>& v) {
        // -1 non-increasing, +1 non-decreasing, 0 neither; a relative jitter
        // band keeps exact-limit plateaus (all entries equal up to rounding)
        // counted as monotone.
        bool up = true, down = true;
        for (std::size_t i = 0; i + 1 < v.size(); ++i) {
            const double band = 1e-12 * std::max(std::fabs(v[i]), std::fabs(v[i + 1]));
            if (v[i + 1] > v[i] + band) down = false;
            if (v[i + 1] < v[i] - band) up = false;
        }
        return down ? -1 : (up ? +1 : 0);
    };
    for (int level = 0; level < 6 && w.size() >= 3; ++level) {
        const int dir = direction(w);
        std::vector<double> next;
        next.reserve(w.size() - 2);
        for (std::size_t i = 0; i + 2 < w.size(); ++i) {
            const double d0 = w[i + 1] - w[i];
            const double d1 = w[i + 2] - w[i + 1];
            const double den = d1 - d0;
            if (!(std::fabs(den) > 1e-300)) continue;
            const double t = w[i + 2] - d1 * d1 / den;
            if (!std::isfinite(t)) continue;
            next.push_back(t);
        }
        if (next.empty()) break;
        if (dir != 0 && direction(next) != dir) break;
        w = std::move(next);
    }
    return w.back();
}

/// Limit estimation for the monotone non-increasing sequences alpha_m, beta_m.
///
/// Checkpoints (geometric schedule) extrapolate from a ring of recent
/// consecutive iterates. Two regimes occur: geometric decay (generic — the
/// estimates stabilize; take the last) and algebraic ~1/m decay toward 0
/// (diagonal-type trajectories — the estimates keep shrinking and late ones
/// drown in rounding noise of the second differences; take the smallest).
/// Every estimate is clamped into [0, current value], which is always a valid
/// bracket for the limit of a non-increasing non-negative sequence.
class LimitTracker {
public:
    static constexpr int ring_capacity = 24;

    void push(double alpha, double beta) {
        ring_a_[head_] = alpha;
        ring_b_[head_] = beta;
        head_ = (head_ + 1) % ring_capacity;
        if (count_ < ring_capacity) ++count_;
        last_a_ = alpha;
        last_b_ = beta;
    }

    /// Record a checkpoint estimate; returns true when the estimates have
    /// stabilized (limit pinned to ~1e-11) AND the alpha*beta product is small
    /// enough that stopping cannot hide a still-large x*v.
    bool checkpoint() {
        const double ea = clamp_estimate(aitken_extrapolate(window(ring_a_)), last_a_);
        const double eb = clamp_estimate(aitken_extrapolate(window(ring_b_)), last_b_);
        history_.emplace_back(ea, eb);
        const std::size_t n = history_.size();
        if (n >= 3) {
            const bool stable_a = std::fabs(history_[n - 1].first - history_[n - 2].first) <= 1e-11 &&
                                  std::fabs(history_[n - 2].first - history_[n - 3].first) <= 1e-11;
            const bool stable_b = std::fabs(history_[n - 1].second - history_[n - 2].second) <= 1e-11 &&
                                  std::fabs(history_[n - 2].second - history_[n - 3].second) <= 1e-11;
            if (stable_a && stable_b && last_a_ * last_b_ <= 1e-9) return true;
        }
        return false;
    }

    /// Final (alpha, beta) limit estimate: last checkpoint if stabilized,
    /// otherwise the smallest checkpoint estimate (algebraic-decay regime).
    std::pair<double, double> finalize() {
        checkpoint();  // capture the end state
        auto pick = [this](bool beta_coord) {
            const std::size_t n = history_.size();
            auto get = [&](std::size_t i) { return beta_coord ? history_[i].second : history_[i].first; };
            if (n >= 3 && std::fabs(get(n - 1) - get(n - 3)) <= 1e-10) return get(n - 1);
            double best = get(0);
            for (std::size_t i = 1; i < n; ++i) best = std::min(best, get(i));
            return best;
        };
        return {pick(false), pick(true)};
    }

    double last_alpha() const { return last_a_; }
    double last_beta() const { return last_b_; }

private:
    std::vector<double> window(const std::array<double, ring_capacity>& ring) const {
        std::vector<double> w(static_cast<std::size_t>(count_));
        for (int i = 0; i < count_; ++i)
            w[static_cast<std::size_t>(i)] = ring[(head_ + ring_capacity - count_ + i) % ring_capacity];
        return w;
    }
    static double clamp_estimate(double est, double current) {
        if (!std::isfinite(est)) return current;
        return std::clamp(est, 0.0, current);
    }

    std::array<double, ring_capacity> ring_a_{};
    std::array<double, ring_capacity> ring_b_{};
    int head_ = 0;
    int count_ = 0;
    double last_a_ = std::numeric_limits<double>::quiet_NaN();
    double last_b_ = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::pair<double, double>> history_;
};

inline std::int64_t next_checkpoint(std::int64_t m) { return m + m / 4 + 8; }

}  // namespace detail

/// Everything iterate() reports. `converged` means a stopping rule fired and
/// the reconstructed limit is fixed to within 1e-9; non-convergence is a
/// report, not an exception. Basin membership uses the 1e-6 dead-band on the
/// extrapolated (alpha, beta) limit.
struct TrajectoryRecord {
    std::vector<std::pair<std::int64_t, State4<double>>> states;  // thinned: 0..99, powers of 2, final
    std::int64_t iterations = 0;
    bool converged = false;
    SimplexPoint<double> limit;
    Basin basin = Basin::T0;
    double residual = 0.0;      // || W(limit) - limit ||_inf
    double alpha_limit = 0.0;   // extrapolated, after dead-band clamp
    double beta_limit = 0.0;
    double theta = std::numeric_limits<double>::quiet_NaN();  // alpha - beta + 1 (Equal case only)
    double xv_final = 0.0;
    bool xv_nonincreasing_after_first = true;
};

struct IterateOptions {
    std::int64_t max_iter = 1'000'000;
    double tol = 1e-12;
    bool record_states = true;
};

constexpr double basin_dead_band = 1e-6;

namespace detail {

inline SimplexPoint<double> reconstruct_limit(const GonosomalParams<double>& p, double alpha_hat,
                                              double beta_hat) {
    // Any state with alpha*beta = 0 reconstructed through the closed form is
    // exactly fixed: F12 for beta = 0, F11 for alpha = 0, the corner for both.
    if (beta_hat == 0.0)
        return SimplexPoint<double>::from_xyuv(p.a * alpha_hat, p.a * (1.0 - alpha_hat), p.b, 0.0);
    return SimplexPoint<double>::from_xyuv(0.0, p.a, p.b * (1.0 - beta_hat), p.b * beta_hat);
}

inline Basin basin_from_limits(double alpha_hat, double beta_hat) {
    if (alpha_hat >= basin_dead_band) return Basin::T1;
    if (beta_hat >= basin_dead_band) return Basin::T2;
    return Basin::T0;
}

}  // namespace detail

/// Iterate the specialized operator from s0 until successive states agree to
/// `tol` in max norm, the Aitken-extrapolated (alpha, beta) limits stabilize,
/// or the budget runs out. The limit state is reconstructed from the
/// extrapolated reduced coordinates through the closed one-step form, which
/// lands exactly on a fixed-point segment.
inline TrajectoryRecord iterate(const GonosomalParams<double>& p, const SimplexPoint<double>& s0,
                                const IterateOptions& opt = {}) {
    State4<double> s{s0.x(), s0.y(), s0.u(), s0.v()};
    detail::LimitTracker tracker;
    auto alpha_of = [](const State4<double>& q) { return q.x / (q.x + q.y); };
    auto beta_of = [](const State4<double>& q) { return q.v / (q.u + q.v); };
    tracker.push(alpha_of(s), beta_of(s));

    TrajectoryRecord rec{.states = {},
                         .iterations = 0,
                         .converged = false,
                         .limit = s0,
                         .basin = Basin::T0,
                         .residual = 0.0,
                         .alpha_limit = 0.0,
                         .beta_limit = 0.0,
                         .theta = std::numeric_limits<double>::quiet_NaN(),
                         .xv_final = s.x * s.v,
                         .xv_nonincreasing_after_first = true};
    if (p.case_tag == CaseTag::Equal) rec.theta = alpha_of(s) - beta_of(s) + 1.0;

    auto should_record = [](std::int64_t m) { return m < 100 || (m & (m - 1)) == 0; };
    std::int64_t last_recorded = -1;
    auto record = [&](std::int64_t m, const State4<double>& q) {
        rec.states.emplace_back(m, q);
        last_recorded = m;
    };
    if (opt.record_states) record(0, s);

    double xv_prev = s.x * s.v;
    std::int64_t m = 0;
    std::int64_t cp = 64;
    bool stopped = false;
    while (m < opt.max_iter) {
        const State4<double> t = detail::w_step(p, s);
        ++m;
        const double diff = std::max(std::max(std::fabs(t.x - s.x), std::fabs(t.y - s.y)),
                                     std::max(std::fabs(t.u - s.u), std::fabs(t.v - s.v)));
        s = t;
        tracker.push(alpha_of(s), beta_of(s));
        const double xv = s.x * s.v;
        if (m >= 2 && xv > xv_prev + 1e-15) rec.xv_nonincreasing_after_first = false;
        xv_prev = xv;
        if (opt.record_states && should_record(m)) record(m, s);
        if (diff <= opt.tol) {
            stopped = true;
            break;
        }
        if (m == cp) {
            if (tracker.checkpoint()) {
                stopped = true;
                break;
            }
            cp = detail::next_checkpoint(cp);
        }
    }
    if (opt.record_states && last_recorded != m) record(m, s);

    const auto [ea, eb] = tracker.finalize();
    rec.iterations = m;
    // The dead band separates "limit component is zero" from "positive" on the
    // reconstructed coordinates themselves: x = a*alpha for an F12 limit,
    // v = b*beta for an F11 limit.
    rec.alpha_limit = p.a * ea > basin_dead_band ? ea : 0.0;
    rec.beta_limit = p.b * eb > basin_dead_band ? eb : 0.0;
    rec.xv_final = s.x * s.v;

    const bool ambiguous = rec.alpha_limit > 0.0 && rec.beta_limit > 0.0;
    if (ambiguous) {
        // A genuine limit has alpha*beta = 0; favor the dominant coordinate but
        // report the run as unconverged.
        if (rec.alpha_limit >= rec.beta_limit)
            rec.beta_limit = 0.0;
        else
            rec.alpha_limit = 0.0;
    }
    rec.basin = rec.alpha_limit > 0.0 ? Basin::T1
                                      : (rec.beta_limit > 0.0 ? Basin::T2 : Basin::T0);
    rec.limit = detail::reconstruct_limit(p, rec.alpha_limit, rec.beta_limit);
    rec.residual = fixed_point_residual(p, rec.limit);
    rec.converged = stopped && !ambiguous && rec.residual <= 1e-9;
    return rec;
}

/// Same engine on the reduced plane only — used where the 4D state is not
/// needed (basin sweeps, invariant-curve levels).
struct ReducedLimitResult {
    double alpha = 0.0;  // extrapolated limits, dead-band clamped
    double beta = 0.0;
    std::int64_t iterations = 0;
    bool converged = false;
};

inline ReducedLimitResult reduced_limit(const GonosomalParams<double>& p, double alpha, double beta,
                                        std::int64_t max_iter = 1'000'000, double tol = 1e-12) {
    detail::LimitTracker tracker;
    tracker.push(alpha, beta);
    const double p1m = p.p1 - 1.0, p2m = p.p2 - 1.0;
    const bool equal_case = p.case_tag == CaseTag::Equal;
    std::int64_t m = 0;
    std::int64_t cp = 64;
    bool stopped = false;
    while (m < max_iter) {
        const double ab = alpha * beta;
        double na, nb;
        if (equal_case) {
            na = alpha - ab;
            nb = beta - ab;
        } else {
            na = alpha * (1.0 - beta) / (1.0 + p1m * ab);
            nb = beta * (1.0 - alpha) / (1.0 + p2m * ab);
        }
        ++m;
        const double diff = std::max(std::fabs(na - alpha), std::fabs(nb - beta));
        alpha = na;
        beta = nb;
        tracker.push(alpha, beta);
        if (diff <= tol) {
            stopped = true;
            break;
        }
        if (m == cp) {
            if (tracker.checkpoint()) {
                stopped = true;
                break;
            }
            cp = detail::next_checkpoint(cp);
        }
    }
    const auto [ea, eb] = tracker.finalize();
    ReducedLimitResult r;
    r.alpha = ea < basin_dead_band ? 0.0 : ea;
    r.beta = eb < basin_dead_band ? 0.0 : eb;
    if (r.alpha > 0.0 && r.beta > 0.0) {
        if (r.alpha >= r.beta)
            r.beta = 0.0;
        else
            r.alpha = 0.0;
        stopped = false;
    }
    r.iterations = m;
    r.converged = stopped;
    return r;
}

/// Basin decision. In the Equal case the answer is closed-form: the quantity
/// theta = alpha - beta + 1 is conserved along orbits, the trichotomy is the
/// sign of y v - x u (evaluated as raw products, so grid diagonals classify
/// exactly), and the limit follows from theta alone. Other cases fall back
/// to iteration.
struct BasinClassification {
    Basin basin;
    SimplexPoint<double> limit;
    double theta = std::numeric_limits<double>::quiet_NaN();
    bool analytic = false;
    bool converged = true;
    std::int64_t iterations = 0;
};

inline BasinClassification classify_basin(const GonosomalParams<double>& p,
                                          const SimplexPoint<double>& s0,
                                          const IterateOptions& opt = {}) {
    if (p.case_tag == CaseTag::Equal) {
        const ReducedPoint<double> r = reduce(s0);
        const double theta = r.alpha - r.beta + 1.0;
        const double yv = s0.y() * s0.v();
        const double xu = s0.x() * s0.u();
        Basin basin;
        SimplexPoint<double> limit = SimplexPoint<double>::from_xyuv(0.0, p.a, p.b, 0.0);
        if (yv == xu) {
            basin = Basin::T0;
        } else if (yv < xu) {
            basin = Basin::T1;
            limit = SimplexPoint<double>::from_xyuv(p.a * (theta - 1.0), p.a * (2.0 - theta), p.b, 0.0);
        } else {
            basin = Basin::T2;
            limit = SimplexPoint<double>::from_xyuv(0.0, p.a, p.b * theta, p.b * (1.0 - theta));
        }
        return BasinClassification{basin, limit, theta, true, true, 0};
    }
    IterateOptions o = opt;
    o.record_states = false;
    const TrajectoryRecord rec = iterate(p, s0, o);
    return BasinClassification{rec.basin, rec.limit, rec.theta, false, rec.converged, rec.iterations};
}

}  // namespace gonodyn
