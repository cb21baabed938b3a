#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "gonodyn/errors.hpp"
#include "gonodyn/params.hpp"
#include "gonodyn/trajectory.hpp"

namespace gonodyn {

namespace detail {

inline std::pair<double, double> reduced_step(const GonosomalParams<double>& p, double a, double b) {
    const double ab = a * b;
    if (p.case_tag == CaseTag::Equal) return {a - ab, b - ab};
    return {a * (1.0 - b) / (1.0 + (p.p1 - 1.0) * ab), b * (1.0 - a) / (1.0 + (p.p2 - 1.0) * ab)};
}

/// Leaf level of the point (a, b): a quantity constant along each orbit-closure
/// leaf and strictly monotone across leaves. In the balanced case b - a is
/// exactly conserved; otherwise the orbit is run to the 1e-9 axis band and
/// b - a is read off there (the remaining drift past the band is O(1e-9)).
inline double leaf_level(const GonosomalParams<double>& p, double a, double b,
                         std::int64_t max_iter = 200000) {
    if (p.case_tag == CaseTag::Equal) return b - a;
    std::int64_t m = 0;
    while (std::min(a, b) > 1e-9 && m < max_iter) {
        const auto [na, nb] = reduced_step(p, a, b);
        a = na;
        b = nb;
        ++m;
    }
    return b - a;
}

/// Ordinate of the leaf with level `target` above abscissa tau, found by
/// bisection in b (the level is increasing in b). The bracket starts around
/// `guess` and expands geometrically.
inline double leaf_beta(const GonosomalParams<double>& p, double tau, double target, double guess) {
    constexpr double floor_b = 1e-12;
    constexpr double ceil_b = 1.0 - 1e-12;
    auto defect = [&](double b) { return leaf_level(p, tau, b) - target; };
    double lo = std::clamp(guess - 1e-3, floor_b, ceil_b);
    double hi = std::clamp(guess + 1e-3, floor_b, ceil_b);
    double step = 2e-3;
    int expansions = 0;
    while (defect(lo) > 0.0 && lo > floor_b) {
        lo = std::max(floor_b, lo - step);
        step *= 2.0;
        if (++expansions > 80) break;
    }
    step = 2e-3;
    while (defect(hi) < 0.0 && hi < ceil_b) {
        hi = std::min(ceil_b, hi + step);
        step *= 2.0;
        if (++expansions > 160) break;
    }
    if (!(defect(lo) <= 0.0 && defect(hi) >= 0.0))
        throw NumericalDegeneracyError("leaf ordinate bisection found no bracket at abscissa " +
                                       std::to_string(tau));
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (defect(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

inline double point_segment_distance(double ax, double ay, double bx, double by, double px,
                                     double py) {
    const double dx = bx - ax, dy = by - ay;
    const double l2 = dx * dx + dy * dy;
    double t = 0.0;
    if (l2 > 0.0) t = std::clamp(((px - ax) * dx + (py - ay) * dy) / l2, 0.0, 1.0);
    const double qx = ax + t * dx, qy = ay + t * dy;
    return std::hypot(px - qx, py - qy);
}

inline double polyline_distance(const std::vector<std::pair<double, double>>& poly, double px,
                                double py) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < poly.size(); ++i)
        best = std::min(best, point_segment_distance(poly[i].first, poly[i].second, poly[i + 1].first,
                                                     poly[i + 1].second, px, py));
    if (poly.size() == 1) best = std::hypot(px - poly[0].first, py - poly[0].second);
    return best;
}

}  // namespace detail

/// Polyline approximation of the invariant one-dimensional leaf through a
/// seed, listed by descending abscissa down to the terminal axis point.
struct TracedCurve {
    std::vector<std::pair<double, double>> vertices;
    double level = 0.0;                        // leaf level of the seed
    std::pair<double, double> terminal{0, 0};  // extrapolated axis endpoint (last vertex)
    double tube_residual = 0.0;  // max distance of a vertex image from the polyline
    int corrected_points = 0;    // vertices produced by level bisection
    int backward_steps = 0;      // preimage extensions beyond the seed
    bool terminates_on_beta_axis = false;
    bool terminates_on_alpha_axis = false;
};

struct TraceOptions {
    int max_backward_steps = 8;     // preimage steps extending the curve past the seed
    double backward_window = 0.25;  // abscissa search window per preimage step
    double dedup_spacing = 1e-5;    // minimum max-norm spacing of kept vertices
    double box_margin = 1e-3;       // backward extension stays inside [margin, 1-margin]^2
    std::int64_t orbit_cap = 100000;
};

/// Trace the invariant leaf through (alpha, beta): take the seed orbit, close
/// the large early gaps with `samples` points bisected onto the leaf across a
/// transversal of the first gap (their own orbits interleave into every later
/// gap), extend backward through preimages of the seed, and append the
/// extrapolated terminal. The tube residual measures how far one map step
/// moves any vertex off the polyline.
inline TracedCurve trace_curve(const GonosomalParams<double>& p, double alpha, double beta,
                               int samples = 8, const TraceOptions& opt = {}) {
    if (samples < 1) throw ConfigError("trace_curve needs a positive sample count");
    if (!(alpha > 0.0 && alpha < 1.0 && beta > 0.0 && beta < 1.0))
        throw DomainError("curve seed must lie in the open unit square");
    if (std::min(alpha, beta) <= 1e-8)
        throw DomainError("curve seed lies within 1e-8 of an axis; the leaf through it is degenerate");

    TracedCurve out;
    out.level = detail::leaf_level(p, alpha, beta);

    std::vector<std::pair<double, double>> pts;
    auto collect_orbit = [&](double a, double b) {
        pts.emplace_back(a, b);
        std::int64_t m = 0;
        while (std::min(a, b) > 1e-9 && m < opt.orbit_cap) {
            const auto [na, nb] = detail::reduced_step(p, a, b);
            a = na;
            b = nb;
            pts.emplace_back(a, b);
            ++m;
        }
    };
    collect_orbit(alpha, beta);

    // First-gap correction: the widest gap on the leaf is between the seed and
    // its first image; points bisected onto the leaf there have orbits that
    // land inside every subsequent gap.
    const auto [a1, b1] = detail::reduced_step(p, alpha, beta);
    for (int j = 1; j <= samples; ++j) {
        const double w = static_cast<double>(j) / static_cast<double>(samples + 1);
        const double tau = a1 + (alpha - a1) * w;
        if (tau <= 1e-9) continue;
        const double guess = b1 + (beta - b1) * w;
        const double bj = detail::leaf_beta(p, tau, out.level, guess);
        ++out.corrected_points;
        collect_orbit(tau, bj);
    }

    // Backward extension: find abscissas whose leaf point maps onto the
    // current leading vertex; the image abscissa is increasing along the leaf,
    // so plain bisection applies.
    double lead_a = alpha, lead_b = beta;
    for (int step = 0; step < opt.max_backward_steps; ++step) {
        double lo = lead_a + 1e-9;
        double hi = std::min(lead_a + opt.backward_window, 1.0 - opt.box_margin);
        // The leaf may leave the unit square short of the window's far end
        // (its ordinate reaches 1 at a smaller abscissa); pull the far end in
        // until the leaf still has an ordinate there.
        auto ordinate_exists = [&](double abar) {
            try {
                (void)detail::leaf_beta(p, abar, out.level, lead_b);
                return true;
            } catch (const NumericalDegeneracyError&) {
                return false;
            }
        };
        int pulls = 0;
        while (hi > lo && pulls < 40 && !ordinate_exists(hi)) {
            hi = lead_a + 0.5 * (hi - lead_a);
            ++pulls;
        }
        if (pulls >= 40 || hi <= lo) break;
        auto psi = [&](double abar) {
            const double bbar = detail::leaf_beta(p, abar, out.level, lead_b);
            return detail::reduced_step(p, abar, bbar).first - lead_a;
        };
        if (psi(hi) < 0.0) break;
        for (int it = 0; it < 64 && hi - lo > 1e-12; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (psi(mid) < 0.0)
                lo = mid;
            else
                hi = mid;
        }
        const double abar = 0.5 * (lo + hi);
        const double bbar = detail::leaf_beta(p, abar, out.level, lead_b);
        if (abar < opt.box_margin || abar > 1.0 - opt.box_margin || bbar < opt.box_margin ||
            bbar > 1.0 - opt.box_margin)
            break;
        pts.emplace_back(abar, bbar);
        ++out.backward_steps;
        lead_a = abar;
        lead_b = bbar;
    }

    // Terminal axis point from the extrapolated reduced limit of the seed.
    const ReducedLimitResult lim = reduced_limit(p, alpha, beta);
    out.terminal = {lim.alpha, lim.beta};
    out.terminates_on_beta_axis = lim.alpha <= 1e-6 && lim.beta > 1e-6;
    out.terminates_on_alpha_axis = lim.beta <= 1e-6 && lim.alpha > 1e-6;

    std::sort(pts.begin(), pts.end(), [](const auto& l, const auto& r) {
        if (l.first != r.first) return l.first > r.first;
        return l.second > r.second;
    });
    out.vertices.reserve(pts.size() / 4 + 8);
    for (const auto& q : pts) {
        if (!out.vertices.empty()) {
            const auto& k = out.vertices.back();
            if (std::max(std::fabs(q.first - k.first), std::fabs(q.second - k.second)) <
                opt.dedup_spacing)
                continue;
        }
        out.vertices.push_back(q);
    }
    out.vertices.push_back(out.terminal);

    for (const auto& q : out.vertices) {
        const auto [ia, ib] = detail::reduced_step(p, q.first, q.second);
        out.tube_residual =
            std::max(out.tube_residual, detail::polyline_distance(out.vertices, ia, ib));
    }
    return out;
}

/// One lattice cell of a basin sweep over the open reduced square: the seed,
/// its basin tag, and the extrapolated reduced limit.
struct SweepCell {
    double alpha0 = 0.0;
    double beta0 = 0.0;
    Basin basin = Basin::T0;
    double limit_alpha = 0.0;
    double limit_beta = 0.0;
};

struct SweepOptions {
    int grid = 51;
    double margin = 1e-3;
    std::int64_t max_iter = 1'000'000;
    double tol = 1e-12;
};

/// Deterministic row-major sweep (alpha outer, beta inner, both ascending).
/// Balanced parameters take the closed-form route; any other case runs the
/// reduced iteration with limit extrapolation per cell. Cells are evaluated
/// concurrently into pre-assigned slots, so the output order never depends on
/// scheduling.
inline std::vector<SweepCell> basin_sweep(const GonosomalParams<double>& p,
                                          const SweepOptions& opt = {}) {
    if (opt.grid < 2) throw ConfigError("sweep grid needs at least two points per side");
    if (!(opt.margin > 0.0 && opt.margin < 0.5))
        throw ConfigError("sweep margin must lie in (0, 0.5)");
    auto coord = [&](int i) {
        return opt.margin +
               (1.0 - 2.0 * opt.margin) * static_cast<double>(i) / static_cast<double>(opt.grid - 1);
    };
    const std::size_t total = static_cast<std::size_t>(opt.grid) * static_cast<std::size_t>(opt.grid);
    std::vector<SweepCell> cells(total);
    auto fill_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            SweepCell& cell = cells[k];
            cell.alpha0 = coord(static_cast<int>(k) / opt.grid);
            cell.beta0 = coord(static_cast<int>(k) % opt.grid);
            if (p.case_tag == CaseTag::Equal) {
                const double d = cell.alpha0 - cell.beta0;
                if (d > 0.0) {
                    cell.basin = Basin::T1;
                    cell.limit_alpha = d;
                } else if (d < 0.0) {
                    cell.basin = Basin::T2;
                    cell.limit_beta = -d;
                } else {
                    cell.basin = Basin::T0;
                }
            } else {
                const ReducedLimitResult r =
                    reduced_limit(p, cell.alpha0, cell.beta0, opt.max_iter, opt.tol);
                cell.basin = detail::basin_from_limits(r.alpha, r.beta);
                cell.limit_alpha = r.alpha;
                cell.limit_beta = r.beta;
            }
        }
    };
    const unsigned hw = std::thread::hardware_concurrency();
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(hw ? hw : 1, total));
    if (workers == 1) {
        fill_range(0, total);
        return cells;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (total + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(total, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(fill_range, begin, end);
    }
    for (std::thread& t : pool) t.join();
    return cells;
}

}  // namespace gonodyn
