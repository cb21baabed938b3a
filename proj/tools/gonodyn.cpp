// gonodyn: command-line front end for the gonosomal evolution operator toolkit.
//
// Subcommands: validate, iterate, fixed-points, eigen, classify, series,
// trace-curve, sweep, plot.
// Exit codes: 0 ok, 2 config error, 3 domain error, 4 non-convergence,
// 5 I/O or parse error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gonodyn/gonodyn.hpp"

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// value parsing

/// Real-number literal: plain decimal/scientific or exact fraction "p/q".
double parse_real(const std::string& text) {
    const std::size_t slash = text.find('/');
    if (slash != std::string::npos) {
        const double num = parse_real(text.substr(0, slash));
        const double den = parse_real(text.substr(slash + 1));
        if (den == 0.0) throw gonodyn::ParseError("zero denominator in '" + text + "'");
        return num / den;
    }
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end == nullptr || *end != '\0')
        throw gonodyn::ParseError("malformed real number: '" + text + "'");
    return v;
}

/// Exact rational from "p/q" or decimal text; scientific notation falls back
/// to the exact dyadic value of the parsed double.
gonodyn::Rational parse_rational(const std::string& text) {
    try {
        return gonodyn::rational_from_decimal(text);
    } catch (const gonodyn::ParseError&) {
        return gonodyn::rational_from_double(parse_real(text));
    }
}

// ---------------------------------------------------------------------------
// shared options: parameters, backend, config file, outputs

struct Shared {
    std::string config_path;
    std::string a_text, sigma1_text, p1_text, p2_text;
    std::string backend_text;
    std::string out_path;
    double tol = 1e-12;
    std::int64_t max_iter = 1'000'000;

    CLI::Option* a_opt = nullptr;
    CLI::Option* sigma1_opt = nullptr;
    CLI::Option* p1_opt = nullptr;
    CLI::Option* p2_opt = nullptr;
    CLI::Option* backend_opt = nullptr;
    CLI::Option* out_opt = nullptr;
    CLI::Option* tol_opt = nullptr;
    CLI::Option* max_iter_opt = nullptr;

    json cfg;

    void attach_config(CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file; flags override its values");
    }
    void attach_params(CLI::App* sub) {
        a_opt = sub->add_option("--a", a_text, "female type-1 production rate a in (0,1)");
        sigma1_opt = sub->add_option("--sigma1", sigma1_text, "rate sigma1 in (0,1)");
        p1_opt = sub->add_option("--p1", p1_text, "admissible rate p1 = sigma1/a");
        p2_opt = sub->add_option("--p2", p2_text, "admissible rate p2 = sigma2/b");
    }
    void attach_backend(CLI::App* sub) {
        backend_opt = sub->add_option("--backend", backend_text,
                                      "arithmetic backend: rational or float "
                                      "(default from GONODYN_BACKEND)");
    }
    void attach_out(CLI::App* sub, const std::string& default_path, const char* what) {
        out_path = default_path;
        out_opt = sub->add_option("--out", out_path, what);
    }
    void attach_iteration(CLI::App* sub) {
        tol_opt = sub->add_option("--tol", tol, "max-norm step tolerance");
        max_iter_opt = sub->add_option("--max-iter", max_iter, "iteration budget");
    }

    /// Load the config file (if any) and fill every option the command line
    /// left unset.
    void finalize() {
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) throw gonodyn::ParseError("cannot open config file: " + config_path);
            cfg = json::parse(f);
            if (!cfg.is_object()) throw gonodyn::ParseError("config file must hold a JSON object");
        }
        merge_text(a_opt, a_text, "a");
        merge_text(sigma1_opt, sigma1_text, "sigma1");
        merge_text(p1_opt, p1_text, "p1");
        merge_text(p2_opt, p2_text, "p2");
        merge_text(backend_opt, backend_text, "backend");
        merge_text(out_opt, out_path, "out");
        if (given(tol_opt) == 0 && cfg.contains("tol")) tol = cfg.at("tol").get<double>();
        if (given(max_iter_opt) == 0 && cfg.contains("max_iter"))
            max_iter = cfg.at("max_iter").get<std::int64_t>();
    }

    static int given(const CLI::Option* o) { return o ? static_cast<int>(o->count()) : 0; }

    void merge_text(CLI::Option* o, std::string& value, const char* key) const {
        if (given(o) > 0 || !cfg.contains(key)) return;
        const json& node = cfg.at(key);
        value = node.is_string() ? node.get<std::string>() : node.dump();
    }

    bool has_a_sigma() const { return !a_text.empty() || !sigma1_text.empty(); }
    bool has_rates() const { return !p1_text.empty() || !p2_text.empty(); }
    bool has_params() const { return has_a_sigma() || has_rates(); }

    template <typename S>
    gonodyn::GonosomalParams<S> params(S (*conv)(const std::string&)) const {
        if (has_a_sigma() && has_rates())
            throw gonodyn::ConfigError("give either (--a, --sigma1) or (--p1, --p2), not both");
        if (has_a_sigma()) {
            if (a_text.empty() || sigma1_text.empty())
                throw gonodyn::ConfigError("--a and --sigma1 must be supplied together");
            return gonodyn::GonosomalParams<S>::from_a_sigma(conv(a_text), conv(sigma1_text));
        }
        if (has_rates()) {
            if (p1_text.empty() || p2_text.empty())
                throw gonodyn::ConfigError("--p1 and --p2 must be supplied together");
            return gonodyn::GonosomalParams<S>::from_rates(conv(p1_text), conv(p2_text));
        }
        throw gonodyn::ConfigError("operator parameters required: --a/--sigma1 or --p1/--p2");
    }
    gonodyn::GonosomalParams<double> params_double() const { return params<double>(&parse_real); }
    gonodyn::GonosomalParams<gonodyn::Rational> params_rational() const {
        return params<gonodyn::Rational>(&parse_rational);
    }

    std::string backend(const std::string& fallback) const {
        std::string b = backend_text;
        if (b.empty()) {
            const char* env = std::getenv("GONODYN_BACKEND");
            b = env ? env : fallback;
        }
        if (b != "rational" && b != "float")
            throw gonodyn::ConfigError("backend must be 'rational' or 'float', got '" + b + "'");
        return b;
    }
};

/// Open --out for writing; "-" addresses stdout.
class OutputStream {
public:
    explicit OutputStream(const std::string& path) {
        if (path != "-") {
            file_.open(path);
            if (!file_) throw gonodyn::ParseError("cannot open output file: " + path);
        }
    }
    std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::string fmt(double v) { return gonodyn::format_double(v); }

json point_json(const gonodyn::SimplexPoint<double>& s) {
    return json::array({s.x(), s.y(), s.u(), s.v()});
}

// ---------------------------------------------------------------------------
// validate

gonodyn::InheritanceTensor<double> tensor_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("nu") || !j.contains("gamma_f") ||
        !j.contains("gamma_m"))
        throw gonodyn::ParseError("tensor file must hold {\"n\", \"nu\", \"gamma_f\", \"gamma_m\"}");
    const int n = j.at("n").get<int>();
    const int nu = j.at("nu").get<int>();
    auto t = gonodyn::InheritanceTensor<double>::zeros(n, nu);
    auto fill = [&](const json& arr, bool female) {
        const int last = female ? n : nu;
        if (!arr.is_array() || static_cast<int>(arr.size()) != n)
            throw gonodyn::ParseError("tensor array must have n outer entries");
        for (int i = 0; i < n; ++i) {
            const json& row = arr.at(static_cast<std::size_t>(i));
            if (!row.is_array() || static_cast<int>(row.size()) != nu)
                throw gonodyn::ParseError("tensor array must have nu entries per type pair");
            for (int k = 0; k < nu; ++k) {
                const json& cell = row.at(static_cast<std::size_t>(k));
                if (!cell.is_array() || static_cast<int>(cell.size()) != last)
                    throw gonodyn::ParseError("tensor inner arrays have the wrong length");
                for (int m = 0; m < last; ++m) {
                    const double v = cell.at(static_cast<std::size_t>(m)).get<double>();
                    if (female)
                        t.gf(i, k, m) = v;
                    else
                        t.gm(i, k, m) = v;
                }
            }
        }
    };
    fill(j.at("gamma_f"), true);
    fill(j.at("gamma_m"), false);
    return t;
}

int run_validate(const Shared& sh, const std::string& tensor_path) {
    if (tensor_path.empty())
        throw gonodyn::ConfigError("validate needs --tensor pointing to a tensor JSON file");
    std::ifstream f(tensor_path);
    if (!f) throw gonodyn::ParseError("cannot open tensor file: " + tensor_path);
    const json j = json::parse(f);
    const auto tensor = tensor_from_json(j);
    const gonodyn::TensorValidation v = gonodyn::validate_tensor(tensor);
    (void)sh;
    if (v.ok) {
        std::cout << "valid (worst residual " << fmt(v.worst_residual) << ")\n";
        return 0;
    }
    std::cout << "invalid: " << v.message << "\n";
    return 2;
}

// ---------------------------------------------------------------------------
// iterate

int run_iterate(const Shared& sh, const std::vector<double>& init) {
    const auto p = sh.params_double();
    if (init.size() != 4)
        throw gonodyn::ConfigError("--init needs exactly four coordinates x,y,u,v");
    const auto s0 = gonodyn::SimplexPoint<double>::from_xyuv(init[0], init[1], init[2], init[3]);
    gonodyn::IterateOptions opt;
    opt.max_iter = sh.max_iter;
    opt.tol = sh.tol;
    const gonodyn::TrajectoryRecord rec = gonodyn::iterate(p, s0, opt);

    OutputStream out(sh.out_path);
    gonodyn::write_csv_row(out.get(), {"m", "x", "y", "u", "v", "alpha", "beta", "xv_product"});
    for (const auto& [m, st] : rec.states) {
        gonodyn::write_csv_row(out.get(),
                               {std::to_string(m), fmt(st.x), fmt(st.y), fmt(st.u), fmt(st.v),
                                fmt(st.x / (st.x + st.y)), fmt(st.v / (st.u + st.v)),
                                fmt(st.x * st.v)});
    }

    std::cout << "iterations: " << rec.iterations << "\n"
              << "converged: " << (rec.converged ? "true" : "false") << "\n"
              << "basin: " << gonodyn::to_string(rec.basin) << "\n"
              << "limit: " << fmt(rec.limit.x()) << ' ' << fmt(rec.limit.y()) << ' '
              << fmt(rec.limit.u()) << ' ' << fmt(rec.limit.v()) << "\n"
              << "residual: " << fmt(rec.residual) << "\n"
              << "final_xv: " << fmt(rec.xv_final) << "\n";
    if (!rec.converged) {
        std::cerr << "iteration budget exhausted before the limit stabilized\n";
        return 4;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// fixed-points

template <typename S>
json fixed_points_json(const gonodyn::GonosomalParams<S>& p, int samples) {
    std::vector<gonodyn::FixedPointDescriptor<S>> list;
    if (samples == 1) {
        // One midpoint per family; the library enumeration needs two or more
        // samples to span each segment.
        const S half = gonodyn::scalar_traits<S>::from_ratio(1, 2);
        const S u_mid = S(p.b * half);
        const S x_mid = S(p.a * half);
        const auto f11 = gonodyn::f11_point(p, u_mid);
        const auto f12 = gonodyn::f12_point(p, x_mid);
        list.push_back({gonodyn::FixedPointFamily::F11, u_mid, f11,
                        gonodyn::analytic_eigenvalues(p, f11)});
        list.push_back({gonodyn::FixedPointFamily::F12, x_mid, f12,
                        gonodyn::analytic_eigenvalues(p, f12)});
    } else {
        list = gonodyn::enumerate_fixed_points(p, samples);
    }
    json arr = json::array();
    for (const auto& d : list) {
        json e;
        e["family"] = gonodyn::to_string(d.family);
        e["free_parameter"] = gonodyn::to_double<S>(d.free_parameter);
        e["point"] = json::array({gonodyn::to_double<S>(d.point.x()), gonodyn::to_double<S>(d.point.y()),
                                  gonodyn::to_double<S>(d.point.u()), gonodyn::to_double<S>(d.point.v())});
        e["eigenvalues"] = json::array({gonodyn::to_double<S>(d.eigenvalues[0]),
                                        gonodyn::to_double<S>(d.eigenvalues[1]),
                                        gonodyn::to_double<S>(d.eigenvalues[2])});
        arr.push_back(e);
    }
    return arr;
}

int run_fixed_points(const Shared& sh, int samples) {
    const std::string backend = sh.backend("rational");
    json arr;
    if (backend == "rational")
        arr = fixed_points_json(sh.params_rational(), samples);
    else
        arr = fixed_points_json(sh.params_double(), samples);
    OutputStream out(sh.out_path);
    out.get() << arr.dump(2) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// eigen

int run_eigen(const Shared& sh, const std::vector<double>& pt) {
    const auto p = sh.params_double();
    if (pt.size() != 4) throw gonodyn::ConfigError("--point needs exactly four coordinates x,y,u,v");
    const auto s = gonodyn::SimplexPoint<double>::from_xyuv(pt[0], pt[1], pt[2], pt[3]);
    const auto analytic = gonodyn::analytic_eigenvalues(p, s);
    const auto fd = gonodyn::eigenvalues_at(p, s);
    const auto full = gonodyn::eigenvalues_full(p, s);
    json out;
    out["analytic"] = json::array({analytic[0], analytic[1], analytic[2]});
    out["finite_difference"] = json::array({fd[0], fd[1], fd[2]});
    out["full_4x4"] = json::array({full[0], full[1], full[2], full[3]});
    OutputStream os(sh.out_path);
    os.get() << out.dump(2) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// classify

int run_classify(const Shared& sh, const std::vector<double>& pt) {
    const auto p = sh.params_double();
    if (pt.size() != 4) throw gonodyn::ConfigError("--point needs exactly four coordinates x,y,u,v");
    const auto s = gonodyn::SimplexPoint<double>::from_xyuv(pt[0], pt[1], pt[2], pt[3]);
    gonodyn::IterateOptions opt;
    opt.max_iter = sh.max_iter;
    opt.tol = sh.tol;
    const gonodyn::BasinClassification c = gonodyn::classify_basin(p, s, opt);
    json out;
    out["basin"] = gonodyn::to_string(c.basin);
    out["limit"] = point_json(c.limit);
    if (p.case_tag == gonodyn::CaseTag::Equal)
        out["theta"] = c.theta;
    else
        out["theta"] = nullptr;
    out["analytic"] = c.analytic;
    out["converged"] = c.converged;
    out["iterations"] = c.iterations;
    OutputStream os(sh.out_path);
    os.get() << out.dump(2) << "\n";
    if (!c.converged) {
        std::cerr << "iteration budget exhausted before the limit stabilized\n";
        return 4;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// series

template <typename S>
json series_json(const gonodyn::InvariantCurveSeries<S>& sol, bool exact) {
    json out;
    out["p1"] = gonodyn::to_double<S>(sol.p1);
    out["p2"] = gonodyn::to_double<S>(sol.p2);
    json c = json::array();
    for (int k = 1; k <= sol.order; ++k) c.push_back(sol.coefficient(k));
    out["c"] = c;
    if (exact) {
        json ce = json::array();
        for (const S& v : sol.c) {
            std::ostringstream os;
            os << v;
            ce.push_back(os.str());
        }
        out["c_exact"] = ce;
    }
    const gonodyn::CurveVerification v = gonodyn::verify_series_curve(sol);
    out["validity_radius"] = sol.validity_radius;
    out["residual"] = v.max_residual;
    out["residual_points"] = v.points_checked;
    out["divergence_warning"] = sol.divergence_warning;
    json events = json::array();
    for (const auto& [order, r] : sol.consistency_events)
        events.push_back(json{{"order", order}, {"residual", r}});
    out["consistency_events"] = events;
    if (!sol.recurrence_residuals.empty()) {
        double worst = 0.0;
        for (double r : sol.recurrence_residuals) worst = std::max(worst, r);
        out["printed_recurrence_max_residual"] = worst;
    }
    return out;
}

int run_series(const Shared& sh, int case_id, const std::string& branch_text,
               const std::string& theta_text, const std::string& c1_text,
               const std::string& c2_text, int order) {
    const std::string backend = sh.backend("rational");
    json out;
    if (case_id == 1) {
        if (sh.has_params()) {
            const auto p = sh.params_double();
            if (p.case_tag != gonodyn::CaseTag::Equal)
                throw gonodyn::ConfigError("case mismatch: case 1 needs p1 = p2 = 1 (sigma1 = a)");
        }
        gonodyn::Case1Branch branch;
        if (branch_text == "A" || branch_text == "a")
            branch = gonodyn::Case1Branch::A;
        else if (branch_text == "B" || branch_text == "b")
            branch = gonodyn::Case1Branch::B;
        else
            throw gonodyn::ConfigError("--branch must be A or B");
        if (backend == "rational") {
            const auto sol =
                gonodyn::solve_case1<gonodyn::Rational>(branch, parse_rational(theta_text), order);
            out = series_json(sol, true);
        } else {
            const auto sol = gonodyn::solve_case1<double>(branch, parse_real(theta_text), order);
            out = series_json(sol, false);
        }
        out["case"] = 1;
        out["branch"] = (branch == gonodyn::Case1Branch::A) ? "A" : "B";
    } else if (case_id == 2) {
        if (!sh.has_params())
            throw gonodyn::ConfigError("case 2 needs operator parameters (--p1/--p2 or --a/--sigma1)");
        if (c1_text.empty()) throw gonodyn::ConfigError("case 2 needs --c1");
        if (backend == "rational") {
            const auto p = sh.params_rational();
            if (p.case_tag == gonodyn::CaseTag::Equal)
                throw gonodyn::ConfigError("case mismatch: case 2 needs p1 != p2");
            const gonodyn::Rational c1 = parse_rational(c1_text);
            const gonodyn::Rational c2 =
                c2_text.empty() ? gonodyn::case2_seed_c2(p, c1) : parse_rational(c2_text);
            const auto sol = gonodyn::solve_case2(p, c1, c2, order);
            out = series_json(sol, true);
        } else {
            const auto p = sh.params_double();
            if (p.case_tag == gonodyn::CaseTag::Equal)
                throw gonodyn::ConfigError("case mismatch: case 2 needs p1 != p2");
            const double c1 = parse_real(c1_text);
            const double c2 = c2_text.empty() ? gonodyn::case2_seed_c2(p, c1) : parse_real(c2_text);
            const auto sol = gonodyn::solve_case2(p, c1, c2, order);
            out = series_json(sol, false);
        }
        out["case"] = 2;
    } else {
        throw gonodyn::ConfigError("--case must be 1 or 2");
    }
    out["order"] = order;
    out["backend"] = backend;
    OutputStream os(sh.out_path);
    os.get() << out.dump(2) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// trace-curve

int run_trace_curve(const Shared& sh, const std::vector<double>& seed, int samples) {
    const auto p = sh.params_double();
    if (seed.size() != 2) throw gonodyn::ConfigError("--seed needs exactly two coordinates alpha,beta");
    const gonodyn::TracedCurve curve = gonodyn::trace_curve(p, seed[0], seed[1], samples);
    OutputStream out(sh.out_path);
    gonodyn::write_csv_row(out.get(), {"alpha", "beta"});
    for (const auto& [a, b] : curve.vertices)
        gonodyn::write_csv_row(out.get(), {fmt(a), fmt(b)});
    std::cout << "vertices: " << curve.vertices.size() << "\n"
              << "level: " << fmt(curve.level) << "\n"
              << "terminal: " << fmt(curve.terminal.first) << ' ' << fmt(curve.terminal.second)
              << "\n"
              << "tube_residual: " << fmt(curve.tube_residual) << "\n"
              << "corrected_points: " << curve.corrected_points << "\n"
              << "backward_steps: " << curve.backward_steps << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// sweep

int run_sweep(const Shared& sh, int grid, double margin) {
    const auto p = sh.params_double();
    gonodyn::SweepOptions opt;
    opt.grid = grid;
    opt.margin = margin;
    opt.max_iter = sh.max_iter;
    opt.tol = sh.tol;
    const auto cells = gonodyn::basin_sweep(p, opt);
    OutputStream out(sh.out_path);
    gonodyn::write_csv_row(out.get(), {"alpha0", "beta0", "basin", "limit_alpha", "limit_beta"});
    for (const auto& c : cells)
        gonodyn::write_csv_row(out.get(), {fmt(c.alpha0), fmt(c.beta0), gonodyn::to_string(c.basin),
                                           fmt(c.limit_alpha), fmt(c.limit_beta)});
    std::cout << "cells: " << cells.size() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// plot

std::vector<std::pair<double, double>> path_from_table(const gonodyn::CsvTable& t,
                                                       const std::string& acol,
                                                       const std::string& bcol) {
    const int ia = t.column(acol);
    const int ib = t.column(bcol);
    if (ia < 0 || ib < 0)
        throw gonodyn::ParseError("CSV lacks required columns " + acol + "," + bcol);
    std::vector<std::pair<double, double>> path;
    path.reserve(t.rows.size());
    for (const auto& row : t.rows)
        path.emplace_back(gonodyn::csv_number(row[static_cast<std::size_t>(ia)]),
                          gonodyn::csv_number(row[static_cast<std::size_t>(ib)]));
    return path;
}

int run_plot(const std::string& kind, const std::vector<std::string>& inputs,
             const std::string& out_path) {
    if (inputs.empty()) throw gonodyn::ConfigError("plot needs at least one --in CSV file");
    auto load = [](const std::string& path) {
        std::ifstream f(path);
        if (!f) throw gonodyn::ParseError("cannot open input file: " + path);
        return gonodyn::read_csv(f);
    };
    std::string svg;
    if (kind == "trajectory") {
        const auto t = load(inputs.front());
        svg = gonodyn::render_trajectory_svg(path_from_table(t, "alpha", "beta"),
                                             "reduced-plane trajectory");
    } else if (kind == "curves") {
        std::vector<std::vector<std::pair<double, double>>> curves;
        curves.reserve(inputs.size());
        for (const auto& path : inputs) curves.push_back(path_from_table(load(path), "alpha", "beta"));
        svg = gonodyn::render_curves_svg(curves, "invariant curves");
    } else if (kind == "sweep") {
        const auto t = load(inputs.front());
        const int ia = t.column("alpha0"), ib = t.column("beta0"), ik = t.column("basin");
        const int ila = t.column("limit_alpha"), ilb = t.column("limit_beta");
        if (ia < 0 || ib < 0 || ik < 0 || ila < 0 || ilb < 0)
            throw gonodyn::ParseError(
                "sweep CSV needs columns alpha0,beta0,basin,limit_alpha,limit_beta");
        std::vector<gonodyn::SweepCell> cells;
        cells.reserve(t.rows.size());
        std::vector<double> alphas;
        for (const auto& row : t.rows) {
            gonodyn::SweepCell c;
            c.alpha0 = gonodyn::csv_number(row[static_cast<std::size_t>(ia)]);
            c.beta0 = gonodyn::csv_number(row[static_cast<std::size_t>(ib)]);
            const std::string& tag = row[static_cast<std::size_t>(ik)];
            if (tag == "T0")
                c.basin = gonodyn::Basin::T0;
            else if (tag == "T1")
                c.basin = gonodyn::Basin::T1;
            else if (tag == "T2")
                c.basin = gonodyn::Basin::T2;
            else
                throw gonodyn::ParseError("unknown basin tag in sweep CSV: '" + tag + "'");
            c.limit_alpha = gonodyn::csv_number(row[static_cast<std::size_t>(ila)]);
            c.limit_beta = gonodyn::csv_number(row[static_cast<std::size_t>(ilb)]);
            cells.push_back(c);
            alphas.push_back(c.alpha0);
        }
        std::sort(alphas.begin(), alphas.end());
        double side = 0.02;
        for (std::size_t i = 1; i < alphas.size(); ++i) {
            const double d = alphas[i] - alphas[i - 1];
            if (d > 1e-12) {
                side = d;
                break;
            }
        }
        svg = gonodyn::render_sweep_svg(cells, side, "basin sweep");
    } else {
        throw gonodyn::ConfigError("--kind must be trajectory, curves, or sweep");
    }
    OutputStream os(out_path);
    os.get() << svg;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"normalized gonosomal evolution operator toolkit"};
    app.require_subcommand(1);

    // validate
    auto* sc_validate = app.add_subcommand("validate", "check an inheritance tensor file");
    Shared sh_validate;
    std::string tensor_path;
    sh_validate.attach_config(sc_validate);
    sc_validate->add_option("--tensor", tensor_path, "tensor JSON file {n, nu, gamma_f, gamma_m}");

    // iterate
    auto* sc_iterate = app.add_subcommand("iterate", "run a trajectory and record it as CSV");
    Shared sh_iterate;
    std::vector<double> init;
    sh_iterate.attach_config(sc_iterate);
    sh_iterate.attach_params(sc_iterate);
    sh_iterate.attach_iteration(sc_iterate);
    sh_iterate.attach_out(sc_iterate, "trajectory.csv", "trajectory CSV path ('-' for stdout)");
    sc_iterate->add_option("--init", init, "initial point x,y,u,v")->delimiter(',')->expected(1, 4);

    // fixed-points
    auto* sc_fp = app.add_subcommand("fixed-points", "enumerate fixed points with eigenvalues");
    Shared sh_fp;
    int fp_samples = 5;
    sh_fp.attach_config(sc_fp);
    sh_fp.attach_params(sc_fp);
    sh_fp.attach_backend(sc_fp);
    sh_fp.attach_out(sc_fp, "-", "JSON output path ('-' for stdout)");
    sc_fp->add_option("--samples", fp_samples, "points per fixed-point segment (>= 2)");

    // eigen
    auto* sc_eigen = app.add_subcommand("eigen", "eigenvalues at a fixed point");
    Shared sh_eigen;
    std::vector<double> eigen_point;
    sh_eigen.attach_config(sc_eigen);
    sh_eigen.attach_params(sc_eigen);
    sh_eigen.attach_out(sc_eigen, "-", "JSON output path ('-' for stdout)");
    sc_eigen->add_option("--point", eigen_point, "fixed point x,y,u,v")->delimiter(',')->expected(1, 4);

    // classify
    auto* sc_classify = app.add_subcommand("classify", "basin and limit of an initial point");
    Shared sh_classify;
    std::vector<double> classify_point;
    sh_classify.attach_config(sc_classify);
    sh_classify.attach_params(sc_classify);
    sh_classify.attach_iteration(sc_classify);
    sh_classify.attach_out(sc_classify, "-", "JSON output path ('-' for stdout)");
    sc_classify->add_option("--point", classify_point, "initial point x,y,u,v")
        ->delimiter(',')
        ->expected(1, 4);

    // series
    auto* sc_series = app.add_subcommand("series", "invariant-curve power-series solution");
    Shared sh_series;
    int series_case = 0;
    int series_order = 20;
    std::string branch_text = "B", theta_text = "1", c1_text, c2_text;
    sh_series.attach_config(sc_series);
    sh_series.attach_params(sc_series);
    sh_series.attach_backend(sc_series);
    sh_series.attach_out(sc_series, "-", "JSON output path ('-' for stdout)");
    auto* case_opt = sc_series->add_option("--case", series_case, "functional equation case: 1 or 2");
    auto* branch_opt = sc_series->add_option("--branch", branch_text, "case-1 branch: A or B");
    auto* theta_opt = sc_series->add_option("--theta", theta_text, "case-1 line parameter theta");
    auto* c1_opt = sc_series->add_option("--c1", c1_text, "case-2 leading coefficient");
    auto* c2_opt = sc_series->add_option("--c2", c2_text, "case-2 second coefficient");
    auto* order_opt = sc_series->add_option("--order", series_order, "truncation order K >= 2");

    // trace-curve
    auto* sc_trace = app.add_subcommand("trace-curve", "trace the invariant leaf through a seed");
    Shared sh_trace;
    std::vector<double> seed;
    int trace_samples = 8;
    sh_trace.attach_config(sc_trace);
    sh_trace.attach_params(sc_trace);
    sh_trace.attach_out(sc_trace, "curve.csv", "curve CSV path ('-' for stdout)");
    sc_trace->add_option("--seed", seed, "seed alpha,beta")->delimiter(',')->expected(1, 2);
    sc_trace->add_option("--samples", trace_samples, "transversal correction points");

    // sweep
    auto* sc_sweep = app.add_subcommand("sweep", "basin lattice sweep over the reduced square");
    Shared sh_sweep;
    int sweep_grid = 51;
    double sweep_margin = 1e-3;
    sh_sweep.attach_config(sc_sweep);
    sh_sweep.attach_params(sc_sweep);
    sh_sweep.attach_iteration(sc_sweep);
    sh_sweep.attach_out(sc_sweep, "sweep.csv", "sweep CSV path ('-' for stdout)");
    auto* grid_opt = sc_sweep->add_option("--grid", sweep_grid, "lattice points per side (>= 2)");
    auto* margin_opt = sc_sweep->add_option("--margin", sweep_margin, "boundary clearance");

    // plot
    auto* sc_plot = app.add_subcommand("plot", "render CSV results as SVG");
    std::string plot_kind, plot_out = "plot.svg";
    std::vector<std::string> plot_inputs;
    sc_plot->add_option("--kind", plot_kind, "trajectory, curves, or sweep");
    sc_plot->add_option("--in", plot_inputs, "input CSV file(s)");
    sc_plot->add_option("--out", plot_out, "SVG output path ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sc_validate->parsed()) {
            sh_validate.finalize();
            sh_validate.merge_text(sc_validate->get_option("--tensor"), tensor_path, "tensor_path");
            return run_validate(sh_validate, tensor_path);
        }
        if (sc_iterate->parsed()) {
            sh_iterate.finalize();
            if (init.empty() && sh_iterate.cfg.contains("init"))
                init = sh_iterate.cfg.at("init").get<std::vector<double>>();
            return run_iterate(sh_iterate, init);
        }
        if (sc_fp->parsed()) {
            sh_fp.finalize();
            if (sc_fp->get_option("--samples")->count() == 0 && sh_fp.cfg.contains("samples"))
                fp_samples = sh_fp.cfg.at("samples").get<int>();
            return run_fixed_points(sh_fp, fp_samples);
        }
        if (sc_eigen->parsed()) {
            sh_eigen.finalize();
            if (eigen_point.empty() && sh_eigen.cfg.contains("point"))
                eigen_point = sh_eigen.cfg.at("point").get<std::vector<double>>();
            return run_eigen(sh_eigen, eigen_point);
        }
        if (sc_classify->parsed()) {
            sh_classify.finalize();
            if (classify_point.empty() && sh_classify.cfg.contains("point"))
                classify_point = sh_classify.cfg.at("point").get<std::vector<double>>();
            return run_classify(sh_classify, classify_point);
        }
        if (sc_series->parsed()) {
            sh_series.finalize();
            const json& cfg = sh_series.cfg;
            if (case_opt->count() == 0 && cfg.contains("case")) series_case = cfg.at("case").get<int>();
            if (order_opt->count() == 0 && cfg.contains("order"))
                series_order = cfg.at("order").get<int>();
            sh_series.merge_text(branch_opt, branch_text, "branch");
            sh_series.merge_text(theta_opt, theta_text, "theta");
            sh_series.merge_text(c1_opt, c1_text, "c1");
            sh_series.merge_text(c2_opt, c2_text, "c2");
            return run_series(sh_series, series_case, branch_text, theta_text, c1_text, c2_text,
                              series_order);
        }
        if (sc_trace->parsed()) {
            sh_trace.finalize();
            if (seed.empty() && sh_trace.cfg.contains("seed"))
                seed = sh_trace.cfg.at("seed").get<std::vector<double>>();
            if (sc_trace->get_option("--samples")->count() == 0 && sh_trace.cfg.contains("samples"))
                trace_samples = sh_trace.cfg.at("samples").get<int>();
            return run_trace_curve(sh_trace, seed, trace_samples);
        }
        if (sc_sweep->parsed()) {
            sh_sweep.finalize();
            if (grid_opt->count() == 0 && sh_sweep.cfg.contains("grid"))
                sweep_grid = sh_sweep.cfg.at("grid").get<int>();
            if (margin_opt->count() == 0 && sh_sweep.cfg.contains("margin"))
                sweep_margin = sh_sweep.cfg.at("margin").get<double>();
            return run_sweep(sh_sweep, sweep_grid, sweep_margin);
        }
        if (sc_plot->parsed()) {
            return run_plot(plot_kind, plot_inputs, plot_out);
        }
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const gonodyn::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const gonodyn::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const gonodyn::PreconditionError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const gonodyn::ResonanceError& e) {
        std::cerr << "non-convergence: " << e.what() << "\n";
        return 4;
    } catch (const gonodyn::NumericalDegeneracyError& e) {
        std::cerr << "non-convergence: " << e.what() << "\n";
        return 4;
    } catch (const gonodyn::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 5;
    } catch (const json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
