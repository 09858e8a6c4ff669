#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "hermband/bounds.hpp"
#include "hermband/csvio.hpp"
#include "hermband/errors.hpp"
#include "hermband/expansion.hpp"
#include "hermband/kernel.hpp"
#include "hermband/signal.hpp"
#include "hermband/svg.hpp"
#include "hermband/version.hpp"
#include "hermband/wkb.hpp"

namespace hermband {

// Everything a run can be asked to do; zero/empty means "use the
// experiment's default".
struct ExperimentConfig {
    std::string experiment;
    std::vector<std::int64_t> ns;
    double alpha = 0.0;
    double T = 0.0;
    double Omega = 0.0;
    std::int64_t grid = 0;
    std::string out_dir;
    std::string format = "csv";
    bool svg = false;
    std::string signal_spec;  // custom runs: kind:params
    std::string pairs;        // hat-figure runs: "alpha:n,alpha:n,..."
    double target = 0.0;      // custom runs: error level for the order search
    std::string bound_kind;   // custom runs: local | global | scaled
};

namespace detail {

inline double to_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw_config("cannot parse " + what + " from '" + s + "'");
    }
}

inline std::int64_t to_int(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        std::int64_t v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw_config("cannot parse " + what + " from '" + s + "'");
    }
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(s.substr(start));
            return parts;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<double> linspace(double lo, double hi, std::size_t count) {
    std::vector<double> xs(count);
    for (std::size_t i = 0; i < count; ++i)
        xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    return xs;
}

// dots are awkward in file names; 3.16 -> 3p16
inline std::string file_tag(double v) {
    std::string s = format_number(v);
    for (char& c : s)
        if (c == '.') c = 'p';
    return s;
}

}  // namespace detail

inline std::vector<std::int64_t> parse_int_list(const std::string& s) {
    std::vector<std::int64_t> out;
    for (const auto& part : detail::split(s, ','))
        out.push_back(detail::to_int(detail::trim(part), "order list entry"));
    return out;
}

inline std::vector<std::pair<double, std::int64_t>> parse_pairs(const std::string& s) {
    std::vector<std::pair<double, std::int64_t>> out;
    for (const auto& part : detail::split(s, ',')) {
        auto bits = detail::split(detail::trim(part), ':');
        if (bits.size() != 2) throw_config("pair '" + part + "' is not of the form alpha:n");
        out.emplace_back(detail::to_double(bits[0], "pair alpha"),
                         detail::to_int(bits[1], "pair order"));
    }
    return out;
}

// kind:params, e.g. indicator:-0.5:0.5, hat:0:1, gaussian:0.8, hermite:12,
// sampled:/path/to/file.csv
inline Signal parse_signal(const std::string& spec) {
    auto colon = spec.find(':');
    std::string kind = (colon == std::string::npos) ? spec : spec.substr(0, colon);
    std::string rest = (colon == std::string::npos) ? "" : spec.substr(colon + 1);
    if (kind == "sampled") {
        if (rest.empty()) throw_config("sampled signal needs a file path");
        return load_sampled_csv(rest);
    }
    auto args = rest.empty() ? std::vector<std::string>{} : detail::split(rest, ':');
    auto need = [&](std::size_t k) {
        if (args.size() != k)
            throw_config("signal '" + kind + "' takes " + format_number(static_cast<std::int64_t>(k)) +
                         " parameter(s)");
    };
    if (kind == "indicator") {
        need(2);
        return Signal::indicator(detail::to_double(args[0], "indicator a"),
                                 detail::to_double(args[1], "indicator b"));
    }
    if (kind == "hat") {
        need(2);
        return Signal::hat(detail::to_double(args[0], "hat center"),
                           detail::to_double(args[1], "hat halfwidth"));
    }
    if (kind == "gaussian") {
        need(1);
        return Signal::gaussian(detail::to_double(args[0], "gaussian sigma"));
    }
    if (kind == "hermite") {
        need(1);
        return Signal::hermite(detail::to_int(args[0], "hermite order"));
    }
    throw_config("unknown signal kind '" + kind + "'");
}

inline void validate_config(const ExperimentConfig& cfg) {
    static const std::vector<std::string> tags = {"example1", "example2",    "example3",
                                                  "lemma-audit", "bound-audit", "custom"};
    bool known = false;
    for (const auto& t : tags) known = known || (t == cfg.experiment);
    if (!known) throw_config("unknown experiment '" + cfg.experiment + "'");
    if (cfg.format != "csv" && cfg.format != "json")
        throw_config("format must be csv or json, got '" + cfg.format + "'");
    for (auto n : cfg.ns)
        if (n < 0) throw_config("orders must be nonnegative");
    if (cfg.alpha < 0.0) throw_config("alpha must be positive");
    if (cfg.T < 0.0) throw_config("T must be positive");
    if (cfg.Omega < 0.0) throw_config("omega must be positive");
    if (cfg.grid != 0 && cfg.grid < 2) throw_config("grid must be at least 2");
    if (cfg.target < 0.0) throw_config("target must be positive");
    if (!cfg.bound_kind.empty() && cfg.bound_kind != "local" && cfg.bound_kind != "global" &&
        cfg.bound_kind != "scaled")
        throw_config("bound_kind must be local, global or scaled");
    if (!cfg.pairs.empty()) parse_pairs(cfg.pairs);
    if (cfg.experiment == "custom" && cfg.signal_spec.empty())
        throw_config("custom experiment requires a signal");
}

inline void apply_config_pair(ExperimentConfig& cfg, const std::string& key,
                              const std::string& value) {
    if (key == "experiment") cfg.experiment = value;
    else if (key == "n") cfg.ns = parse_int_list(value);
    else if (key == "alpha") cfg.alpha = detail::to_double(value, "alpha");
    else if (key == "T") cfg.T = detail::to_double(value, "T");
    else if (key == "omega") cfg.Omega = detail::to_double(value, "omega");
    else if (key == "grid") cfg.grid = detail::to_int(value, "grid");
    else if (key == "out") cfg.out_dir = value;
    else if (key == "format") cfg.format = value;
    else if (key == "svg") {
        if (value == "true" || value == "1") cfg.svg = true;
        else if (value == "false" || value == "0") cfg.svg = false;
        else throw_config("svg must be true or false, got '" + value + "'");
    } else if (key == "signal") cfg.signal_spec = value;
    else if (key == "pairs") cfg.pairs = value;
    else if (key == "target") cfg.target = detail::to_double(value, "target");
    else if (key == "bound_kind") cfg.bound_kind = value;
    else throw_config("unknown config key '" + key + "'");
}

// Flat key = value file; # starts a comment.
inline ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw_io("cannot open config file " + path);
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string body = detail::trim(line.substr(0, line.find('#')));
        if (body.empty()) continue;
        auto eq = body.find('=');
        if (eq == std::string::npos)
            throw_config("config line " + format_number(static_cast<std::int64_t>(lineno)) +
                         ": expected key = value");
        apply_config_pair(cfg, detail::trim(body.substr(0, eq)),
                          detail::trim(body.substr(eq + 1)));
    }
    validate_config(cfg);
    return cfg;
}

namespace detail {

// Collects written files and closes the run with a manifest.
struct OutputSink {
    std::filesystem::path dir;
    std::string format;
    std::vector<std::string> written;

    explicit OutputSink(const ExperimentConfig& cfg)
        : dir(cfg.out_dir.empty() ? "." : cfg.out_dir), format(cfg.format) {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) throw_io("cannot create output directory " + dir.string());
    }

    std::string table(const std::string& base, const Table& t) {
        std::string name = base + (format == "json" ? ".json" : ".csv");
        write_text_file((dir / name).string(),
                        format == "json" ? table_to_json(t) : table_to_csv(t));
        written.push_back(name);
        return name;
    }

    std::string figure(const std::string& base, const SvgFigure& fig) {
        std::string name = base + ".svg";
        write_text_file((dir / name).string(), render_svg(fig));
        written.push_back(name);
        return name;
    }

    void manifest(const std::string& experiment, nlohmann::ordered_json params) {
        nlohmann::ordered_json doc;
        doc["experiment"] = experiment;
        doc["version"] = version_string;
        doc["parameters"] = std::move(params);
        doc["outputs"] = written;
        write_text_file((dir / "manifest.json").string(), doc.dump(2) + "\n");
    }
};

inline std::vector<std::int64_t> resolved_ns(const ExperimentConfig& cfg,
                                             std::vector<std::int64_t> fallback) {
    return cfg.ns.empty() ? std::move(fallback) : cfg.ns;
}

}  // namespace detail

inline Table coefficient_table(const CoefficientVector& c) {
    Table t;
    t.meta = {{"n", format_number(c.n)},
              {"alpha", format_number(c.alpha)},
              {"c", format_number(c.alpha * c.alpha)},
              {"panel_width", format_number(c.quad_meta.panel_width)},
              {"quad_order", format_number(static_cast<std::int64_t>(c.quad_meta.nodes_per_panel))},
              {"a", format_number(c.quad_meta.a)},
              {"b", format_number(c.quad_meta.b)}};
    t.header = {"k", "coeff"};
    for (std::size_t k = 0; k < c.coeffs.size(); ++k)
        t.rows.push_back({static_cast<std::int64_t>(k), c.coeffs[k]});
    return t;
}

inline Table kernel_grid_table(const KernelGrid& g) {
    Table t;
    t.meta = {{"n", format_number(g.n)},
              {"T", format_number(g.T)},
              {"N", format_number(g.N)},
              {"sup_residual", format_number(g.sup_residual)}};
    if (g.hs_norm) t.meta.emplace_back("hs_norm", format_number(*g.hs_norm));
    t.header = {"x", "y", "cd", "sinc", "residual"};
    for (std::size_t i = 0; i < g.xs.size(); ++i)
        for (std::size_t j = 0; j < g.ys.size(); ++j)
            t.rows.push_back({g.xs[i], g.ys[j], g.k_values[g.index(i, j)],
                              g.sinc_values[g.index(i, j)], g.residual[g.index(i, j)]});
    return t;
}

struct Example1Row {
    std::int64_t n = 0;
    double sup_residual = 0.0;
    double hs_norm = 0.0;
    double theorem_bound = 0.0;
};

struct Example1Report {
    double T = 0.0;
    std::int64_t grid = 0;
    std::vector<Example1Row> rows;
    std::vector<std::string> outputs;
};

// Kernel-vs-sinc residual table: sup and Hilbert-Schmidt norms on [-T,T]
// against the guaranteed 17 T^2 / sqrt(2n+1).
inline Example1Report run_example1(const ExperimentConfig& cfg) {
    Example1Report rep;
    rep.T = cfg.T > 0.0 ? cfg.T : 1.0;
    rep.grid = cfg.grid > 0 ? cfg.grid : 80;
    auto ns = detail::resolved_ns(cfg, {10, 25, 50, 75, 100});
    detail::OutputSink sink(cfg);

    Table t;
    t.meta = {{"T", format_number(rep.T)}, {"grid", format_number(rep.grid)}};
    t.header = {"n", "sup_residual", "hs_norm", "theorem_bound"};
    for (auto n : ns) {
        KernelGrid g = residual_grid(n, rep.T, static_cast<int>(rep.grid));
        double hs = residual_hs_norm(n, rep.T);
        g.hs_norm = hs;
        double bound = 17.0 * rep.T * rep.T / std::sqrt(2.0 * static_cast<double>(n) + 1.0);
        rep.rows.push_back({n, g.sup_residual, hs, bound});
        t.rows.push_back({n, g.sup_residual, hs, bound});
        sink.table("example1_grid_n" + format_number(n), kernel_grid_table(g));
    }
    sink.table("example1", t);

    if (cfg.svg) {
        SvgFigure fig;
        fig.title = "kernel residual on [-T,T], T = " + format_number(rep.T);
        fig.x_label = "n";
        fig.y_label = "residual";
        SvgSeries sup{"sup residual", {}, {}}, hs{"HS norm", {}, {}}, bd{"bound", {}, {}};
        for (const auto& r : rep.rows) {
            sup.xs.push_back(static_cast<double>(r.n));
            sup.ys.push_back(r.sup_residual);
            hs.xs.push_back(static_cast<double>(r.n));
            hs.ys.push_back(r.hs_norm);
            bd.xs.push_back(static_cast<double>(r.n));
            bd.ys.push_back(r.theorem_bound);
        }
        fig.series = {sup, hs, bd};
        sink.figure("fig_example1", fig);
    }

    nlohmann::ordered_json params;
    params["n"] = ns;
    params["T"] = rep.T;
    params["grid"] = rep.grid;
    params["format"] = cfg.format;
    sink.manifest("example1", std::move(params));
    rep.outputs = sink.written;
    return rep;
}

struct CurveSummary {
    std::int64_t n = 0;
    double alpha = 0.0;
    double l2_error = 0.0;  // on [-1,1]
    std::string file;
};

struct FigureReport {
    std::vector<CurveSummary> curves;
    std::vector<std::string> outputs;
};

namespace detail {

inline CurveSummary run_curve(const Signal& f, const std::string& signal_name, std::int64_t n,
                              double alpha, const std::vector<double>& xs, OutputSink& sink,
                              const std::string& base, bool svg) {
    CoefficientVector c = expand(f, n, alpha);
    std::vector<double> rec = reconstruct(c, xs);
    Table t;
    t.meta = {{"signal", signal_name},
              {"n", format_number(n)},
              {"alpha", format_number(alpha)},
              {"c", format_number(alpha * alpha)}};
    t.header = {"x", "f", "Kf", "error"};
    std::vector<double> fx(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        fx[i] = f(xs[i]);
        t.rows.push_back({xs[i], fx[i], rec[i], fx[i] - rec[i]});
    }
    CurveSummary s;
    s.n = n;
    s.alpha = alpha;
    s.l2_error = projection_error_on(f, c, -1.0, 1.0);
    s.file = sink.table(base, t);
    if (svg) {
        std::string label = "n = " + format_number(n) + ", alpha = " + format_number(alpha);
        SvgFigure recon;
        recon.title = signal_name + " reconstruction, " + label;
        recon.x_label = "x";
        recon.y_label = "value";
        recon.series = {{"f", xs, fx}, {"Kf", xs, rec}};
        sink.figure(base + "_recon", recon);
        SvgFigure err;
        err.title = signal_name + " error, " + label;
        err.x_label = "x";
        err.y_label = "f - Kf";
        std::vector<double> diff(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) diff[i] = fx[i] - rec[i];
        err.series = {{"f - Kf", xs, diff}};
        sink.figure(base + "_error", err);
    }
    return s;
}

inline Table summary_table(const std::vector<CurveSummary>& curves) {
    Table t;
    t.header = {"n", "alpha", "l2_error_unit_window", "file"};
    for (const auto& s : curves) t.rows.push_back({s.n, s.alpha, s.l2_error, s.file});
    return t;
}

}  // namespace detail

// Step-function reconstruction curves at a widened scale, with the unscaled
// basis for contrast.
inline FigureReport run_example2(const ExperimentConfig& cfg) {
    FigureReport rep;
    double alpha = cfg.alpha > 0.0 ? cfg.alpha : 10.0;
    auto ns = detail::resolved_ns(cfg, {40, 80});
    std::int64_t grid = cfg.grid > 0 ? cfg.grid : 2001;
    Signal f = Signal::indicator(-0.5, 0.5);
    auto xs = detail::linspace(-1.5, 1.5, static_cast<std::size_t>(grid));
    detail::OutputSink sink(cfg);

    for (auto n : ns)
        rep.curves.push_back(detail::run_curve(
            f, "indicator", n, alpha, xs, sink,
            "example2_n" + format_number(n) + "_alpha" + detail::file_tag(alpha), cfg.svg));
    if (alpha != 1.0)
        for (auto n : ns)
            rep.curves.push_back(detail::run_curve(
                f, "indicator", n, 1.0, xs, sink, "example2_n" + format_number(n) + "_alpha1",
                cfg.svg));
    sink.table("example2_summary", detail::summary_table(rep.curves));

    nlohmann::ordered_json params;
    params["n"] = ns;
    params["alpha"] = alpha;
    params["c"] = alpha * alpha;
    params["grid"] = grid;
    params["signal"] = "indicator:-0.5:0.5";
    params["format"] = cfg.format;
    sink.manifest("example2", std::move(params));
    rep.outputs = sink.written;
    return rep;
}

// Hat-function reconstruction at several (alpha, n) pairs.
inline FigureReport run_example3(const ExperimentConfig& cfg) {
    FigureReport rep;
    std::vector<std::pair<double, std::int64_t>> pairs;
    if (!cfg.pairs.empty()) {
        pairs = parse_pairs(cfg.pairs);
    } else {
        double a1 = std::sqrt(10.0), a2 = std::sqrt(50.0);
        pairs = {{a1, 20}, {a1, 50}, {a2, 20}, {a2, 50}};
    }
    std::int64_t grid = cfg.grid > 0 ? cfg.grid : 2001;
    Signal f = Signal::hat(0.0, 1.0);
    auto xs = detail::linspace(-1.5, 1.5, static_cast<std::size_t>(grid));
    detail::OutputSink sink(cfg);

    for (std::size_t i = 0; i < pairs.size(); ++i)
        rep.curves.push_back(detail::run_curve(
            f, "hat", pairs[i].second, pairs[i].first, xs, sink,
            "example3_pair" + format_number(static_cast<std::int64_t>(i + 1)), cfg.svg));
    sink.table("example3_summary", detail::summary_table(rep.curves));

    nlohmann::ordered_json params;
    nlohmann::ordered_json plist = nlohmann::ordered_json::array();
    for (const auto& [a, n] : pairs) plist.push_back({{"alpha", a}, {"c", a * a}, {"n", n}});
    params["pairs"] = std::move(plist);
    params["grid"] = grid;
    params["signal"] = "hat:0:1";
    params["format"] = cfg.format;
    sink.manifest("example3", std::move(params));
    rep.outputs = sink.written;
    return rep;
}

struct AuditEntry {
    std::string check;
    std::int64_t n = 0;
    double T = std::numeric_limits<double>::quiet_NaN();
    double ratio = 0.0;
    double x = std::numeric_limits<double>::quiet_NaN();
    double y = std::numeric_limits<double>::quiet_NaN();
};

struct AuditReport {
    std::string kind;
    std::vector<AuditEntry> entries;           // one per (check, n)
    std::map<std::string, AuditEntry> worst;   // per check
    std::vector<std::string> skipped;          // sweep cells dropped by preconditions
    double worst_ratio = 0.0;
    bool pass = true;
    std::vector<std::string> outputs;
};

namespace detail {

inline Table audit_table(const AuditReport& rep, double rhs_scale) {
    Table t;
    t.meta = {{"kind", rep.kind}, {"rhs_scale", format_number(rhs_scale)}};
    t.header = {"check", "n", "T", "ratio", "x", "y"};
    for (const auto& e : rep.entries)
        t.rows.push_back({e.check, e.n, e.T, e.ratio, e.x, e.y});
    return t;
}

inline void finish_audit(AuditReport& rep) {
    for (const auto& e : rep.entries) {
        auto it = rep.worst.find(e.check);
        if (it == rep.worst.end() || e.ratio > it->second.ratio) rep.worst[e.check] = e;
        rep.worst_ratio = std::max(rep.worst_ratio, e.ratio);
    }
    rep.pass = rep.worst_ratio <= 1.0;
}

}  // namespace detail

// Grid check of the phase-function inequalities, the defect bounds and the
// flat-amplitude envelope. rhs_scale shrinks every right-hand side; the
// self-test uses it to prove the audit can detect a violated bound.
inline AuditReport run_lemma_audit(const ExperimentConfig& cfg, double rhs_scale = 1.0) {
    if (!(rhs_scale > 0.0)) throw_domain("rhs_scale must be positive");
    AuditReport rep;
    rep.kind = "lemma";
    auto ns = detail::resolved_ns(cfg, {50, 100, 200, 400});
    double T = cfg.T > 0.0 ? cfg.T : 2.0;
    int grid = cfg.grid > 0 ? static_cast<int>(cfg.grid) : 64;

    for (auto n : ns) {
        try {
            LemmaReport lr = verify_phase_lemma(n, T, grid);
            for (const auto& [check, ext] : lr.worst_ratios)
                rep.entries.push_back({check, n, T, ext.ratio / rhs_scale, ext.x, ext.y});
        } catch (const error& e) {
            if (e.which() != error::kind::domain) throw;
            rep.skipped.push_back("n=" + std::to_string(n) + ": " + e.what());
        }
    }
    if (rep.entries.empty())
        throw_config("audit sweep is empty after precondition filtering");
    detail::finish_audit(rep);

    detail::OutputSink sink(cfg);
    sink.table("lemma_audit", detail::audit_table(rep, rhs_scale));
    nlohmann::ordered_json params;
    params["n"] = ns;
    params["T"] = T;
    params["grid"] = grid;
    params["rhs_scale"] = rhs_scale;
    params["skipped"] = rep.skipped;
    params["worst_ratio"] = rep.worst_ratio;
    params["pass"] = rep.pass;
    sink.manifest("lemma-audit", std::move(params));
    rep.outputs = sink.written;
    return rep;
}

// Soundness sweep for the quantitative error guarantees: pointwise asymptotic
// envelopes, kernel residual sup, kernel tail mass.
inline AuditReport run_bound_audit(const ExperimentConfig& cfg, double rhs_scale = 1.0) {
    if (!(rhs_scale > 0.0)) throw_domain("rhs_scale must be positive");
    AuditReport rep;
    rep.kind = "bound";
    std::vector<std::int64_t> ns = cfg.ns;
    if (ns.empty())
        for (std::int64_t n = 6; n <= 500; n += 7) ns.push_back(n);
    std::size_t grid = cfg.grid > 0 ? static_cast<std::size_t>(cfg.grid) : 1000;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    for (auto n : ns) {
        double two_np1 = 2.0 * static_cast<double>(n) + 1.0;
        double lambda = std::sqrt(two_np1);
        double Tn = std::min(3.0, std::sqrt(static_cast<double>(n) / 2.0));
        AuditEntry generic{"asymptotic-error-generic", n, nan, 0.0, nan, nan};
        AuditEntry half{"asymptotic-error-half", n, nan, 0.0, nan, nan};
        AuditEntry flat{"asymptotic-error-flat", n, Tn, 0.0, nan, nan};
        try {
            for (double x : detail::linspace(-0.995 * lambda, 0.995 * lambda, grid)) {
                double h = hermite_eval(n, x);
                double E = h - wkb_main_term(n, x);
                double p2 = std::fma(-x, x, two_np1);
                double r = lambda / p2;
                double generic_bound = 1.25 * r * r * std::sqrt(r);
                if (std::abs(E) / generic_bound > generic.ratio) {
                    generic.ratio = std::abs(E) / generic_bound;
                    generic.x = x;
                }
                if (std::abs(x) <= 0.5 * lambda) {
                    double half_bound = 2.0 / (two_np1 * lambda);
                    if (std::abs(E) / half_bound > half.ratio) {
                        half.ratio = std::abs(E) / half_bound;
                        half.x = x;
                    }
                }
                if (std::abs(x) <= Tn) {
                    double tilde = h - wkb_simplified_term(n, x, Tn);
                    double c = (Tn >= 2.0) ? 2.0 : 3.0;
                    double tilde_bound = c * Tn * Tn / std::pow(two_np1, 1.25);
                    if (std::abs(tilde) / tilde_bound > flat.ratio) {
                        flat.ratio = std::abs(tilde) / tilde_bound;
                        flat.x = x;
                    }
                }
            }
        } catch (const error& e) {
            if (e.which() != error::kind::domain) throw;
            rep.skipped.push_back("n=" + std::to_string(n) + ": " + e.what());
            continue;
        }
        for (AuditEntry* e : {&generic, &half, &flat}) {
            e->ratio /= rhs_scale;
            rep.entries.push_back(*e);
        }
    }
    if (rep.entries.empty())
        throw_config("audit sweep is empty after precondition filtering");

    // kernel residual sup over the window where the bound is claimed
    auto residual_ratio = [&](std::int64_t n, double T) {
        KernelGrid g = residual_grid(n, T, 64);
        double bound = 17.0 * T * T / std::sqrt(2.0 * static_cast<double>(n) + 1.0);
        rep.entries.push_back({"kernel-residual-sup", n, T,
                               g.sup_residual / bound / rhs_scale, g.sup_x, g.sup_y});
    };
    for (std::int64_t n = 6; n <= 200; n += 7) residual_ratio(n, 1.0);
    for (std::int64_t n = 8; n <= 400; n += 14) residual_ratio(n, 2.0);

    for (std::int64_t n : {32, 64, 128, 256})
        for (double x : {0.0, 1.0, 1.9}) {
            TailReport tr = tail_mass(n, 2.0, x);
            rep.entries.push_back(
                {"kernel-tail-mass", n, 2.0, tr.tail_mass / tr.bound / rhs_scale, x, nan});
        }
    detail::finish_audit(rep);

    detail::OutputSink sink(cfg);
    sink.table("bound_audit", detail::audit_table(rep, rhs_scale));
    nlohmann::ordered_json params;
    params["n"] = ns;
    params["grid"] = grid;
    params["rhs_scale"] = rhs_scale;
    params["skipped"] = rep.skipped;
    params["worst_ratio"] = rep.worst_ratio;
    params["pass"] = rep.pass;
    sink.manifest("bound-audit", std::move(params));
    rep.outputs = sink.written;
    return rep;
}

inline AuditReport run_audits(const std::string& kind, const ExperimentConfig& cfg,
                              double rhs_scale = 1.0) {
    if (kind == "lemma") return run_lemma_audit(cfg, rhs_scale);
    if (kind == "bound") return run_bound_audit(cfg, rhs_scale);
    throw_config("unknown audit kind '" + kind + "', expected lemma or bound");
}

struct CustomRow {
    std::int64_t n = 0;
    double error_inside = 0.0;
    double error_outside = 0.0;
    double local_bound = std::numeric_limits<double>::quiet_NaN();
    double hs_bound = std::numeric_limits<double>::quiet_NaN();
    double scaled_bound = std::numeric_limits<double>::quiet_NaN();
    double global_bound = std::numeric_limits<double>::quiet_NaN();
};

struct CustomReport {
    ConcentrationReport concentration;
    std::vector<CustomRow> rows;
    std::optional<std::int64_t> min_n;
    std::vector<std::string> outputs;
};

namespace detail {

template <class F>
double bound_or_nan(F&& f) {
    try {
        return f();
    } catch (const error& e) {
        if (e.which() != error::kind::domain) throw;
        return std::numeric_limits<double>::quiet_NaN();
    }
}

}  // namespace detail

// Full pipeline for one signal: concentration levels, expansion error inside
// and outside the window for each order, every guarantee that legally applies,
// and optionally the smallest order meeting a target error level.
inline CustomReport run_custom(const ExperimentConfig& cfg) {
    if (cfg.signal_spec.empty()) throw_config("custom experiment requires a signal");
    if (!(cfg.T > 0.0)) throw_config("custom experiment requires T > 0");
    if (!(cfg.Omega > 0.0)) throw_config("custom experiment requires omega > 0");
    Signal f = parse_signal(cfg.signal_spec);
    double alpha = cfg.alpha > 0.0 ? cfg.alpha : 1.0;
    double T = cfg.T, Omega = cfg.Omega;
    auto ns = detail::resolved_ns(cfg, {20, 40, 80});
    detail::OutputSink sink(cfg);

    CustomReport rep;
    rep.concentration = concentration_report(f, T, Omega);
    const double eps_T = rep.concentration.eps_T;
    const double alpha_stretch = 1.0 / alpha;  // the bound is stated for a stretched axis

    Table t;
    t.meta = {{"signal", cfg.signal_spec},
              {"T", format_number(T)},
              {"Omega", format_number(Omega)},
              {"alpha", format_number(alpha)},
              {"c", format_number(alpha * alpha)},
              {"eps_T", format_number(eps_T)},
              {"eps_Omega", format_number(rep.concentration.eps_Omega)}};
    t.header = {"n",        "error_inside", "error_outside", "local_bound",
                "hs_bound", "scaled_bound", "global_bound"};

    for (auto n : ns) {
        CoefficientVector c = expand(f, n, alpha);
        CustomRow row;
        row.n = n;
        row.error_inside = detail::projection_error_on(f, c, -T, T);
        row.error_outside = detail::projection_error_outside_on(f, c, T);

        // per-order legal band edge: the hypotheses cap it at sqrt(n/2); one
        // ulp inside so that squaring cannot overshoot the gate
        double omega_n =
            std::min(Omega, std::nextafter(std::sqrt(static_cast<double>(n) / 2.0), 0.0));
        row.local_bound = detail::bound_or_nan([&] {
            BoundInput in;
            in.n = n;
            in.T = T;
            in.T0 = T;
            in.Omega0 = omega_n;
            in.eps_T = eps_T;
            in.eps_Omega = band_concentration(f, omega_n);
            return local_projection_bound(in);
        });
        if (alpha == 1.0)
            row.hs_bound = detail::bound_or_nan([&] {
                BoundInput in;
                in.eps_T = eps_T;
                in.eps_Omega = band_concentration(f, omega_n);
                in.hs_norm = residual_hs_norm(n, T);
                return local_projection_bound_hs(in);
            });
        row.scaled_bound = detail::bound_or_nan([&] {
            double c_n = std::min(Omega * alpha_stretch,
                                  std::nextafter(std::sqrt(static_cast<double>(n) / 2.0), 0.0));
            BoundInput in;
            in.n = n;
            in.T = T;
            in.alpha = alpha_stretch;
            in.c = c_n;
            in.eps_T = eps_T;
            in.eps_Omega = band_concentration(f, c_n / alpha_stretch);
            return scaled_projection_bound(in);
        });
        row.global_bound = detail::bound_or_nan([&] {
            BoundInput in;
            in.n = n;
            in.T = T;
            in.T0 = 0.5 * T;
            in.Omega0 = omega_n;
            in.eps_T = time_concentration(f, 0.5 * T);
            in.eps_Omega = band_concentration(f, omega_n);
            return global_projection_bound(in);
        });

        rep.rows.push_back(row);
        t.rows.push_back({row.n, row.error_inside, row.error_outside, row.local_bound,
                          row.hs_bound, row.scaled_bound, row.global_bound});
        sink.table("custom_coeffs_n" + format_number(n), coefficient_table(c));

        if (cfg.svg) {
            auto [slo, shi] = f.support();
            double L = 1.1 * std::max({T, std::abs(slo), std::abs(shi)});
            auto xs = detail::linspace(-L, L, 1001);
            std::vector<double> fx(xs.size());
            for (std::size_t i = 0; i < xs.size(); ++i) fx[i] = f(xs[i]);
            SvgFigure fig;
            fig.title = "reconstruction, n = " + format_number(n) +
                        ", alpha = " + format_number(alpha);
            fig.x_label = "x";
            fig.y_label = "value";
            fig.series = {{"f", xs, fx}, {"Kf", xs, reconstruct(c, xs)}};
            sink.figure("custom_recon_n" + format_number(n), fig);
        }
    }
    sink.table("custom_pipeline", t);

    if (cfg.target > 0.0) {
        BoundKind kind = BoundKind::local;
        if (cfg.bound_kind == "global") kind = BoundKind::global;
        else if (cfg.bound_kind == "scaled") kind = BoundKind::scaled;
        BoundInput base;
        base.T = T;
        base.eps_T = eps_T;
        base.eps_Omega = rep.concentration.eps_Omega;
        if (kind == BoundKind::scaled) {
            base.alpha = alpha_stretch;
            base.c = Omega * alpha_stretch;
        } else {
            base.T0 = (kind == BoundKind::global) ? 0.5 * T : T;
            base.Omega0 = Omega;
            if (kind == BoundKind::global) base.eps_T = time_concentration(f, 0.5 * T);
        }
        rep.min_n = min_n_for(cfg.target, kind, base);
    }

    nlohmann::ordered_json params;
    params["signal"] = cfg.signal_spec;
    params["n"] = ns;
    params["alpha"] = alpha;
    params["c"] = alpha * alpha;
    params["T"] = T;
    params["omega"] = Omega;
    params["eps_T"] = eps_T;
    params["eps_Omega"] = rep.concentration.eps_Omega;
    params["l2_norm"] = rep.concentration.l2_norm;
    if (cfg.target > 0.0) {
        params["target"] = cfg.target;
        params["bound_kind"] = cfg.bound_kind.empty() ? "local" : cfg.bound_kind;
        params["min_n"] = *rep.min_n;
    }
    params["format"] = cfg.format;
    sink.manifest("custom", std::move(params));
    rep.outputs = sink.written;
    return rep;
}

}  // namespace hermband
