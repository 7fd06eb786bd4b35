#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "betaforge/constants.hpp"
#include "betaforge/dimension.hpp"
#include "betaforge/expansions.hpp"
#include "betaforge/report.hpp"

using namespace betaforge;

namespace {

int thread_budget() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("BETA_FORGE_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<int>(std::min<long>(v, hw));
    }
    return static_cast<int>(hw);
}

struct BetaChoice {
    QBeta beta;
    BetaSpecKind kind = BetaSpecKind::rational;
    BetaSpecInfo info;
};

// beta: decimal, rational p/q, or symbolic golden | G | beta_f | beta_c
// (with or without an explicit "(m)" suffix, which must match --m).
BetaChoice parse_beta(const std::string& spec, int m, const Rational& tol) {
    std::string name = spec;
    if (auto p = name.find('('); p != std::string::npos && name.back() == ')') {
        std::string arg = name.substr(p + 1, name.size() - p - 2);
        name = name.substr(0, p);
        if (std::to_string(m) != arg)
            throw CLI::ValidationError("--beta", "symbolic argument disagrees with --m");
    }
    BetaChoice c;
    c.info.spec = spec;
    if (name == "golden" || name == "G") {
        c.beta = golden_ratio(m);
        c.kind = BetaSpecKind::symbolic;
    } else if (name == "beta_f") {
        c.beta = beta_f(m);
        c.kind = BetaSpecKind::symbolic;
    } else if (name == "beta_c") {
        CertifiedValue v = beta_c(m, tol);
        Rational mid = Rational(v.value);
        c.beta = QBeta::constant(BetaContext::exact_rational(mid), mid);
        c.kind = BetaSpecKind::decimal;
        c.info.error_bound = v.error_bound;
    } else {
        Rational r = parse_rational(spec);
        c.beta = QBeta::constant(BetaContext::exact_rational(r), r);
        c.kind = spec.find('/') != std::string::npos ? BetaSpecKind::rational
                                                     : BetaSpecKind::decimal;
    }
    c.info.value = c.beta.to_double();
    return c;
}

QBeta parse_x(const std::string& spec, const ExpansionParams& params) {
    const QBeta& b = params.beta;
    const int k = params.k;
    if (spec == "center") return params.q(k) / (b - params.q(1));
    if (spec == "cycle2a") {
        if (params.m % 2 == 0) throw CLI::ValidationError("--x", "cycle2a requires odd m");
        return (params.q(k) * b + params.q(k + 1)) / (b * b - params.q(1));
    }
    if (spec == "cycle2b") {
        if (params.m % 2 == 0) throw CLI::ValidationError("--x", "cycle2b requires odd m");
        return (params.q(k + 1) * b + params.q(k)) / (b * b - params.q(1));
    }
    return params.q(parse_rational(spec));
}

std::pair<int, int> parse_m_range(const std::string& spec) {
    if (auto p = spec.find(".."); p != std::string::npos) {
        int lo = std::stoi(spec.substr(0, p));
        int hi = std::stoi(spec.substr(p + 2));
        if (lo < 1 || hi < lo || hi > 10000)
            throw CLI::ValidationError("--m", "range must lie within 1..10000");
        return {lo, hi};
    }
    int v = std::stoi(spec);
    if (v < 1 || v > 10000) throw CLI::ValidationError("--m", "must lie within 1..10000");
    return {v, v};
}

OutputFormat parse_format(const std::string& f) {
    if (f == "json") return OutputFormat::json;
    if (f == "csv") return OutputFormat::csv;
    if (f == "table") return OutputFormat::table;
    throw CLI::ValidationError("--format", "expected json, csv or table");
}

Json digits_json(const std::vector<int>& d) { return Json(d); }

int run_constants(const std::string& m_spec, double tol_d, OutputFormat format) {
    auto [m_lo, m_hi] = parse_m_range(m_spec);
    Rational tol(tol_d);

    std::vector<Json> rows(static_cast<size_t>(m_hi - m_lo + 1));
    int n_threads = std::min<int>(thread_budget(), static_cast<int>(rows.size()));
    std::vector<std::thread> pool;
    std::atomic<int> next{m_lo};
    auto worker = [&] {
        for (int m = next.fetch_add(1); m <= m_hi; m = next.fetch_add(1)) {
            ConstantTriple t = constant_triple(m, tol);
            auto [glo, ghi] = t.g.enclosure(tol);
            auto [flo, fhi] = t.bf.enclosure(tol);
            CertifiedValue g = CertifiedValue::from_bracket(glo, ghi);
            CertifiedValue f = CertifiedValue::from_bracket(flo, fhi);
            rows[static_cast<size_t>(m - m_lo)] =
                Json{{"m", m},
                     {"G", g.value},           {"G_err", g.error_bound},
                     {"beta_f", f.value},      {"beta_f_err", f.error_bound},
                     {"beta_c", t.bc.value},   {"beta_c_err", t.bc.error_bound}};
        }
    };
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    OutputRecord rec;
    rec.command = "constants";
    rec.m = m_lo;
    rec.beta.spec = "-";
    rec.payload = Json{{"rows", rows}};
    rec.provenance = "certified";
    rec.provenance_error = tol_d;
    std::cout << rec.render(format);
    return 0;
}

OutputRecord base_record(const std::string& command, int m, const BetaChoice& b) {
    OutputRecord rec;
    rec.command = command;
    rec.m = m;
    rec.beta = b.info;
    rec.provenance = b.info.error_bound > 0 ? "certified" : "exact";
    rec.provenance_error = b.info.error_bound;
    return rec;
}

int run_expand(int m, const BetaChoice& b, const std::string& x_spec, int depth,
               const std::string& mode, OutputFormat format) {
    ExpansionParams params(m, b.beta, b.kind);
    QBeta x = parse_x(x_spec, params);
    OutputRecord rec = base_record("expand", m, b);
    if (mode == "tree") {
        BranchTree tree = expand_tree(params, x, depth);
        std::vector<Json> rows;
        int idx = 0;
        for (const auto& w : tree.prefixes())
            rows.push_back(Json{{"index", idx++}, {"word", digits_json(w)}});
        rec.payload = Json{{"mode", mode},
                           {"x", x_spec},
                           {"depth", depth},
                           {"count", tree.leaf_count()},
                           {"rows", rows}};
    } else if (mode == "greedy" || mode == "quasi-greedy") {
        DigitSequence d = mode == "greedy" ? greedy_expansion(params, x, depth)
                                           : quasi_greedy_one(params, depth);
        rec.payload = Json{{"mode", mode},
                           {"x", mode == "greedy" ? x_spec : "1"},
                           {"depth", depth},
                           {"preperiod", digits_json(d.preperiod)},
                           {"period", digits_json(d.period)},
                           {"digits", digits_json(d.prefix(static_cast<size_t>(depth)))}};
    } else {
        throw CLI::ValidationError("--mode", "expected tree, greedy or quasi-greedy");
    }
    std::cout << rec.render(format);
    return 0;
}

int run_count(int m, const BetaChoice& b, const std::string& x_spec, int depth,
              OutputFormat format) {
    ExpansionParams params(m, b.beta, b.kind);
    QBeta x = parse_x(x_spec, params);
    CountResult res = count_prefixes(params, x, depth);
    OutputRecord rec = base_record("count", m, b);
    std::vector<Json> rows;
    for (size_t n = 0; n < res.per_level.size(); ++n) {
        Json row{{"n", n}, {"count", res.per_level[n].str()}};
        row["growth"] = n == 0 ? Json(nullptr) : Json(res.growth[n - 1]);
        rows.push_back(std::move(row));
    }
    rec.payload = Json{{"x", x_spec}, {"depth", depth}, {"rows", rows}};
    std::cout << rec.render(format);
    return 0;
}

int run_unique(int m, const BetaChoice& b, const std::string& x_spec, size_t max_steps,
               OutputFormat format) {
    ExpansionParams params(m, b.beta, b.kind);
    QBeta x = parse_x(x_spec, params);
    UniquenessCertificate cert = uniqueness_certificate(params, x, max_steps);
    OutputRecord rec = base_record("unique", m, b);
    Json payload{{"x", x_spec}, {"max_steps", max_steps}};
    switch (cert.verdict) {
        case Verdict::unique: payload["verdict"] = "unique"; break;
        case Verdict::not_unique: payload["verdict"] = "not_unique"; break;
        case Verdict::undecided: payload["verdict"] = "undecided"; break;
    }
    if (cert.reason)
        payload["reason"] = *cert.reason == UndecidedReason::boundary ? "boundary" : "horizon";
    if (cert.cycle_start) payload["cycle_start"] = *cert.cycle_start;
    if (cert.branch_step) payload["branch_step"] = *cert.branch_step;
    if (!cert.branch_digits.empty()) payload["branch_digits"] = digits_json(cert.branch_digits);
    payload["orbit_digits"] = digits_json(cert.orbit_digits);
    rec.payload = std::move(payload);
    std::cout << rec.render(format);
    return cert.verdict == Verdict::undecided ? 4 : 0;
}

int run_dimension(int m, const BetaChoice& b, const std::optional<std::string>& x_spec,
                  OutputFormat format) {
    ExpansionParams params(m, b.beta, b.kind);
    DoublingInterval di = certified_doubling_interval(params);
    OutputRecord rec = base_record("dimension", m, b);
    Json payload{{"n_beta", di.n_beta},
                 {"lower_bound", std::log2(2.0) / (di.n_beta * std::log2(double(m + 1)))},
                 {"interval", Json{{"L", di.interval.lo.to_double()},
                                   {"R", di.interval.hi.to_double()}}},
                 {"cover_pieces", di.certificate.size()}};
    if (x_spec) {
        QBeta x = parse_x(*x_spec, params);
        DimensionBound bound = dimension_lower_bound(params, x, di);
        payload["x"] = *x_spec;
        payload["j_x"] = bound.j_x;
        payload["empirical_lower"] = bound.empirical_lower;
    }
    rec.payload = std::move(payload);
    std::cout << rec.render(format);
    return 0;
}

int run_diagram(int m, const BetaChoice& b, const std::string& out_path) {
    ExpansionParams params(m, b.beta, b.kind);
    std::string svg = render_interval_diagram(params);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error("diagram: cannot open output file " + out_path);
    out << svg;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"beta-expansion toolkit: constant hierarchy, expansions, "
                 "uniqueness certificates, dimension bounds"};
    app.require_subcommand(1);

    std::string m_spec = "1", beta_spec, x_spec = "center", format = "json";
    std::string mode = "tree", out_path = "diagram.svg";
    std::optional<std::string> x_opt;
    int m = 1, depth = 8;
    double tol = 1e-10;
    size_t max_steps = 4096;

    auto* constants = app.add_subcommand("constants", "G(m), beta_f(m), beta_c(m) table");
    constants->add_option("--m", m_spec, "m or m range lo..hi")->required();
    constants->add_option("--tol", tol, "absolute tolerance");
    constants->add_option("--format", format, "json|csv|table");

    auto add_common = [&](CLI::App* cmd, bool with_x) {
        cmd->add_option("--m", m, "alphabet bound m")->required()->check(CLI::Range(1, 10000));
        cmd->add_option("--beta", beta_spec,
                        "decimal, p/q, golden, G(m), beta_f(m) or beta_c(m)")
            ->required();
        if (with_x) cmd->add_option("--x", x_spec, "rational, center, cycle2a, cycle2b");
        cmd->add_option("--tol", tol, "absolute tolerance");
        cmd->add_option("--format", format, "json|csv|table");
    };

    auto* expand = app.add_subcommand("expand", "enumerate prefixes / digit expansions");
    add_common(expand, true);
    expand->add_option("--depth", depth, "depth n")->check(CLI::Range(0, 64));
    expand->add_option("--mode", mode, "tree|greedy|quasi-greedy");

    auto* count = app.add_subcommand("count", "prefix counts and growth rates");
    add_common(count, true);
    count->add_option("--depth", depth, "depth n")->check(CLI::Range(0, 256));

    auto* unique = app.add_subcommand("unique", "uniqueness certificate for x");
    add_common(unique, true);
    unique->add_option("--max-steps", max_steps, "orbit horizon");

    auto* dimension = app.add_subcommand("dimension", "Hausdorff dimension lower bound");
    add_common(dimension, false);
    std::string x_dim;
    dimension->add_option("--x", x_dim, "rational, center, cycle2a, cycle2b");

    auto* diagram = app.add_subcommand("diagram", "SVG interval diagram");
    add_common(diagram, false);
    diagram->add_option("--out", out_path, "output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        OutputFormat fmt = parse_format(format);
        Rational rtol(tol);
        if (constants->parsed()) return run_constants(m_spec, tol, fmt);
        if (!x_dim.empty()) x_opt = x_dim;
        BetaChoice b = parse_beta(beta_spec, m, rtol);
        if (expand->parsed()) return run_expand(m, b, x_spec, depth, mode, fmt);
        if (count->parsed()) return run_count(m, b, x_spec, depth, fmt);
        if (unique->parsed()) return run_unique(m, b, x_spec, max_steps, fmt);
        if (dimension->parsed()) return run_dimension(m, b, x_opt, fmt);
        if (diagram->parsed()) return run_diagram(m, b, out_path);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
