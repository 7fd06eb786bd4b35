#include "betaforge/report.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

namespace betaforge {

Json OutputRecord::to_json() const {
    Json j;
    j["command"] = command;
    j["params"] = Json{{"m", m},
                       {"beta", Json{{"spec", beta.spec},
                                     {"value", beta.value},
                                     {"error_bound", beta.error_bound}}}};
    j["payload"] = payload;
    if (provenance == "certified")
        j["provenance"] = Json{{"certified", provenance_error}};
    else
        j["provenance"] = provenance;
    return j;
}

OutputRecord OutputRecord::from_json(const Json& j) {
    OutputRecord r;
    r.command = j.at("command").get<std::string>();
    r.m = j.at("params").at("m").get<int>();
    const Json& b = j.at("params").at("beta");
    r.beta.spec = b.at("spec").get<std::string>();
    r.beta.value = b.at("value").get<double>();
    r.beta.error_bound = b.at("error_bound").get<double>();
    r.payload = j.at("payload");
    if (j.at("provenance").is_object()) {
        r.provenance = "certified";
        r.provenance_error = j.at("provenance").at("certified").get<double>();
    } else {
        r.provenance = j.at("provenance").get<std::string>();
    }
    return r;
}

namespace {

std::string cell_to_string(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

// Rows for tabular rendering: payload["rows"] if present, else the payload
// itself as one row (flat commands only).
std::vector<Json> extract_rows(const Json& payload) {
    if (payload.is_object() && payload.contains("rows") && payload["rows"].is_array())
        return {payload["rows"].begin(), payload["rows"].end()};
    return {payload};
}

std::string render_csv(const OutputRecord& r) {
    std::ostringstream out;
    std::vector<Json> rows = extract_rows(r.payload);
    if (rows.empty() || !rows.front().is_object()) return "";
    auto escape = [](const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += "\"\"";
            else q += c;
        }
        return q + "\"";
    };
    bool first = true;
    for (auto it = rows.front().begin(); it != rows.front().end(); ++it) {
        if (!first) out << ',';
        out << escape(it.key());
        first = false;
    }
    out << '\n';
    for (const Json& row : rows) {
        first = true;
        for (auto it = row.begin(); it != row.end(); ++it) {
            if (!first) out << ',';
            out << escape(cell_to_string(it.value()));
            first = false;
        }
        out << '\n';
    }
    return out.str();
}

std::string render_table(const OutputRecord& r) {
    std::ostringstream out;
    out << "# " << r.command << "  (m=" << r.m << ", beta=" << r.beta.spec << ")\n";
    std::vector<Json> rows = extract_rows(r.payload);
    if (rows.empty() || !rows.front().is_object()) return out.str();

    std::vector<std::string> headers;
    for (auto it = rows.front().begin(); it != rows.front().end(); ++it)
        headers.push_back(it.key());
    std::vector<size_t> widths;
    for (const auto& h : headers) widths.push_back(h.size());
    std::vector<std::vector<std::string>> cells;
    for (const Json& row : rows) {
        std::vector<std::string> line;
        for (size_t c = 0; c < headers.size(); ++c) {
            std::string s = row.contains(headers[c]) ? cell_to_string(row[headers[c]]) : "";
            widths[c] = std::max(widths[c], s.size());
            line.push_back(std::move(s));
        }
        cells.push_back(std::move(line));
    }
    auto emit = [&](const std::vector<std::string>& line) {
        for (size_t c = 0; c < line.size(); ++c) {
            out << line[c] << std::string(widths[c] - line[c].size(), ' ');
            out << (c + 1 < line.size() ? "  " : "");
        }
        out << '\n';
    };
    emit(headers);
    std::vector<std::string> rule;
    for (size_t w : widths) rule.push_back(std::string(w, '-'));
    emit(rule);
    for (const auto& line : cells) emit(line);
    return out.str();
}

} // namespace

std::string OutputRecord::render(OutputFormat format) const {
    switch (format) {
        case OutputFormat::json: return to_json().dump(2) + "\n";
        case OutputFormat::csv: return render_csv(*this);
        case OutputFormat::table: return render_table(*this);
    }
    return "";
}

namespace {

// Fixed-point coordinate formatting keeps the SVG byte-deterministic.
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

struct Svg {
    std::ostringstream out;

    void line(double x1, double y1, double x2, double y2, const char* stroke,
              double width, bool dashed = false) {
        out << "<line x1=\"" << fmt(x1) << "\" y1=\"" << fmt(y1) << "\" x2=\"" << fmt(x2)
            << "\" y2=\"" << fmt(y2) << "\" stroke=\"" << stroke << "\" stroke-width=\""
            << fmt(width) << "\"";
        if (dashed) out << " stroke-dasharray=\"6,6\"";
        out << "/>\n";
    }
    void rect(double x, double y, double w, double h, const char* fill, const char* opacity) {
        out << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(w)
            << "\" height=\"" << fmt(h) << "\" fill=\"" << fill << "\" fill-opacity=\""
            << opacity << "\"/>\n";
    }
    void text(double x, double y, const std::string& s) {
        out << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(y)
            << "\" font-family=\"monospace\" font-size=\"18\">" << s << "</text>\n";
    }
};

} // namespace

std::string render_interval_diagram(const ExpansionParams& params) {
    IntervalCatalog cat = build_catalog(params);
    const double right = params.right_endpoint().to_double();

    // I_{beta,m} is normalized to [0,1] and drawn on the fixed canvas with an
    // 80px margin on every side.
    const double margin = 80.0, span = 840.0;
    auto X = [&](double v) { return margin + span * (v / right); };
    auto Y = [&](double v) { return 1000.0 - margin - span * (v / right); };

    Svg svg;
    svg.out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
            << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
               "viewBox=\"0 0 1000 1000\">\n"
            << "<rect x=\"0\" y=\"0\" width=\"1000\" height=\"1000\" fill=\"white\"/>\n";

    // frame
    svg.line(X(0), Y(0), X(right), Y(0), "black", 1.5);
    svg.line(X(0), Y(0), X(0), Y(right), "black", 1.5);
    svg.line(X(right), Y(0), X(right), Y(right), "black", 1.5);
    svg.line(X(0), Y(right), X(right), Y(right), "black", 1.5);

    // switch region band along the axis
    {
        double lo = cat.switch_region.lo.to_double(), hi = cat.switch_region.hi.to_double();
        svg.rect(X(lo), Y(right), X(hi) - X(lo), span, "#f2d27f", "0.35");
    }
    // choice intervals
    for (const Interval& c : cat.choice) {
        double lo = c.lo.to_double(), hi = c.hi.to_double();
        svg.rect(X(lo), Y(0) - 18.0, X(hi) - X(lo), 18.0, "#5b8def", "0.8");
    }
    // fixed-digit intervals (dotted markers)
    if (cat.fixed_interior) {
        for (const Interval& f : *cat.fixed_interior) {
            double lo = f.lo.to_double(), hi = f.hi.to_double();
            svg.line(X(lo), Y(0) - 28.0, X(hi), Y(0) - 28.0, "#c0392b", 3.0, true);
        }
    }
    // digit intervals and the graphs of the maps T_{beta,i}
    for (int i = 0; i <= params.m; ++i) {
        const Interval& d = cat.digit[static_cast<size_t>(i)];
        double lo = d.lo.to_double(), hi = d.hi.to_double();
        svg.line(X(lo), Y(0) + 10.0 + 8.0 * i, X(hi), Y(0) + 10.0 + 8.0 * i, "#444444", 2.0);
        svg.line(X(lo), Y(0), X(hi), Y(right), "black", 2.0);
        svg.text(X(lo) + 4.0, Y(right) - 8.0, "T" + std::to_string(i));
    }

    svg.out << "</svg>\n";
    return svg.out.str();
}

} // namespace betaforge
