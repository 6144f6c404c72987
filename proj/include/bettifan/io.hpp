#pragma once

// Text formats: JSON documents and the row-labelled table layout for
// diagrams, plus JSON views of every result type. Rationals always travel
// as strings.

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "bettifan/decompose.hpp"
#include "bettifan/diagram.hpp"
#include "bettifan/errors.hpp"
#include "bettifan/functionals.hpp"
#include "bettifan/hilbert.hpp"
#include "bettifan/poset.hpp"

namespace bettifan {

using Json = nlohmann::ordered_json;

enum class DiagramFormat { json, table };

/// JSON if the first non-blank character opens an object, table otherwise.
inline DiagramFormat detect_format(std::string_view text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '{' ? DiagramFormat::json : DiagramFormat::table;
    }
    return DiagramFormat::table;
}

struct DiagramDocument {
    BettiDiagram diagram;
    std::optional<std::string> name;
    std::optional<std::string> source;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
    std::size_t line = 1, column = 1;
    for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

inline Json parse_json_text(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError(e.what(), line, column);
    }
}

[[noreturn]] inline void schema_error(const std::string& what) { throw ParseError(what, 1, 1); }

inline int json_int(const Json& j, const char* key) {
    if (!j.contains(key)) schema_error(std::string("missing field '") + key + "'");
    const Json& v = j.at(key);
    if (!v.is_number_integer()) schema_error(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

inline Rational json_rational(const Json& v) {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (!v.is_string()) schema_error("values must be rational strings like \"3\" or \"1/6\"");
    const auto q = try_parse_rational(v.get<std::string>());
    if (!q) schema_error("not a rational literal: \"" + v.get<std::string>() + "\"");
    return *q;
}

struct Token {
    std::string text;
    std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line, std::size_t first_column) {
    std::vector<Token> out;
    std::size_t k = 0;
    while (k < line.size()) {
        while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k]))) ++k;
        if (k == line.size()) break;
        const std::size_t begin = k;
        while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k]))) ++k;
        out.push_back({std::string(line.substr(begin, k - begin)), first_column + begin});
    }
    return out;
}

inline bool is_zero_cell(const std::string& token) {
    return token == "-" || token == "." || token == "−" || token == "–";
}

inline std::optional<int> parse_int(std::string_view text) {
    const auto q = try_parse_rational(text);
    if (!q || !is_integer(*q) || !q->get_num().fits_sint_p()) return std::nullopt;
    return static_cast<int>(q->get_num().get_si());
}

inline DiagramDocument parse_table(std::string_view text) {
    struct Row {
        int label;
        std::size_t line;
        std::vector<Token> cells;
    };
    std::optional<int> ambient;
    std::optional<std::pair<std::size_t, std::vector<Token>>> totals;
    std::vector<Row> rows;
    std::set<int> labels;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string_view::npos || line[first] == '#') {
            if (end == text.size()) break;
            continue;
        }
        const auto sep = line.find_first_of(":=");
        if (sep == std::string_view::npos) throw ParseError("expected 'label:' at start of line", line_no, first + 1);
        std::string label(line.substr(first, sep - first));
        while (!label.empty() && std::isspace(static_cast<unsigned char>(label.back()))) label.pop_back();
        auto tokens = tokenize(line.substr(sep + 1), sep + 2);

        if (label == "n") {
            if (tokens.size() != 1) throw ParseError("expected 'n = <integer>'", line_no, sep + 2);
            const auto v = parse_int(tokens[0].text);
            if (!v || *v < 0) throw ParseError("ambient must be a nonnegative integer", line_no, tokens[0].column);
            ambient = *v;
        } else if (label == "total") {
            totals = std::make_pair(line_no, std::move(tokens));
        } else {
            const auto v = line[sep] == ':' ? parse_int(label) : std::nullopt;
            if (!v) throw ParseError("row label must be an integer followed by ':'", line_no, first + 1);
            if (!labels.insert(*v).second) throw DuplicateEntry("row " + label + " appears twice");
            rows.push_back({*v, line_no, std::move(tokens)});
        }
        if (end == text.size()) break;
    }

    std::size_t width = rows.empty() ? 0 : rows.front().cells.size();
    for (const auto& row : rows)
        if (row.cells.size() != width)
            throw ParseError("row has " + std::to_string(row.cells.size()) + " cells, expected " +
                                 std::to_string(width),
                             row.line, row.cells.empty() ? 1 : row.cells.back().column);
    if (totals && rows.empty()) width = totals->second.size();
    const int n = ambient ? *ambient : std::max(0, static_cast<int>(width) - 1);
    if (static_cast<int>(width) > n + 1)
        throw IndexError("table has " + std::to_string(width) + " columns but n = " + std::to_string(n));

    DiagramDocument doc{BettiDiagram(n), std::nullopt, std::nullopt};
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.cells.size(); ++i) {
            const Token& cell = row.cells[i];
            if (is_zero_cell(cell.text)) continue;
            const auto q = try_parse_rational(cell.text);
            if (!q) throw ParseError("not a rational literal: '" + cell.text + "'", row.line, cell.column);
            doc.diagram.set(static_cast<int>(i), row.label + static_cast<int>(i), *q);
        }
    if (totals) {
        const auto& [line, tokens] = *totals;
        if (!rows.empty() && tokens.size() != width)
            throw ParseError("total line has " + std::to_string(tokens.size()) + " entries, expected " +
                                 std::to_string(width),
                             line, 1);
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            const auto q = is_zero_cell(tokens[i].text) ? std::optional<Rational>(0) : try_parse_rational(tokens[i].text);
            if (!q) throw ParseError("not a rational literal: '" + tokens[i].text + "'", line, tokens[i].column);
            if (*q != doc.diagram.column_sum(static_cast<int>(i)))
                throw ParseError("total " + tokens[i].text + " does not match column " + std::to_string(i), line,
                                 tokens[i].column);
        }
    }
    return doc;
}

inline DiagramDocument parse_json_document(std::string_view text) {
    const Json j = parse_json_text(text);
    if (!j.is_object()) schema_error("diagram document must be a JSON object");
    const int n = json_int(j, "n");
    if (n < 0) schema_error("'n' must be >= 0");
    DiagramDocument doc{BettiDiagram(n), std::nullopt, std::nullopt};
    if (!j.contains("entries") || !j.at("entries").is_array()) schema_error("missing array 'entries'");
    std::set<std::pair<int, int>> seen;
    for (const Json& e : j.at("entries")) {
        if (!e.is_object()) schema_error("entries must be objects {i, j, value}");
        const int i = json_int(e, "i");
        const int deg = json_int(e, "j");
        if (!e.contains("value")) schema_error("entry without 'value'");
        const Rational v = json_rational(e.at("value"));
        if (i < 0 || i > n)
            throw IndexError("entry i = " + std::to_string(i) + " outside [0, " + std::to_string(n) + "]");
        if (!seen.insert({i, deg}).second)
            throw DuplicateEntry("entry (" + std::to_string(i) + ", " + std::to_string(deg) + ") appears twice");
        doc.diagram.set(i, deg, v);
    }
    if (j.contains("name")) {
        if (!j.at("name").is_string()) schema_error("'name' must be a string");
        doc.name = j.at("name").get<std::string>();
    }
    if (j.contains("source")) {
        if (!j.at("source").is_string()) schema_error("'source' must be a string");
        doc.source = j.at("source").get<std::string>();
    }
    return doc;
}

inline std::string pad_left(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

}  // namespace detail

inline DiagramDocument parse_document(std::string_view text, DiagramFormat format) {
    return format == DiagramFormat::json ? detail::parse_json_document(text) : detail::parse_table(text);
}

inline DiagramDocument parse_document(std::string_view text) { return parse_document(text, detect_format(text)); }

inline BettiDiagram parse_diagram(std::string_view text, DiagramFormat format) {
    return parse_document(text, format).diagram;
}

inline BettiDiagram parse_diagram(std::string_view text) { return parse_document(text).diagram; }

inline Json to_json(const Rational& q) { return to_string(q); }

inline Json to_json(const Integer& z) {
    if (z.fits_slong_p()) return Json(z.get_si());
    return Json(to_string(z));
}

inline Json to_json(const DegreeSequence& d) { return Json(d.values()); }

inline Json to_json(const BettiDiagram& b) {
    Json j;
    j["n"] = b.ambient();
    j["entries"] = Json::array();
    for (const auto& [key, value] : b.entries())
        j["entries"].push_back(Json{{"i", key.first}, {"j", key.second}, {"value", to_string(value)}});
    return j;
}

inline Json to_json(const DiagramDocument& doc) {
    Json j = to_json(doc.diagram);
    if (doc.name) j["name"] = *doc.name;
    if (doc.source) j["source"] = *doc.source;
    return j;
}

namespace detail {

inline bool has_object(const Json& j) {
    if (j.is_object()) return true;
    if (j.is_array())
        for (const auto& e : j)
            if (has_object(e)) return true;
    return false;
}

inline void write_json(const Json& j, int indent, std::string& out) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    if (!has_object(j) || j.empty()) {
        out += j.dump();
        return;
    }
    if (j.is_array()) {
        out += "[\n";
        for (std::size_t k = 0; k < j.size(); ++k) {
            out += inner;
            write_json(j[k], indent + 1, out);
            out += k + 1 < j.size() ? ",\n" : "\n";
        }
        out += pad + "]";
        return;
    }
    out += "{\n";
    std::size_t k = 0;
    for (const auto& [key, value] : j.items()) {
        out += inner + Json(key).dump() + ": ";
        write_json(value, indent + 1, out);
        out += ++k < j.size() ? ",\n" : "\n";
    }
    out += pad + "}";
}

}  // namespace detail

/// Objects one key per line, arrays without objects inline, trailing newline.
inline std::string emit_json(const Json& j) {
    std::string out;
    detail::write_json(j, 0, out);
    return out + "\n";
}

/// Rows cover the minimal window; every column 0..n is printed.
inline std::string emit_table(const BettiDiagram& b) {
    const int columns = b.ambient() + 1;
    std::vector<std::string> totals(columns);
    for (int i = 0; i < columns; ++i) totals[i] = to_string(b.column_sum(i));

    std::vector<std::pair<std::string, std::vector<std::string>>> lines;
    lines.emplace_back("total:", totals);
    if (!b.is_zero()) {
        const RowRange rows = window_of(b);
        for (int r = rows.low; r <= rows.high; ++r) {
            std::vector<std::string> cells(columns);
            for (int i = 0; i < columns; ++i) {
                const Rational v = b.at(i, r + i);
                cells[i] = v == 0 ? "-" : to_string(v);
            }
            lines.emplace_back(std::to_string(r) + ":", std::move(cells));
        }
    }
    std::size_t label_width = 0;
    std::vector<std::size_t> widths(columns, 1);
    for (const auto& [label, cells] : lines) {
        label_width = std::max(label_width, label.size());
        for (int i = 0; i < columns; ++i) widths[i] = std::max(widths[i], cells[i].size());
    }
    std::string out = "n = " + std::to_string(b.ambient()) + "\n";
    for (const auto& [label, cells] : lines) {
        out += detail::pad_left(label, label_width);
        for (int i = 0; i < columns; ++i) out += " " + detail::pad_left(cells[i], widths[i]);
        out += "\n";
    }
    return out;
}

inline std::string emit_document(const DiagramDocument& doc, DiagramFormat format) {
    if (format == DiagramFormat::json) return emit_json(to_json(doc));
    std::string header;
    if (doc.name) header += "# name: " + *doc.name + "\n";
    if (doc.source) header += "# source: " + *doc.source + "\n";
    return header + emit_table(doc.diagram);
}

inline std::string emit_diagram(const BettiDiagram& b, DiagramFormat format) {
    return emit_document(DiagramDocument{b, std::nullopt, std::nullopt}, format);
}

inline Json to_json(const Window& w) {
    return Json{{"n", w.ambient}, {"M", w.low}, {"N", w.high}, {"s", w.min_codim}};
}

inline Json to_json(const Tableau& t) { return Json(t.entries()); }

inline Json to_json(const Chain& c) {
    Json j = Json::array();
    for (const auto& d : c.elements()) j.push_back(to_json(d));
    return j;
}

inline Json to_json(const CoverTriple& t) {
    return Json{{"below", t.below ? to_json(*t.below) : Json(nullptr)},
                {"element", to_json(t.element)},
                {"above", t.above ? to_json(*t.above) : Json(nullptr)}};
}

inline Json to_json(const Functional& f) {
    Json grid = Json::array();
    for (const auto& row : f.grid()) {
        Json r = Json::array();
        for (const auto& c : row) r.push_back(to_json(c));
        grid.push_back(std::move(r));
    }
    Json rows = Json::array();
    for (int r = f.window().low; r <= f.window().high; ++r) rows.push_back(r);
    return Json{{"window", to_json(f.window())},
                {"case", to_string(f.functional_case())},
                {"anchor", to_json(f.anchor())},
                {"rows", std::move(rows)},
                {"matrix", std::move(grid)}};
}

inline Json to_json(const Decomposition& d) {
    Json terms = Json::array();
    for (const auto& t : d.terms) terms.push_back(Json::array({to_string(t.coefficient), to_json(t.degrees)}));
    return Json{{"n", d.ambient},
                {"terms", std::move(terms)},
                {"residual", d.has_residual() ? to_json(d.residual) : Json(nullptr)}};
}

inline std::string emit_decomposition(const Decomposition& d) { return emit_json(to_json(d)); }

inline Json to_json(const BoundaryFacet& f) {
    return Json{{"kind", to_string(f.kind)},
                {"removed", to_json(f.removed)},
                {"face", to_json(f.face)},
                {"functional", to_json(f.functional)}};
}

inline Json to_json(const std::vector<BoundaryFacet>& facets) {
    Json j = Json::array();
    for (const auto& f : facets) j.push_back(to_json(f));
    return j;
}

inline Json to_json(const ConvexityReport& r) {
    Json j{{"pass", r.pass}, {"facets_checked", r.facets_checked}, {"diagrams_checked", r.diagrams_checked}};
    if (r.counterexample)
        j["counterexample"] = Json{{"facet", to_json(r.counterexample->facet)},
                                   {"diagram", to_json(r.counterexample->diagram)},
                                   {"value", to_json(r.counterexample->value)}};
    else
        j["counterexample"] = nullptr;
    return j;
}

inline Json to_json(const MembershipResult& r) {
    Json j{{"member", r.member}, {"window", to_json(r.window)}, {"inequalities_checked", r.inequalities_checked}};
    if (r.certificate)
        j["certificate"] = Json{{"kind", to_string(r.certificate->kind)},
                                {"value", to_json(r.certificate->value)},
                                {"functional", to_json(r.certificate->functional)}};
    else
        j["certificate"] = nullptr;
    return j;
}

inline Json to_json(const LaurentPolynomial& p) {
    Json j = Json::array();
    for (const auto& [e, c] : p.terms()) j.push_back(Json::array({e, to_string(c)}));
    return j;
}

inline Json to_json(const TruncatedSeries& s) {
    Json coefficients = Json::array();
    for (const auto& c : s.coefficients) coefficients.push_back(to_string(c));
    return Json{{"start", s.start}, {"coefficients", std::move(coefficients)}};
}

inline Json to_json(const HilbertSeries& h) {
    return Json{{"numerator", to_json(h.numerator)}, {"denominator_exponent", h.denominator_exponent}};
}

inline Json to_json(const SeriesBound& b) {
    return Json{{"holds", b.holds}, {"equality", b.equality}, {"slack", to_json(b.slack)}};
}

inline Json to_json(const MultiplicityBoundsReport& r) {
    Json j{{"applicable", r.applicable}};
    if (!r.applicable) j["reason"] = r.reason;
    j["minimal_shifts"] = r.shifts.minimal;
    j["maximal_shifts"] = r.shifts.maximal;
    j["beta0"] = to_string(r.beta0);
    j["codimension"] = r.codim;
    j["projective_dimension"] = r.projective_dimension;
    j["pure"] = r.pure;
    j["cohen_macaulay"] = r.cohen_macaulay;
    if (r.applicable) {
        j["truncation"] = r.truncation;
        j["lower"] = to_json(r.lower);
        j["upper"] = to_json(r.upper);
        j["multiplicity"] = Json{{"value", to_string(r.multiplicity)},
                                 {"bound", to_string(r.multiplicity_bound)},
                                 {"slack", to_string(r.multiplicity_slack)},
                                 {"holds", r.multiplicity_holds},
                                 {"equality", r.multiplicity_equality}};
    }
    return j;
}

inline Json to_json(const MonotonicityReport& r) {
    Json pairs = Json::array();
    for (const auto& p : r.pairs)
        pairs.push_back(Json{{"lower", to_json(p.lower)},
                             {"upper", to_json(p.upper)},
                             {"nonnegative", p.nonnegative},
                             {"strict", p.strict},
                             {"difference", to_json(p.difference)}});
    return Json{{"pass", r.pass}, {"truncation", r.truncation}, {"pairs", std::move(pairs)}};
}

/// Generic report emitter: deterministic key order, trailing newline.
template <class T>
std::string emit_report(const T& value) {
    return emit_json(to_json(value));
}

struct TableauDocument {
    Window window;
    Tableau tableau;
};

/// {"M": 0, "s": 0, "tableau": [[...], ...]}; "n" and "N" are optional and
/// must agree with the tableau's shape when present.
inline TableauDocument parse_tableau_document(std::string_view text) {
    const Json j = detail::parse_json_text(text);
    if (!j.is_object()) detail::schema_error("tableau document must be a JSON object");
    if (!j.contains("tableau") || !j.at("tableau").is_array()) detail::schema_error("missing array 'tableau'");
    std::vector<std::vector<int>> rows;
    for (const Json& row : j.at("tableau")) {
        if (!row.is_array()) detail::schema_error("tableau rows must be arrays");
        std::vector<int> r;
        for (const Json& v : row) {
            if (!v.is_number_integer()) detail::schema_error("tableau entries must be integers");
            r.push_back(v.get<int>());
        }
        rows.push_back(std::move(r));
    }
    Tableau t(std::move(rows));
    const int low = j.contains("M") ? detail::json_int(j, "M") : 0;
    const int s = j.contains("s") ? detail::json_int(j, "s") : 0;
    const int n = t.columns() - 1;
    const int high = low + t.rows() - 1;
    if (j.contains("n") && detail::json_int(j, "n") != n) detail::schema_error("'n' does not match tableau width");
    if (j.contains("N") && detail::json_int(j, "N") != high) detail::schema_error("'N' does not match tableau height");
    Window w(n, low, high, s);
    t.validate(w);
    return {w, std::move(t)};
}

}  // namespace bettifan
