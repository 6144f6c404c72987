#pragma once

// betti command-line front end. Exit codes: 0 success / member / pass,
// 1 checked negative, 2 usage, parse or precondition error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bettifan/bettifan.hpp"

namespace bettifan::cli {

enum ExitCode : int { ok = 0, negative = 1, usage = 2 };

struct Streams {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
    bool terminal = false;  // stdout is a tty: default to table output
};

namespace detail {

struct Options {
    std::string input;
    std::string format;
    std::vector<int> degrees;
    std::optional<int> n, low, high, s;
    bool count_only = false;
    bool normalized = false;
    std::string tableau;
    std::optional<int> truncate;
    unsigned jobs = 1;
};

inline std::string read_all(std::istream& in) {
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline std::string read_input(const std::string& path, std::istream& in) {
    if (path.empty() || path == "-") return read_all(in);
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + path);
    return read_all(file);
}

inline std::size_t enumeration_cap() {
    if (const char* env = std::getenv("BS_DECOMP_MAX_ENUM")) {
        try {
            const long long v = std::stoll(env);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
        throw std::runtime_error(std::string("BS_DECOMP_MAX_ENUM must be a positive integer, got '") + env + "'");
    }
    return 1'000'000;
}

inline std::string pad_left(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

/// Right-aligned grid with row labels.
inline std::string grid_text(const std::vector<std::string>& labels, const std::vector<std::vector<std::string>>& cells) {
    std::size_t label_width = 0, width = 1;
    for (const auto& l : labels) label_width = std::max(label_width, l.size());
    for (const auto& row : cells)
        for (const auto& c : row) width = std::max(width, c.size());
    std::string out;
    for (std::size_t r = 0; r < cells.size(); ++r) {
        out += "  " + pad_left(labels[r], label_width);
        for (const auto& c : cells[r]) out += " " + pad_left(c, width);
        out += "\n";
    }
    return out;
}

inline std::string functional_text(const Functional& f) {
    std::vector<std::string> labels;
    std::vector<std::vector<std::string>> cells;
    for (int r = 0; r < f.window().rows(); ++r) {
        labels.push_back(std::to_string(f.window().low + r) + ":");
        std::vector<std::string> row;
        for (const auto& c : f.grid()[r]) row.push_back(to_string(c));
        cells.push_back(std::move(row));
    }
    return grid_text(labels, cells);
}

inline std::string tableau_text(const Tableau& t) {
    std::vector<std::string> labels(t.rows());
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : t.entries()) {
        std::vector<std::string> r;
        for (int v : row) r.push_back(std::to_string(v));
        cells.push_back(std::move(r));
    }
    return grid_text(labels, cells);
}

inline std::string chain_text(const Chain& c) {
    std::string out;
    for (std::size_t k = 0; k < c.size(); ++k) out += (k ? " < " : "") + c[k].to_string();
    return out;
}

inline std::string series_text(const TruncatedSeries& s) {
    std::string out;
    for (std::size_t k = 0; k < s.coefficients.size(); ++k) out += (k ? " " : "") + to_string(s.coefficients[k]);
    return out;
}

inline std::string terms_text(const std::vector<DecompositionTerm>& terms) {
    std::string out;
    for (const auto& t : terms) out += "  " + to_string(t.coefficient) + " * pi" + t.degrees.to_string() + "\n";
    return out;
}

inline Json terms_json(const std::vector<DecompositionTerm>& terms) {
    Json j = Json::array();
    for (const auto& t : terms) j.push_back(Json::array({to_string(t.coefficient), to_json(t.degrees)}));
    return j;
}

class Runner {
public:
    Runner(const Options& o, Streams& io) : o_(o), io_(io) {}

    bool table() const { return o_.format.empty() ? io_.terminal : o_.format == "table"; }

    BettiDiagram diagram() const { return parse_diagram(read_input(o_.input, io_.in)); }

    Window window() const {
        if (!o_.n || !o_.high) throw CLI::ValidationError("--n and --N are required");
        return Window(*o_.n, o_.low.value_or(0), *o_.high, o_.s.value_or(0));
    }

    void json(const Json& j) const { io_.out << emit_json(j); }

    int pure() const {
        if (!o_.n) throw CLI::ValidationError("--n is required");
        const DegreeSequence d(o_.degrees);
        DiagramDocument doc{pure_diagram(d, *o_.n).diagram(), "pi" + d.to_string(), std::nullopt};
        if (o_.normalized) doc = {normalized_pure_diagram(d, *o_.n).diagram(), "pi_bar" + d.to_string(), std::nullopt};
        io_.out << emit_document(doc, table() ? DiagramFormat::table : DiagramFormat::json);
        return ok;
    }

    int decompose() const {
        const BettiDiagram b = diagram();
        try {
            const Decomposition dec = greedy_decompose(b);
            if (table())
                io_.out << "decomposition:\n" << terms_text(dec.terms);
            else
                json(to_json(dec));
            return ok;
        } catch (const NotInCone& e) {
            report_not_in_cone(b, e.partial(), to_string(e.reason()), e.what());
        } catch (const InvalidDiagram& e) {
            report_not_in_cone(b, Decomposition{b.ambient(), {}, b}, "NegativeEntry", e.what());
        }
        return negative;
    }

    int expand() const {
        const BettiDiagram b = diagram();
        if (o_.tableau.empty()) throw CLI::ValidationError("--tableau is required");
        std::ifstream file(o_.tableau, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open " + o_.tableau);
        const TableauDocument doc = parse_tableau_document(read_all(file));
        const Chain chain = chain_from_tableau(doc.tableau, doc.window);
        const std::vector<Rational> coords = expand_in_chain(b, chain);
        std::vector<DecompositionTerm> terms;
        bool nonnegative = true;
        for (std::size_t k = 0; k < coords.size(); ++k) {
            terms.push_back({coords[k], chain[k]});
            nonnegative = nonnegative && coords[k] >= 0;
        }
        if (table()) {
            io_.out << "window " << doc.window.to_string() << "\n" << terms_text(terms);
            io_.out << (nonnegative ? "all coordinates nonnegative\n" : "some coordinate is negative\n");
        } else {
            json(Json{{"window", to_json(doc.window)},
                      {"tableau", to_json(doc.tableau)},
                      {"coordinates", terms_json(terms)},
                      {"nonnegative", nonnegative}});
        }
        return ok;
    }

    int chains() const {
        const Window w = window();
        const std::size_t cap = enumeration_cap();
        if (o_.count_only) {
            std::size_t count = 0;
            for_each_tableau(w, [&](const Tableau&) { return ++count <= cap; });
            if (count > cap) throw WindowTooLarge("more than " + std::to_string(cap) + " maximal chains");
            io_.out << count << "\n";
            return ok;
        }
        const auto list = maximal_chains(w, cap);
        if (table()) {
            for (std::size_t k = 0; k < list.size(); ++k)
                io_.out << "chain " << k + 1 << ":\n"
                        << tableau_text(tableau_from_chain(list[k])) << "  " << chain_text(list[k]) << "\n";
            return ok;
        }
        Json j = Json::array();
        for (const auto& c : list) j.push_back(Json{{"tableau", to_json(tableau_from_chain(c))}, {"chain", to_json(c)}});
        json(j);
        return ok;
    }

    int facets() const {
        const auto list = boundary_facets(window(), enumeration_cap());
        if (!table()) {
            json(to_json(list));
            return ok;
        }
        for (const auto& f : list)
            io_.out << to_string(f.kind) << " removing " << f.removed.to_string() << " ("
                    << to_string(f.functional.functional_case()) << ")\n"
                    << functional_text(f.functional);
        io_.out << list.size() << " boundary facets\n";
        return ok;
    }

    int verify_fan() const {
        const ConvexityReport r = verify_fan_convexity(window(), 50'000'000, std::max(1u, o_.jobs));
        if (!table()) {
            json(to_json(r));
        } else if (r.pass) {
            io_.out << "pass: " << r.facets_checked << " boundary functionals nonnegative on " << r.diagrams_checked
                    << " pure diagrams\n";
        } else {
            const auto& c = *r.counterexample;
            io_.out << "fail: functional of " << c.facet.element.to_string() << " is " << to_string(c.value)
                    << " on pi" << c.diagram.to_string() << "\n";
        }
        return r.pass ? ok : negative;
    }

    int hilbert() const {
        const BettiDiagram b = diagram();
        const HilbertSeries h = hilbert_series(b);
        const int upto = o_.truncate.value_or(default_truncation(b));
        const TruncatedSeries s = expand_series(h, upto);
        std::optional<int> codim;
        std::optional<Rational> e;
        if (!b.is_zero()) {
            codim = codimension(b);
            e = multiplicity(b);
        }
        if (table()) {
            io_.out << "series: " << h.to_string() << "\n"
                    << "reduced: " << h.reduced().to_string() << "\n"
                    << "codimension: " << (codim ? std::to_string(*codim) : "undefined") << "\n"
                    << "multiplicity: " << (e ? to_string(*e) : "undefined") << "\n"
                    << "coefficients t^" << s.start << "..t^" << s.upto() << ": " << series_text(s) << "\n";
            return ok;
        }
        json(Json{{"series", to_json(h)},
                  {"reduced", to_json(h.reduced())},
                  {"codimension", codim ? Json(*codim) : Json(nullptr)},
                  {"multiplicity", e ? to_json(*e) : Json(nullptr)},
                  {"truncation", upto},
                  {"expansion", to_json(s)}});
        return ok;
    }

    int bounds() const {
        const BettiDiagram b = diagram();
        const MultiplicityBoundsReport r = multiplicity_bounds(b, o_.truncate.value_or(default_truncation(b)));
        if (!table()) {
            json(to_json(r));
        } else {
            auto list = [](const std::vector<int>& v) {
                std::string s;
                for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
                return "(" + s + ")";
            };
            io_.out << "minimal shifts: " << list(r.shifts.minimal) << "\n"
                    << "maximal shifts: " << list(r.shifts.maximal) << "\n"
                    << "codimension " << r.codim << ", projective dimension " << r.projective_dimension
                    << (r.pure ? ", pure" : "") << (r.cohen_macaulay ? ", Cohen-Macaulay" : "") << "\n";
            if (!r.applicable) {
                io_.out << "not applicable: " << r.reason << "\n";
            } else {
                auto verdict = [](const SeriesBound& s) {
                    return std::string(s.holds ? (s.equality ? "holds with equality" : "holds") : "VIOLATED");
                };
                io_.out << "lower series bound: " << verdict(r.lower) << "\n"
                        << "upper series bound: " << verdict(r.upper) << "\n"
                        << "multiplicity " << to_string(r.multiplicity) << " <= " << to_string(r.multiplicity_bound)
                        << ": " << (r.multiplicity_holds ? (r.multiplicity_equality ? "equality" : "holds") : "VIOLATED")
                        << "\n";
            }
        }
        if (!r.applicable) return usage;
        return r.all_hold() ? ok : negative;
    }

    int check_hk() const {
        const BettiDiagram b = diagram();
        const int s = o_.s.value_or(b.ambient());
        if (s < 0) throw CLI::ValidationError("--s must be >= 0");
        const auto residuals = hk_residuals(b, s);
        bool zero = true;
        for (const auto& r : residuals) zero = zero && r == 0;
        if (table()) {
            for (std::size_t m = 0; m < residuals.size(); ++m)
                io_.out << "m=" << m << ": " << to_string(residuals[m]) << "\n";
            io_.out << (zero ? "satisfied\n" : "violated\n");
        } else {
            Json list = Json::array();
            for (const auto& r : residuals) list.push_back(to_string(r));
            json(Json{{"s", s}, {"residuals", list}, {"satisfied", zero}});
        }
        return zero ? ok : negative;
    }

    int membership() const {
        const BettiDiagram b = diagram();
        Window w(b.ambient(), 0, 0, 0);
        if (!b.is_zero()) w = natural_window(b);
        if (o_.n && *o_.n != b.ambient()) throw CLI::ValidationError("--n does not match the diagram");
        if (o_.low || o_.high || o_.s)
            w = Window(b.ambient(), o_.low.value_or(w.low), o_.high.value_or(w.high), o_.s.value_or(w.min_codim));
        try {
            const MembershipResult r = membership_by_inequalities(b, w);
            if (!table()) {
                json(to_json(r));
            } else if (r.member) {
                io_.out << "member of the cone of " << w.to_string() << " (" << r.inequalities_checked
                        << " inequalities)\n";
            } else {
                const auto& c = *r.certificate;
                io_.out << "not a member of the cone of " << w.to_string() << ": " << to_string(c.kind)
                        << " functional of " << c.functional.anchor().element.to_string() << " gives "
                        << to_string(c.value) << "\n"
                        << functional_text(c.functional);
            }
            return r.member ? ok : negative;
        } catch (const WindowMismatch& e) {
            outside(w, e.what());
        } catch (const NotInSubspace& e) {
            outside(w, e.what());
        }
        return negative;
    }

private:
    void outside(const Window& w, const std::string& why) const {
        if (table())
            io_.out << "not a member of the cone of " << w.to_string() << ": " << why << "\n";
        else
            json(Json{{"member", false}, {"window", to_json(w)}, {"reason", why}, {"certificate", nullptr}});
    }

    void report_not_in_cone(const BettiDiagram& b, const Decomposition& partial, const std::string& reason,
                            const std::string& detail) const {
        // A violated boundary inequality, when one exists, certifies non-membership.
        Json certificate = nullptr;
        std::optional<MembershipResult> m;
        try {
            if (!b.is_zero() && b.is_nonnegative()) m = membership_by_inequalities(b);
        } catch (const Error&) {
        }
        if (m && m->certificate)
            certificate = Json{{"kind", to_string(m->certificate->kind)},
                               {"value", to_json(m->certificate->value)},
                               {"functional", to_json(m->certificate->functional)}};
        if (table()) {
            io_.out << "not in the cone (" << reason << "): " << detail << "\npartial decomposition:\n"
                    << terms_text(partial.terms) << "residual:\n"
                    << emit_table(partial.residual);
            if (m && m->certificate)
                io_.out << "violated " << to_string(m->certificate->kind) << " inequality, value "
                        << to_string(m->certificate->value) << "\n"
                        << functional_text(m->certificate->functional);
            return;
        }
        json(Json{{"in_cone", false},
                  {"reason", reason},
                  {"detail", detail},
                  {"partial", terms_json(partial.terms)},
                  {"residual", to_json(partial.residual)},
                  {"certificate", certificate}});
    }

    const Options& o_;
    Streams& io_;
};

}  // namespace detail

inline int run(int argc, const char* const* argv, Streams io) {
    detail::Options o;
    CLI::App app{"Exact toolkit for the cone of Betti diagrams: pure diagrams, chains, facets, decompositions, Hilbert bounds",
                 "betti"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "Output format (default: table on a terminal, json otherwise)")
            ->check(CLI::IsMember({"json", "table"}));
    };
    auto add_input = [&](CLI::App* sub) {
        sub->add_option("input", o.input, "Diagram file, json or table (default: stdin)");
    };
    auto add_window = [&](CLI::App* sub, bool required) {
        auto* n = sub->add_option("--n", o.n, "Ambient dimension");
        sub->add_option("--M", o.low, "Lowest row (default 0)");
        auto* high = sub->add_option("--N", o.high, "Highest row");
        sub->add_option("--s", o.s, "Minimal codimension (default 0)");
        if (required) {
            n->required();
            high->required();
        }
    };

    auto* pure = app.add_subcommand("pure", "Pure diagram of a degree sequence");
    pure->add_option("--degrees", o.degrees, "Degree sequence, e.g. 0,2,3,5")->delimiter(',')->required();
    pure->add_option("--n", o.n, "Ambient dimension")->required();
    pure->add_flag("--normalized", o.normalized, "Scale so the (0,0) entry is 1");
    add_format(pure);

    auto* decompose = app.add_subcommand("decompose", "Greedy decomposition into a chain of pure diagrams");
    add_input(decompose);
    add_format(decompose);

    auto* expand = app.add_subcommand("expand", "Coordinates in the basis of a maximal chain");
    add_input(expand);
    expand->add_option("--tableau", o.tableau, "Tableau document naming the chain")->required();
    add_format(expand);

    auto* chains = app.add_subcommand("chains", "Enumerate maximal chains of a window");
    add_window(chains, true);
    chains->add_flag("--count-only", o.count_only, "Print only the number of maximal chains");
    add_format(chains);

    auto* facets = app.add_subcommand("facets", "Boundary facets with kinds and functionals");
    add_window(facets, true);
    add_format(facets);

    auto* verify = app.add_subcommand("verify-fan", "Check every boundary functional on every pure diagram");
    add_window(verify, true);
    verify->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
    add_format(verify);

    auto* hilbert = app.add_subcommand("hilbert", "Hilbert series, codimension and multiplicity");
    add_input(hilbert);
    hilbert->add_option("--truncate", o.truncate, "Last degree of the expansion")->check(CLI::NonNegativeNumber);
    add_format(hilbert);

    auto* bounds = app.add_subcommand("bounds", "Hilbert series and multiplicity bounds from extremal shifts");
    add_input(bounds);
    bounds->add_option("--truncate", o.truncate, "Last degree compared")->check(CLI::NonNegativeNumber);
    add_format(bounds);

    auto* hk = app.add_subcommand("check-hk", "Residuals of the first s Herzog-Kuehl equations");
    add_input(hk);
    hk->add_option("--s", o.s, "Number of equations (default n)");
    add_format(hk);

    auto* membership = app.add_subcommand("membership", "Cone membership by boundary inequalities");
    add_input(membership);
    add_window(membership, false);
    add_format(membership);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, io.out, io.err);
        if (code == 0) return ok;
        io.err << app.help();
        return usage;
    }

    detail::Runner runner(o, io);
    try {
        if (pure->parsed()) return runner.pure();
        if (decompose->parsed()) return runner.decompose();
        if (expand->parsed()) return runner.expand();
        if (chains->parsed()) return runner.chains();
        if (facets->parsed()) return runner.facets();
        if (verify->parsed()) return runner.verify_fan();
        if (hilbert->parsed()) return runner.hilbert();
        if (bounds->parsed()) return runner.bounds();
        if (hk->parsed()) return runner.check_hk();
        if (membership->parsed()) return runner.membership();
    } catch (const CLI::Error& e) {
        io.err << "betti: " << e.what() << "\n" << app.help();
        return usage;
    } catch (const std::exception& e) {
        io.err << "betti: " << e.what() << "\n";
        return usage;
    }
    io.err << app.help();
    return usage;
}

}  // namespace bettifan::cli
