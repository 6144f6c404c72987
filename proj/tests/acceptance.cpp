// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <iostream>

#include "cli.hpp"
#include "support.hpp"

using namespace bettifan;
using namespace testing_support;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back(what);
        }
    }
};

std::string grid_text(const std::vector<std::vector<long>>& g) {
    std::string s;
    for (const auto& row : g) {
        s += "[";
        for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + std::to_string(row[i]);
        s += "]";
    }
    return s;
}

std::vector<std::vector<long>> grid_of(const Functional& f) {
    std::vector<std::vector<long>> out;
    for (const auto& row : f.grid()) {
        std::vector<long> r;
        for (const auto& c : row) r.push_back(c.get_si());
        out.push_back(r);
    }
    return out;
}

Outcome decomposition_reproduced() {
    Outcome o;
    const auto start = Clock::now();
    for (const char* name : {"example_quotient.json", "example_quotient.table"}) {
        const BettiDiagram b = parse_diagram(read_fixture(name));
        const Decomposition dec = greedy_decompose(b);
        const std::vector<std::pair<Rational, std::vector<int>>> expected{
            {6, {0, 2, 3, 5}}, {12, {0, 2, 4, 5}}, {2, {0, 3, 4}}, {1, {0, 3}}};
        o.require(dec.terms.size() == expected.size(), std::string(name) + ": wrong number of terms");
        for (std::size_t k = 0; k < std::min(dec.terms.size(), expected.size()); ++k)
            o.require(dec.terms[k].coefficient == expected[k].first && dec.terms[k].degrees.values() == expected[k].second,
                      std::string(name) + ": term " + std::to_string(k + 1) + " is " +
                          to_string(dec.terms[k].coefficient) + "*pi" + dec.terms[k].degrees.to_string());
        o.require(!dec.has_residual(), std::string(name) + ": nonzero residual");
        o.require(dec.reconstruct() == b, std::string(name) + ": reconstruction differs");
    }
    // through the command line as well
    const std::string path = fixture_path("example_quotient.table");
    const char* argv[] = {"betti", "decompose", path.c_str(), "--format", "json"};
    std::istringstream in;
    std::ostringstream out, err;
    const int code = cli::run(5, argv, cli::Streams{in, out, err, false});
    o.require(code == 0, "decompose exited " + std::to_string(code) + ": " + err.str());
    if (code == 0) {
        const Json j = Json::parse(out.str());
        o.require(j.at("terms").dump() == R"([["6",[0,2,3,5]],["12",[0,2,4,5]],["2",[0,3,4]],["1",[0,3]]])",
                  "decompose printed " + j.at("terms").dump());
        o.require(j.at("residual").is_null(), "decompose printed a residual");
    }
    const double t = seconds_since(start);
    o.require(t < 1.0, "took " + std::to_string(t) + " s");
    return o;
}

Outcome pure_summands_match() {
    Outcome o;
    const Json doc = Json::parse(read_fixture("pure_summands.json"));
    const int n = doc.at("n");
    for (const auto& s : doc.at("summands")) {
        const DegreeSequence d(s.at("degrees").get<std::vector<int>>());
        const BettiDiagram computed = pure_diagram(d, n).diagram();
        const BettiDiagram printed = parse_diagram(Json{{"n", n}, {"entries", s.at("entries")}}.dump());
        o.require(computed == printed, "pi" + d.to_string() + " differs: " + emit_table(computed));
    }
    return o;
}

Outcome functional_goldens() {
    Outcome o;
    const Json doc = Json::parse(read_fixture("functionals_n3_M0_N2.json"));
    const Window w(doc.at("n"), doc.at("M"), doc.at("N"), doc.at("s"));
    const Chain chain = chain_from_tableau(Tableau(doc.at("tableau").get<std::vector<std::vector<int>>>()), w);
    for (const auto& m : doc.at("matrices")) {
        const int index = m.at("index");
        const auto printed = m.at("grid").get<std::vector<std::vector<long>>>();
        const auto computed = grid_of(coefficient_functional(chain, static_cast<std::size_t>(index - 1)));
        o.require(computed == printed, "matrix " + std::to_string(index) + ": computed " + grid_text(computed) +
                                           " vs printed " + grid_text(printed));
    }
    const BettiDiagram b = parse_diagram(read_fixture("example_quotient.json"));
    for (const auto& c : doc.at("example_coefficients")) {
        const int index = c.at("index");
        const Rational value = evaluate(coefficient_functional(chain, static_cast<std::size_t>(index - 1)), b);
        o.require(value == parse_rational(c.at("value").get<std::string>()),
                  "matrix " + std::to_string(index) + " gives " + to_string(value));
    }
    return o;
}

Outcome chain_combinatorics() {
    Outcome o;
    const Json doc = Json::parse(read_fixture("tableaux_n2_M0_N1.json"));
    std::set<std::vector<std::vector<int>>> expected, got;
    for (const auto& t : doc.at("tableaux")) expected.insert(t.get<std::vector<std::vector<int>>>());
    const auto chains = maximal_chains(Window(2, 0, 1, 0));
    for (const auto& c : chains) got.insert(tableau_from_chain(c).entries());
    o.require(chains.size() == 5, std::to_string(chains.size()) + " chains");
    o.require(got == expected, "numberings differ");
    o.require(chain_length(Window(3, 0, 2, 0)) == 12, "chain length " + std::to_string(chain_length(Window(3, 0, 2, 0))));
    return o;
}

Outcome facet_classification() {
    Outcome o;
    const Json doc = Json::parse(read_fixture("functionals_n3_M0_N2.json"));
    const Window w(doc.at("n"), doc.at("M"), doc.at("N"), doc.at("s"));
    const Chain chain = chain_from_tableau(Tableau(doc.at("tableau").get<std::vector<std::vector<int>>>()), w);
    for (const auto& m : doc.at("matrices")) {
        const int index = m.at("index");
        const std::string kind = to_string(classify_facet(chain.without(static_cast<std::size_t>(index - 1))));
        o.require(kind == m.at("facet").get<std::string>(), "matrix " + std::to_string(index) + " classified " + kind);
    }
    return o;
}

Outcome convexity() {
    Outcome o;
    const auto start = Clock::now();
    std::size_t windows = 0;
    for (int low : {-1, 0, 1})
        for (const Window& w : small_windows(3, 2, low)) {
            const ConvexityReport r = verify_fan_convexity(w);
            ++windows;
            if (!r.pass)
                o.require(false, w.to_string() + ": functional of " + r.counterexample->facet.element.to_string() +
                                     " is " + to_string(r.counterexample->value) + " on pi" +
                                     r.counterexample->diagram.to_string());
        }
    const double t = seconds_since(start);
    o.require(t < 60.0, "took " + std::to_string(t) + " s");
    o.notes.insert(o.notes.begin(), std::to_string(windows) + " windows");
    return o;
}

Outcome duality_and_integrality() {
    Outcome o;
    // Kronecker delta on every maximal chain
    std::size_t checks = 0;
    for (const Window& w : small_windows(3, 2))
        for (const auto& chain : maximal_chains(w))
            for (std::size_t k = 0; k < chain.size(); ++k) {
                const Functional f = coefficient_functional(chain, k);
                for (std::size_t l = 0; l < chain.size(); ++l) {
                    ++checks;
                    if (evaluate(f, chain[l]) != (k == l ? 1 : 0))
                        o.require(false, "duality fails in " + w.to_string() + " at " + chain[k].to_string());
                }
            }

    std::vector<Window> windows;
    for (int low : {-1, 0, 2})
        for (const Window& w : small_windows(3, 2, low)) windows.push_back(w);
    std::mt19937_64 rng(20240601);
    auto pick = [&]() -> const Window& {
        return windows[std::uniform_int_distribution<std::size_t>(0, windows.size() - 1)(rng)];
    };

    for (int trial = 0; trial < 500; ++trial) {
        const RandomMember m = random_member(pick(), rng);
        const Decomposition dec = greedy_decompose(m.diagram);
        bool ok = dec.terms.size() == m.support.size();
        for (std::size_t k = 0; ok && k < dec.terms.size(); ++k)
            ok = is_integer(dec.terms[k].coefficient) && dec.terms[k].coefficient == m.coefficients[k] &&
                 dec.terms[k].degrees == m.support[k];
        o.require(ok, "integrality/greedy mismatch on\n" + emit_table(m.diagram));

        const auto coords = expand_in_chain(m.diagram, m.chain);
        std::size_t next = 0;
        for (std::size_t k = 0; k < m.chain.size(); ++k) {
            const bool on = next < dec.terms.size() && m.chain[k] == dec.terms[next].degrees;
            const Rational expected = on ? dec.terms[next++].coefficient : Rational(0);
            if (coords[k] != expected) o.require(false, "expand_in_chain disagrees with greedy");
        }
        o.require(membership_by_inequalities(m.diagram).member, "member rejected by inequalities");
    }

    auto greedy_ok = [](const BettiDiagram& b) {
        try {
            greedy_decompose(b);
            return true;
        } catch (const NotInCone&) {
            return false;
        } catch (const InvalidDiagram&) {
            return false;
        }
    };
    int near = 0, outside = 0;
    while (near < 100) {
        const Window& w = pick();
        const RandomMember m = random_member(w, rng);
        BettiDiagram b = m.diagram;
        const std::size_t k = std::uniform_int_distribution<std::size_t>(0, m.support.size() - 1)(rng);
        if (near % 2 == 0) {
            b -= (m.coefficients[k] + make_rational(1, 3)) * pure_diagram(m.support[k], w.ambient).diagram();
        } else {
            const int i = std::uniform_int_distribution<int>(0, w.ambient)(rng);
            b.add(i, std::uniform_int_distribution<int>(w.low, w.high)(rng) + i, 1);
        }
        if (b.is_zero()) continue;
        ++near;
        const bool member = membership_by_inequalities(b).member;
        outside += !member;
        o.require(member == greedy_ok(b), "membership/greedy disagree on\n" + emit_table(b));
    }
    o.notes.insert(o.notes.begin(), std::to_string(checks) + " duality checks, 500 members, 100 near-misses (" +
                                        std::to_string(outside) + " outside)");
    return o;
}

Outcome hilbert_multiplicity() {
    Outcome o;
    std::size_t cases = 0;
    for (int n = 0; n <= 4; ++n)
        for (int s = 0; s <= n; ++s) {
            std::vector<int> shifts;
            std::function<void(int)> grow = [&](int from) {
                if (static_cast<int>(shifts.size()) == s) {
                    std::vector<int> d{0};
                    d.insert(d.end(), shifts.begin(), shifts.end());
                    Rational expected = 1;
                    for (std::size_t i = 0; i < shifts.size(); ++i)
                        expected *= make_rational(shifts[i], static_cast<long>(i + 1));
                    ++cases;
                    const Rational e = multiplicity(normalized_pure_diagram(DegreeSequence(d), n).diagram());
                    o.require(e == expected, "e(pi_bar" + DegreeSequence(d).to_string() + ") = " + to_string(e));
                    return;
                }
                for (int m = from; m <= 8; ++m) {
                    shifts.push_back(m);
                    grow(m + 1);
                    shifts.pop_back();
                }
            };
            grow(1);
        }

    const MultiplicityBoundsReport ex = multiplicity_bounds(parse_diagram(read_fixture("example_quotient.json")), 20);
    o.require(ex.applicable && ex.multiplicity == 1, "example multiplicity " + to_string(ex.multiplicity));
    o.require(ex.multiplicity_bound == 3 && ex.multiplicity_holds && !ex.multiplicity_equality,
              "example bound " + to_string(ex.multiplicity_bound));
    o.require(!(ex.pure && ex.cohen_macaulay), "example reported as Cohen-Macaulay and pure");

    const MultiplicityBoundsReport k = multiplicity_bounds(parse_diagram(read_fixture("koszul_n3.table")), 20);
    o.require(k.applicable && k.multiplicity == 1 && k.multiplicity_bound == 1 && k.multiplicity_equality,
              "Koszul: e = " + to_string(k.multiplicity) + ", bound " + to_string(k.multiplicity_bound));
    o.notes.insert(o.notes.begin(), std::to_string(cases) + " closed-form cases");
    return o;
}

Outcome monotonicity() {
    Outcome o;
    const auto start = Clock::now();
    std::size_t pairs = 0;
    for (int n = 0; n <= 3; ++n)
        for (int gap = 0; gap <= 3; ++gap) {
            const Window w(n, 0, gap, 0);
            for (const auto& p : pure_diagrams_in(w)) {
                if (p[0] != 0) continue;
                for (const auto& q : upper_covers(p, w)) {
                    if (q[0] != 0) continue;
                    ++pairs;
                    const auto r =
                        check_monotonicity({normalized_pure_diagram(p, n), normalized_pure_diagram(q, n)}, 20);
                    o.require(r.pass, p.to_string() + " < " + q.to_string() + " not strictly increasing");
                }
            }
        }
    const double t = seconds_since(start);
    o.require(t < 60.0, "took " + std::to_string(t) + " s");
    o.notes.insert(o.notes.begin(), std::to_string(pairs) + " cover pairs");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, Outcome (*)()>> criteria{
        {"decomposition of the example quotient", decomposition_reproduced},
        {"pure summands entry-for-entry", pure_summands_match},
        {"twelve coefficient functional matrices and their values", functional_goldens},
        {"chain combinatorics", chain_combinatorics},
        {"facet classification", facet_classification},
        {"fan convexity on desk-scale windows", convexity},
        {"duality, integrality and membership agreement", duality_and_integrality},
        {"Hilbert series and multiplicity", hilbert_multiplicity},
        {"monotonicity of normalized Hilbert series", monotonicity},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.notes.push_back(std::string("exception: ") + e.what());
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << k + 1 << ": " << criteria[k].first;
        for (const auto& note : o.notes) std::cout << "\n    " << note;
        std::cout << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
