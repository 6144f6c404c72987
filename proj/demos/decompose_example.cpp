// Decomposes a Betti diagram, then re-derives each coefficient from a
// functional on a maximal chain through the support.
//
//   decompose_example [diagram-file]
//
// Without an argument the quotient k[x,y,z]/(x^2, xy, xz^2) is used.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "bettifan/bettifan.hpp"

using namespace bettifan;

int main(int argc, char** argv) {
    std::string text = "0: 1 - - -\n1: - 2 1 -\n2: - 1 2 1\n";
    if (argc > 1) {
        std::ifstream in(argv[1]);
        if (!in) {
            std::cerr << "cannot open " << argv[1] << "\n";
            return 2;
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        text = buffer.str();
    }

    try {
        const BettiDiagram b = parse_diagram(text);
        std::cout << "input:\n" << emit_table(b) << "\n";

        const Decomposition dec = greedy_decompose(b);
        std::cout << "greedy decomposition:\n";
        for (const auto& t : dec.terms)
            std::cout << "  " << to_string(t.coefficient) << " * pi" << t.degrees.to_string() << "\n";

        std::vector<DegreeSequence> support;
        for (const auto& t : dec.terms) support.push_back(t.degrees);
        const auto chain = extend_to_maximal(Chain(natural_window(b), support));
        if (!chain) return 0;

        std::cout << "\nnonzero coordinates in a maximal chain of " << chain->window().to_string() << ":\n";
        for (std::size_t k = 0; k < chain->size(); ++k) {
            const Functional f = coefficient_functional(*chain, k);
            const Rational value = evaluate(f, b);
            if (value == 0) continue;
            std::cout << "  pi" << (*chain)[k].to_string() << " <- " << to_string(value) << "  (case "
                      << to_string(f.functional_case()) << ")\n";
            for (const auto& row : f.grid()) {
                std::cout << "     ";
                for (const auto& c : row) std::cout << ' ' << std::setw(4) << to_string(c);
                std::cout << "\n";
            }
        }

        const HilbertSeries h = hilbert_series(b).reduced();
        std::cout << "\nHilbert series: " << h.to_string() << "\nmultiplicity: " << to_string(multiplicity(b)) << "\n";
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}
