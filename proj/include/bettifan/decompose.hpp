#pragma once

// Greedy decomposition of a Betti diagram into a positive combination of a
// chain of pure diagrams: repeatedly subtract as much as possible of the
// pure diagram read off from the lowest degree in each column.

#include <string>
#include <vector>

#include "bettifan/diagram.hpp"
#include "bettifan/errors.hpp"
#include "bettifan/functionals.hpp"
#include "bettifan/poset.hpp"

namespace bettifan {

struct DecompositionTerm {
    Rational coefficient;
    DegreeSequence degrees;
    friend bool operator==(const DecompositionTerm&, const DecompositionTerm&) = default;
};

struct Decomposition {
    int ambient = 0;
    std::vector<DecompositionTerm> terms;
    /// Whatever the greedy loop could not remove; zero on success.
    BettiDiagram residual;

    bool has_residual() const { return !residual.is_zero(); }

    BettiDiagram reconstruct() const {
        BettiDiagram sum(ambient);
        for (const auto& t : terms) sum += t.coefficient * pure_diagram(t.degrees, ambient).diagram();
        return sum;
    }
};

enum class NotInConeReason { invalid_leading_sequence, residual };

inline std::string to_string(NotInConeReason r) {
    return r == NotInConeReason::invalid_leading_sequence ? "InvalidLeadingSequence" : "Residual";
}

/// Raised when the greedy loop gets stuck; carries the partial result.
class NotInCone : public Error {
public:
    NotInCone(NotInConeReason reason, Decomposition partial, const std::string& detail)
        : Error("NotInCone(" + to_string(reason) + "): " + detail), reason_(reason), partial_(std::move(partial)) {}

    NotInConeReason reason() const noexcept { return reason_; }
    const Decomposition& partial() const noexcept { return partial_; }
    const BettiDiagram& residual() const noexcept { return partial_.residual; }

private:
    NotInConeReason reason_;
    Decomposition partial_;
};

inline Decomposition greedy_decompose(const BettiDiagram& b) {
    if (b.is_zero()) throw UndefinedOnZero("cannot decompose the zero diagram");
    if (!b.is_nonnegative()) throw InvalidDiagram("negative Betti number in input");

    const int codim = codimension(b);
    const int max_steps = chain_length(natural_window(b));
    Decomposition dec;
    dec.ambient = b.ambient();
    dec.residual = b;

    auto fail = [&](NotInConeReason reason, const std::string& detail) {
        throw NotInCone(reason, dec, detail);
    };

    while (!dec.residual.is_zero()) {
        const int top = dec.residual.projective_dimension();
        std::vector<int> leading;
        for (int i = 0; i <= top; ++i) {
            const auto low = dec.residual.min_degree(i);
            if (!low) fail(NotInConeReason::invalid_leading_sequence, "column " + std::to_string(i) + " is empty");
            if (!leading.empty() && *low <= leading.back())
                fail(NotInConeReason::invalid_leading_sequence, "lowest degrees not strictly increasing at column " +
                                                                    std::to_string(i));
            leading.push_back(*low);
        }
        if (top < codim)
            fail(NotInConeReason::residual, "remaining part has projective dimension " + std::to_string(top) +
                                                " below the codimension " + std::to_string(codim));
        if (static_cast<int>(dec.terms.size()) >= max_steps)
            fail(NotInConeReason::residual, "more steps than elements in a maximal chain");

        DegreeSequence d(std::move(leading));
        if (!dec.terms.empty() && !less(dec.terms.back().degrees, d))
            fail(NotInConeReason::invalid_leading_sequence,
                 d.to_string() + " does not lie above " + dec.terms.back().degrees.to_string());

        const PureDiagram pi = pure_diagram(d, b.ambient());
        Rational c = dec.residual.at(0, d[0]) / pi.entry(0);
        for (int i = 1; i <= d.codim(); ++i) c = std::min(c, Rational(dec.residual.at(i, d[i]) / pi.entry(i)));
        dec.residual -= c * pi.diagram();
        dec.terms.push_back({c, std::move(d)});
    }
    return dec;
}

enum class VerificationFailure {
    none,
    nonpositive_coefficient,
    not_a_chain,
    reconstruction_mismatch,
    residual_present,
    functional_mismatch,
};

inline std::string to_string(VerificationFailure f) {
    switch (f) {
        case VerificationFailure::none: return "ok";
        case VerificationFailure::nonpositive_coefficient: return "nonpositive_coefficient";
        case VerificationFailure::not_a_chain: return "not_a_chain";
        case VerificationFailure::reconstruction_mismatch: return "reconstruction_mismatch";
        case VerificationFailure::residual_present: return "residual_present";
        case VerificationFailure::functional_mismatch: return "functional_mismatch";
    }
    return "unknown";
}

struct VerificationResult {
    VerificationFailure failure = VerificationFailure::none;
    std::string detail;
    explicit operator bool() const { return failure == VerificationFailure::none; }
};

/// Checks positivity, chain order and exact reconstruction, then reads each
/// coefficient back through the coefficient functional of its element in a
/// maximal chain refining the decomposition's chain.
inline VerificationResult verify_decomposition(const Decomposition& dec, const BettiDiagram& b) {
    auto failed = [](VerificationFailure f, std::string detail) { return VerificationResult{f, std::move(detail)}; };
    if (dec.has_residual()) return failed(VerificationFailure::residual_present, "decomposition carries a residual");
    for (const auto& t : dec.terms)
        if (t.coefficient <= 0)
            return failed(VerificationFailure::nonpositive_coefficient, "coefficient of " + t.degrees.to_string());
    for (std::size_t k = 1; k < dec.terms.size(); ++k)
        if (!less(dec.terms[k - 1].degrees, dec.terms[k].degrees))
            return failed(VerificationFailure::not_a_chain,
                          dec.terms[k - 1].degrees.to_string() + " vs " + dec.terms[k].degrees.to_string());
    if (dec.ambient != b.ambient() || !(dec.reconstruct() == b))
        return failed(VerificationFailure::reconstruction_mismatch, "sum of terms differs from the diagram");
    if (b.is_zero()) return {};

    const Window w = natural_window(b);
    std::vector<DegreeSequence> elements;
    for (const auto& t : dec.terms) {
        if (!w.contains(t.degrees))
            return failed(VerificationFailure::functional_mismatch, t.degrees.to_string() + " outside " + w.to_string());
        elements.push_back(t.degrees);
    }
    const auto maximal = extend_to_maximal(Chain(w, elements));
    if (!maximal) return failed(VerificationFailure::functional_mismatch, "chain does not extend in " + w.to_string());
    std::size_t k = 0;
    for (const auto& t : dec.terms) {
        while ((*maximal)[k] != t.degrees) ++k;
        const Rational value = evaluate(coefficient_functional(*maximal, k), b);
        if (value != t.coefficient)
            return failed(VerificationFailure::functional_mismatch,
                          "functional gives " + to_string(value) + " for " + t.degrees.to_string());
    }
    return {};
}

}  // namespace bettifan
