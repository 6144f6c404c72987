#pragma once

// Integer linear functionals that read off the coefficient of one chain
// element, boundary facets of the fan of pure diagrams, and cone membership.

#include <algorithm>
#include <cstddef>
#include <future>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "bettifan/diagram.hpp"
#include "bettifan/errors.hpp"
#include "bettifan/poset.hpp"

namespace bettifan {

/// Which closed form produced a functional, keyed on the two steps around
/// the anchored element: the step into it from below and the step out of it.
enum class FunctionalCase {
    first,         // codimension drop in, degree raise out
    second,        // degree raise in, codimension drop out
    third,         // degree raises in two different columns
    fourth,        // codimension drops on both sides
    single_entry,  // same column raised twice (or raised then dropped)
};

inline std::string to_string(FunctionalCase c) {
    switch (c) {
        case FunctionalCase::first: return "first";
        case FunctionalCase::second: return "second";
        case FunctionalCase::third: return "third";
        case FunctionalCase::fourth: return "fourth";
        case FunctionalCase::single_entry: return "single_entry";
    }
    return "unknown";
}

/// pi_0 < pi_1 < pi_2 with the outer two optional: nullopt below means the
/// anchored element is the window minimum, nullopt above the maximum.
struct CoverTriple {
    std::optional<DegreeSequence> below;
    DegreeSequence element;
    std::optional<DegreeSequence> above;
    friend bool operator==(const CoverTriple&, const CoverTriple&) = default;
};

class Functional {
public:
    Functional(Window window, CoverTriple anchor, FunctionalCase kind, std::vector<std::vector<Integer>> grid)
        : window_(window), anchor_(std::move(anchor)), case_(kind), grid_(std::move(grid)) {}

    const Window& window() const noexcept { return window_; }
    const CoverTriple& anchor() const noexcept { return anchor_; }
    FunctionalCase functional_case() const noexcept { return case_; }

    /// Row-major over the display grid: grid()[j - i - low][i].
    const std::vector<std::vector<Integer>>& grid() const noexcept { return grid_; }

    Integer coefficient(int i, int j) const {
        const int r = j - i - window_.low;
        if (i < 0 || i > window_.ambient || r < 0 || r >= window_.rows()) return 0;
        return grid_[r][i];
    }

    friend bool operator==(const Functional&, const Functional&) = default;

private:
    Window window_;
    CoverTriple anchor_;
    FunctionalCase case_;
    std::vector<std::vector<Integer>> grid_;
};

/// sum c_{i,j} beta_{i,j}; entries outside the functional's grid count as zero.
inline Rational evaluate(const Functional& f, const BettiDiagram& b) {
    if (b.ambient() != f.window().ambient)
        throw WindowMismatch("diagram ambient " + std::to_string(b.ambient()) + " vs functional ambient " +
                             std::to_string(f.window().ambient));
    Rational sum = 0;
    for (const auto& [key, value] : b.entries()) {
        const Integer c = f.coefficient(key.first, key.second);
        if (c != 0) sum += value * c;
    }
    return sum;
}

/// Value on pi(d) without materializing the diagram.
inline Rational evaluate(const Functional& f, const DegreeSequence& d) {
    Rational sum = 0;
    for (int i = 0; i <= d.codim(); ++i) {
        const Integer c = f.coefficient(i, d[i]);
        if (c != 0) sum += pure_entry(d, i) * c;
    }
    return sum;
}

/// The functional on B_{M,N} that is 1 on `element`, and 0 on every pure
/// diagram of the window <= `below` or >= `above`.
inline Functional coefficient_functional(const std::optional<DegreeSequence>& below, const DegreeSequence& element,
                                         const std::optional<DegreeSequence>& above, const Window& w) {
    if (!w.contains(element)) throw NotACoverTriple(element.to_string() + " outside window " + w.to_string());
    if (below ? !covers(*below, element, w) : element != w.minimum())
        throw NotACoverTriple((below ? below->to_string() : std::string("bottom")) + " is not covered by " +
                              element.to_string());
    if (above ? !covers(element, *above, w) : element != w.maximum())
        throw NotACoverTriple(element.to_string() + " is not covered by " +
                              (above ? above->to_string() : std::string("top")));

    const DegreeSequence& d = element;
    const int m = d.codim();
    // Below the window minimum we pretend a codimension drop happened.
    const bool drop_in = !below || below->codim() > m;
    const bool drop_out = !above || above->codim() < m;
    const int raised_in = drop_in ? -1 : vacated_cell(*below, element).column;
    const int raised_out = drop_out ? -1 : vacated_cell(element, *above).column;

    auto bound = [&](int i) {
        if (!below) return w.low + i;
        return i <= below->codim() ? (*below)[i] : w.high + i;
    };

    std::vector<std::vector<Integer>> grid(w.rows(), std::vector<Integer>(w.columns(), 0));
    auto single_entry = [&](int column) {
        const Rational reciprocal = 1 / pure_entry(d, column);
        grid[d[column] - column - w.low][column] = reciprocal.get_num();
        return Functional(w, CoverTriple{below, element, above}, FunctionalCase::single_entry, std::move(grid));
    };

    FunctionalCase kind;
    Integer scale = 1;
    std::vector<int> roots;  // columns j contributing a factor (d_j - degree)
    if (drop_in && !drop_out) {
        kind = FunctionalCase::first;
        for (int j = 0; j <= m; ++j)
            if (j != raised_out) roots.push_back(j);
    } else if (!drop_in && drop_out) {
        if (raised_in == m) return single_entry(m);
        kind = FunctionalCase::second;
        scale = d[raised_in] - d[m];
        for (int j = 0; j < m; ++j)
            if (j != raised_in) roots.push_back(j);
    } else if (!drop_in && !drop_out) {
        if (raised_in == raised_out) return single_entry(raised_in);
        kind = FunctionalCase::third;
        scale = d[raised_in] - d[raised_out];
        for (int j = 0; j <= m; ++j)
            if (j != raised_in && j != raised_out) roots.push_back(j);
    } else {
        kind = FunctionalCase::fourth;
        for (int j = 0; j < m; ++j) roots.push_back(j);
    }

    for (int i = 0; i <= w.ambient; ++i) {
        for (int r = 0; r < w.rows(); ++r) {
            const int degree = w.low + r + i;
            if (degree > bound(i)) break;
            Integer c = i % 2 == 0 ? scale : Integer(-scale);
            for (int j : roots) c *= d[j] - degree;
            grid[r][i] = c;
        }
    }
    return Functional(w, CoverTriple{below, element, above}, kind, std::move(grid));
}

inline Functional coefficient_functional(const CoverTriple& t, const Window& w) {
    return coefficient_functional(t.below, t.element, t.above, w);
}

/// Functional reading off the coefficient of chain element k.
inline Functional coefficient_functional(const Chain& chain, std::size_t k) {
    std::optional<DegreeSequence> below, above;
    if (k > 0) below = chain[k - 1];
    if (k + 1 < chain.size()) above = chain[k + 1];
    return coefficient_functional(below, chain[k], above, chain.window());
}

/// Coordinates of b in the basis given by a maximal chain, by peeling the
/// chain from the bottom: the cell emptied after element k is nonzero in
/// element k and in no later element.
inline std::vector<Rational> expand_in_chain(const BettiDiagram& b, const Chain& chain) {
    if (!chain.is_maximal()) throw ChainNotMaximal("expansion needs a maximal chain");
    const Window& w = chain.window();
    if (!w.contains(b)) throw WindowMismatch("diagram support not inside window " + w.to_string());
    if (!satisfies_hk(b, w.min_codim))
        throw NotInSubspace("diagram violates the first " + std::to_string(w.min_codim) + " Herzog-Kuehl equations");

    std::vector<Rational> coords;
    coords.reserve(chain.size());
    BettiDiagram residual = b;
    for (std::size_t k = 0; k < chain.size(); ++k) {
        const Cell cell = k + 1 < chain.size() ? vacated_cell(chain[k], chain[k + 1]) : Cell{w.high, 0};
        const int degree = cell.row + cell.column;
        const Rational lambda = residual.at(cell.column, degree) / pure_entry(chain[k], cell.column);
        coords.push_back(lambda);
        if (lambda != 0) residual -= lambda * chain.pure(k).diagram();
    }
    if (!residual.is_zero()) throw NotInSubspace("nonzero remainder after expansion");
    return coords;
}

// ---------------------------------------------------------------------------
// Facets

enum class FacetKind {
    interior,
    extremal,            // removed element is the chain minimum or maximum
    same_column_twice,   // one column moves two steps
    adjacent_columns,    // adjacent columns move off the same row
    codim_twice,         // two consecutive codimension drops
};

inline std::string to_string(FacetKind k) {
    switch (k) {
        case FacetKind::interior: return "interior";
        case FacetKind::extremal: return "kind_i_extremal";
        case FacetKind::same_column_twice: return "kind_ii_same_column_twice";
        case FacetKind::adjacent_columns: return "kind_iii_adjacent_columns";
        case FacetKind::codim_twice: return "kind_iv_codim_twice";
    }
    return "unknown";
}

/// Kind of the face obtained by deleting the middle of a cover triple. The
/// face is a boundary facet iff the two emptied cells cannot be emptied in
/// the other order.
inline FacetKind facet_kind(const CoverTriple& t, const Window& w) {
    if (!t.below || !t.above) return FacetKind::extremal;
    const Cell first = vacated_cell(*t.below, t.element);
    const Cell second = vacated_cell(t.element, *t.above);
    if (second.column == first.column && second.row == first.row + 1) return FacetKind::same_column_twice;
    if (second.row == first.row && second.column == first.column - 1)
        return first.row < w.high ? FacetKind::adjacent_columns : FacetKind::codim_twice;
    return FacetKind::interior;
}

/// Classifies a maximal chain with one element removed.
inline FacetKind classify_facet(const Chain& facet) {
    const Window& w = facet.window();
    if (facet.size() + 1 != static_cast<std::size_t>(chain_length(w)))
        throw NotAChain("expected " + std::to_string(chain_length(w) - 1) + " elements, got " +
                        std::to_string(facet.size()));
    const auto completions = complete_chain(facet);
    if (completions.empty()) throw NotAChain("chain does not extend to a maximal chain");
    if (completions.size() >= 2) return FacetKind::interior;
    const Chain& full = completions.front();
    std::size_t missing = 0;
    while (missing < facet.size() && facet[missing] == full[missing]) ++missing;
    CoverTriple t{std::nullopt, full[missing], std::nullopt};
    if (missing > 0) t.below = full[missing - 1];
    if (missing + 1 < full.size()) t.above = full[missing + 1];
    return facet_kind(t, w);
}

struct BoundaryFacet {
    Chain face;               // maximal chain minus `removed`
    DegreeSequence removed;
    FacetKind kind;
    Functional functional;    // coefficient functional of `removed`
};

/// Boundary facets of the fan of w, one per (maximal chain, removable
/// element); each boundary facet lies in exactly one maximal chain, so the
/// list has no repeats. Ordered by chain (tableau order), then position.
inline std::vector<BoundaryFacet> boundary_facets(const Window& w, std::size_t chain_limit = 1'000'000) {
    std::vector<BoundaryFacet> out;
    if (chain_length(w) < 2) return out;
    std::size_t chains = 0;
    bool overflow = false;
    for_each_maximal_chain(w, [&](const Chain& chain, const Tableau&) {
        if (++chains > chain_limit) {
            overflow = true;
            return false;
        }
        for (std::size_t k = 0; k < chain.size(); ++k) {
            CoverTriple t{std::nullopt, chain[k], std::nullopt};
            if (k > 0) t.below = chain[k - 1];
            if (k + 1 < chain.size()) t.above = chain[k + 1];
            const FacetKind kind = facet_kind(t, w);
            if (kind == FacetKind::interior) continue;
            out.push_back(BoundaryFacet{chain.without(k), chain[k], kind, coefficient_functional(t, w)});
        }
        return true;
    });
    if (overflow)
        throw WindowTooLarge("more than " + std::to_string(chain_limit) + " maximal chains in " + w.to_string());
    return out;
}

/// Every cover triple of w whose middle element spans a boundary facet,
/// found locally without walking maximal chains. Includes the degenerate
/// triple of a one-element window.
inline std::vector<CoverTriple> boundary_triples(const Window& w) {
    std::vector<CoverTriple> out;
    for (const auto& element : pure_diagrams_in(w)) {
        std::vector<std::optional<DegreeSequence>> belows, aboves;
        for (auto& d : lower_covers(element, w)) belows.emplace_back(std::move(d));
        for (auto& d : upper_covers(element, w)) aboves.emplace_back(std::move(d));
        if (element == w.minimum()) belows.assign(1, std::nullopt);
        if (element == w.maximum()) aboves.assign(1, std::nullopt);
        for (const auto& below : belows)
            for (const auto& above : aboves) {
                CoverTriple t{below, element, above};
                if (facet_kind(t, w) != FacetKind::interior) out.push_back(std::move(t));
            }
    }
    return out;
}

struct ConvexityReport {
    bool pass = true;
    std::size_t facets_checked = 0;
    std::size_t diagrams_checked = 0;
    struct Counterexample {
        CoverTriple facet;
        DegreeSequence diagram;
        Rational value;
    };
    std::optional<Counterexample> counterexample;
};

/// Checks every boundary functional is >= 0 on every pure diagram of w.
/// `max_evaluations` guards the facets x diagrams product.
inline ConvexityReport verify_fan_convexity(const Window& w, std::size_t max_evaluations = 50'000'000,
                                            unsigned jobs = 1) {
    const auto diagrams = pure_diagrams_in(w);
    const auto triples = boundary_triples(w);
    if (triples.size() * diagrams.size() > max_evaluations)
        throw WindowTooLarge(std::to_string(triples.size()) + " facets x " + std::to_string(diagrams.size()) +
                             " diagrams exceeds " + std::to_string(max_evaluations) + " evaluations");

    using Found = std::optional<ConvexityReport::Counterexample>;
    auto scan = [&](std::size_t begin, std::size_t end) -> Found {
        for (std::size_t f = begin; f < end; ++f) {
            const Functional functional = coefficient_functional(triples[f], w);
            for (const auto& d : diagrams) {
                Rational value = evaluate(functional, d);
                if (value < 0) return ConvexityReport::Counterexample{triples[f], d, std::move(value)};
            }
        }
        return std::nullopt;
    };

    ConvexityReport report;
    report.facets_checked = triples.size();
    report.diagrams_checked = diagrams.size();
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, triples.size()))));
    std::vector<std::future<Found>> parts;
    const std::size_t chunk = (triples.size() + jobs - 1) / std::max(1u, jobs);
    for (std::size_t begin = 0; begin < triples.size(); begin += chunk) {
        const std::size_t end = std::min(triples.size(), begin + chunk);
        parts.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, scan, begin, end));
    }
    // First violation in facet order, independent of the job count.
    for (auto& part : parts) {
        Found found = part.get();
        if (found && !report.counterexample) {
            report.pass = false;
            report.counterexample = std::move(found);
        }
    }
    return report;
}

struct MembershipResult {
    bool member = true;
    Window window;
    std::size_t inequalities_checked = 0;
    struct Violation {
        Functional functional;
        FacetKind kind;
        Rational value;
    };
    std::optional<Violation> certificate;
};

/// b lies in the cone spanned by the pure diagrams of w iff every boundary
/// functional of w is nonnegative on b.
inline MembershipResult membership_by_inequalities(const BettiDiagram& b, const Window& w) {
    if (!w.contains(b)) throw WindowMismatch("diagram support not inside window " + w.to_string());
    if (!satisfies_hk(b, w.min_codim))
        throw NotInSubspace("diagram violates the first " + std::to_string(w.min_codim) + " Herzog-Kuehl equations");
    MembershipResult result;
    result.window = w;
    for (const auto& t : boundary_triples(w)) {
        Functional f = coefficient_functional(t, w);
        ++result.inequalities_checked;
        Rational value = evaluate(f, b);
        if (value < 0) {
            result.member = false;
            result.certificate = MembershipResult::Violation{std::move(f), facet_kind(t, w), std::move(value)};
            return result;
        }
    }
    return result;
}

/// The window a diagram lives in: its row range, with minimal codimension
/// equal to its codimension (capped at the ambient dimension).
inline Window natural_window(const BettiDiagram& b) {
    const RowRange rows = window_of(b);
    const int s = std::min(codimension(b), b.ambient());
    return Window(b.ambient(), rows.low, rows.high, s);
}

inline MembershipResult membership_by_inequalities(const BettiDiagram& b) {
    return membership_by_inequalities(b, natural_window(b));
}

}  // namespace bettifan
