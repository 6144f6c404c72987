#pragma once

// Hilbert series recovered from Betti diagrams, multiplicity, and the
// comparison of a module's series with the normalized pure diagrams built
// from its extremal shifts.

#include <optional>
#include <string>
#include <vector>

#include "bettifan/diagram.hpp"
#include "bettifan/errors.hpp"
#include "bettifan/poset.hpp"
#include "bettifan/polynomial.hpp"

namespace bettifan {

/// numerator / (1 - t)^denominator_exponent
struct HilbertSeries {
    LaurentPolynomial numerator;
    int denominator_exponent = 0;

    /// Same rational function with every common (1 - t) factor cancelled.
    HilbertSeries reduced() const {
        HilbertSeries h = *this;
        while (h.denominator_exponent > 0) {
            auto q = h.numerator.divide_by_one_minus_t();
            if (!q) break;
            h.numerator = std::move(*q);
            --h.denominator_exponent;
        }
        return h;
    }

    friend HilbertSeries operator+(const HilbertSeries& a, const HilbertSeries& b) {
        const int e = std::max(a.denominator_exponent, b.denominator_exponent);
        HilbertSeries sum;
        sum.denominator_exponent = e;
        sum.numerator = a.numerator * LaurentPolynomial::one_minus_t_power(e - a.denominator_exponent) +
                        b.numerator * LaurentPolynomial::one_minus_t_power(e - b.denominator_exponent);
        return sum;
    }
    friend HilbertSeries operator*(const Rational& s, HilbertSeries h) {
        h.numerator *= s;
        return h;
    }

    /// Equality as rational functions.
    friend bool operator==(const HilbertSeries& a, const HilbertSeries& b) {
        return a.numerator * LaurentPolynomial::one_minus_t_power(b.denominator_exponent) ==
               b.numerator * LaurentPolynomial::one_minus_t_power(a.denominator_exponent);
    }

    std::string to_string() const {
        return "(" + numerator.to_string() + ")/(1-t)^" + std::to_string(denominator_exponent);
    }
};

inline HilbertSeries hilbert_series(const BettiDiagram& b) { return {numerator_polynomial(b), b.ambient()}; }

/// Power-series coefficients h_start..h_upto, start = min(0, lowest
/// exponent of the numerator).
struct TruncatedSeries {
    int start = 0;
    std::vector<Rational> coefficients;

    int upto() const { return start + static_cast<int>(coefficients.size()) - 1; }
    Rational at(int degree) const {
        if (degree < start || degree > upto()) return 0;
        return coefficients[degree - start];
    }
};

namespace detail {

inline Integer binomial(long top, long bottom) {
    if (bottom < 0 || top < bottom) return 0;
    Integer out;
    mpz_bin_ui(out.get_mpz_t(), Integer(top).get_mpz_t(), static_cast<unsigned long>(bottom));
    return out;
}

}  // namespace detail

inline TruncatedSeries expand_series(const HilbertSeries& h, int upto) {
    if (upto < 0) throw std::invalid_argument("truncation degree must be >= 0");
    TruncatedSeries out;
    out.start = h.numerator.is_zero() ? 0 : std::min(0, h.numerator.min_degree());
    const int n = h.denominator_exponent;
    for (int e = out.start; e <= upto; ++e) {
        Rational c = 0;
        for (const auto& [a, coefficient] : h.numerator.terms()) {
            if (a > e) break;
            // [t^k] (1 - t)^-n = C(k + n - 1, n - 1); for n = 0 only k = 0.
            const Integer ways = n == 0 ? Integer(e == a ? 1 : 0) : detail::binomial(e - a + n - 1, n - 1);
            c += coefficient * ways;
        }
        out.coefficients.push_back(c);
    }
    return out;
}

/// e = Q(1) where S(b, t) = (1 - t)^s Q(t), s the codimension.
inline Rational multiplicity(const BettiDiagram& b) {
    if (b.is_zero()) throw UndefinedOnZero("multiplicity of the zero diagram");
    LaurentPolynomial q = numerator_polynomial(b);
    while (auto next = q.divide_by_one_minus_t()) q = std::move(*next);
    return q.evaluate(1);
}

/// Minimal shifts m_1..m_r (r the projective dimension) and maximal shifts
/// M_1..M_s (s the codimension).
struct ShiftBounds {
    std::vector<int> minimal;
    std::vector<int> maximal;
};

inline ShiftBounds shift_bounds(const BettiDiagram& b) {
    if (b.is_zero()) throw UndefinedOnZero("shift bounds of the zero diagram");
    const auto low = b.min_degree(0);
    const auto high = b.max_degree(0);
    if (!low) throw NotSingleDegreeGenerated("no generators in column 0");
    if (*low != *high)
        throw NotSingleDegreeGenerated("generators in degrees " + std::to_string(*low) + ".." + std::to_string(*high));
    if (*low != 0) throw NotGeneratedInDegreeZero("generators in degree " + std::to_string(*low));

    ShiftBounds out;
    const int r = b.projective_dimension();
    const int s = codimension(b);
    if (s > r)
        throw InvalidDiagram("codimension " + std::to_string(s) + " exceeds projective dimension " + std::to_string(r));
    for (int i = 1; i <= r; ++i) {
        const auto d = b.min_degree(i);
        if (!d) throw InvalidDiagram("column " + std::to_string(i) + " is empty");
        out.minimal.push_back(*d);
    }
    for (int i = 1; i <= s; ++i) out.maximal.push_back(*b.max_degree(i));
    return out;
}

struct PairComparison {
    DegreeSequence lower;
    DegreeSequence upper;
    TruncatedSeries difference;  // H(upper) - H(lower)
    bool nonnegative = true;
    bool strict = false;  // some coefficient of the difference is positive
};

struct MonotonicityReport {
    bool pass = true;
    int truncation = 0;
    std::vector<PairComparison> pairs;
};

inline TruncatedSeries series_difference(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries out;
    out.start = std::min(a.start, b.start);
    const int upto = std::max(a.upto(), b.upto());
    for (int e = out.start; e <= upto; ++e) out.coefficients.push_back(a.at(e) - b.at(e));
    return out;
}

/// Compares truncated Hilbert series along a chain of normalized pure
/// diagrams, smallest first.
inline MonotonicityReport check_monotonicity(const std::vector<NormalizedPureDiagram>& chain, int upto) {
    MonotonicityReport report;
    report.truncation = upto;
    for (std::size_t k = 1; k < chain.size(); ++k) {
        if (chain[k].ambient() != chain[0].ambient()) throw NotAChain("mixed ambient dimensions");
        if (!less(chain[k - 1].degrees(), chain[k].degrees()))
            throw NotAChain(chain[k - 1].degrees().to_string() + " is not below " + chain[k].degrees().to_string());
    }
    for (std::size_t k = 1; k < chain.size(); ++k) {
        PairComparison cmp{chain[k - 1].degrees(), chain[k].degrees(), {}, true, false};
        cmp.difference = series_difference(expand_series(hilbert_series(chain[k].diagram()), upto),
                                           expand_series(hilbert_series(chain[k - 1].diagram()), upto));
        for (const auto& c : cmp.difference.coefficients) {
            if (c < 0) cmp.nonnegative = false;
            if (c > 0) cmp.strict = true;
        }
        report.pass = report.pass && cmp.nonnegative && cmp.strict;
        report.pairs.push_back(std::move(cmp));
    }
    return report;
}

struct SeriesBound {
    bool holds = true;      // every slack coefficient >= 0
    bool equality = false;  // every slack coefficient == 0 up to the truncation
    TruncatedSeries slack;
};

struct MultiplicityBoundsReport {
    bool applicable = true;
    std::string reason;  // why not applicable
    ShiftBounds shifts;
    Rational beta0;
    int codim = 0;
    int projective_dimension = 0;
    bool pure = false;
    bool cohen_macaulay = false;
    int truncation = 0;
    SeriesBound lower;  // H(b) - beta0 * H(pi_bar(0, m))
    SeriesBound upper;  // beta0 * H(pi_bar(0, M)) - H(b)
    Rational multiplicity;
    Rational multiplicity_bound;  // beta0 * M_1 ... M_s / s!
    Rational multiplicity_slack;
    bool multiplicity_holds = true;
    bool multiplicity_equality = false;

    bool all_hold() const { return !applicable || (lower.holds && upper.holds && multiplicity_holds); }
};

namespace detail {

inline SeriesBound bound_from(const TruncatedSeries& slack) {
    SeriesBound out;
    out.slack = slack;
    out.equality = true;
    for (const auto& c : slack.coefficients) {
        if (c < 0) out.holds = false;
        if (c != 0) out.equality = false;
    }
    return out;
}

inline bool strictly_positive_increasing(const std::vector<int>& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] <= (i == 0 ? 0 : v[i - 1])) return false;
    return true;
}

}  // namespace detail

/// beta0 H(pi_bar(0, m_1..m_r)) <= H(b) <= beta0 H(pi_bar(0, M_1..M_s))
/// coefficientwise up to `upto`, and e(b) <= beta0 M_1...M_s / s!.
inline MultiplicityBoundsReport multiplicity_bounds(const BettiDiagram& b, int upto) {
    MultiplicityBoundsReport report;
    report.truncation = upto;
    report.shifts = shift_bounds(b);
    report.beta0 = b.at(0, 0);
    report.codim = codimension(b);
    report.projective_dimension = b.projective_dimension();
    report.cohen_macaulay = report.codim == report.projective_dimension;
    report.pure = true;
    for (int i = 0; i <= report.projective_dimension; ++i)
        if (b.min_degree(i) != b.max_degree(i)) report.pure = false;

    if (!detail::strictly_positive_increasing(report.shifts.minimal)) {
        report.applicable = false;
        report.reason = "minimal shifts are not strictly increasing";
        return report;
    }
    if (!detail::strictly_positive_increasing(report.shifts.maximal)) {
        report.applicable = false;
        report.reason = "maximal shifts are not strictly increasing";
        return report;
    }

    auto degrees_from = [](const std::vector<int>& shifts) {
        std::vector<int> d{0};
        d.insert(d.end(), shifts.begin(), shifts.end());
        return DegreeSequence(std::move(d));
    };
    const int n = b.ambient();
    const TruncatedSeries hb = expand_series(hilbert_series(b), upto);
    const TruncatedSeries lo = expand_series(
        report.beta0 * hilbert_series(normalized_pure_diagram(degrees_from(report.shifts.minimal), n).diagram()), upto);
    const TruncatedSeries hi = expand_series(
        report.beta0 * hilbert_series(normalized_pure_diagram(degrees_from(report.shifts.maximal), n).diagram()), upto);
    report.lower = detail::bound_from(series_difference(hb, lo));
    report.upper = detail::bound_from(series_difference(hi, hb));

    report.multiplicity = multiplicity(b);
    Integer numerator = 1, factorial = 1;
    for (std::size_t i = 0; i < report.shifts.maximal.size(); ++i) {
        numerator *= report.shifts.maximal[i];
        factorial *= static_cast<long>(i + 1);
    }
    Rational ratio(numerator, factorial);
    ratio.canonicalize();
    report.multiplicity_bound = report.beta0 * ratio;
    report.multiplicity_slack = report.multiplicity_bound - report.multiplicity;
    report.multiplicity_holds = report.multiplicity_slack >= 0;
    report.multiplicity_equality = report.multiplicity_slack == 0;
    return report;
}

inline int default_truncation(const BettiDiagram& b) {
    const int high = b.is_zero() ? 0 : window_of(b).high;
    return std::max(0, high + b.ambient() + 10);
}

}  // namespace bettifan
