#include <gtest/gtest.h>

#include "support.hpp"

using namespace bettifan;
using namespace testing_support;

TEST(Rational, ParsesCanonicalForms) {
    EXPECT_EQ(parse_rational("3"), Rational(3));
    EXPECT_EQ(parse_rational("-2/4"), make_rational(-1, 2));
    EXPECT_EQ(parse_rational("+1/6"), make_rational(1, 6));
    EXPECT_EQ(to_string(parse_rational("10/4")), "5/2");
}

TEST(Rational, RejectsMalformedLiterals) {
    for (const char* bad : {"", "1/0", "1.5", "1e3", "/2", "2/", "--1", "1/-2", " 1", "x"})
        EXPECT_FALSE(try_parse_rational(bad).has_value()) << bad;
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
}

TEST(Polynomial, ArithmeticAndDivision) {
    const LaurentPolynomial p = LaurentPolynomial::one_minus_t_power(3);
    EXPECT_EQ(p.coefficient(0), 1);
    EXPECT_EQ(p.coefficient(1), -3);
    EXPECT_EQ(p.coefficient(2), 3);
    EXPECT_EQ(p.coefficient(3), -1);
    EXPECT_EQ(p.one_minus_t_valuation(), 3);
    const auto q = p.divide_by_one_minus_t();
    ASSERT_TRUE(q);
    EXPECT_EQ(*q, LaurentPolynomial::one_minus_t_power(2));
    EXPECT_FALSE(LaurentPolynomial::monomial(2, 1).divide_by_one_minus_t());
    EXPECT_EQ(p.evaluate(2), -1);
}

TEST(Diagram, EntryBookkeeping) {
    BettiDiagram b(2);
    EXPECT_TRUE(b.is_zero());
    b.set(1, 3, 2);
    b.add(1, 3, -2);
    EXPECT_TRUE(b.is_zero());
    EXPECT_THROW(b.set(3, 0, 1), IndexError);
    EXPECT_THROW(b.set(-1, 0, 1), IndexError);
    EXPECT_THROW(BettiDiagram(2) + BettiDiagram(3), InvalidDiagram);
}

TEST(Diagram, ColumnSummaries) {
    const BettiDiagram b = example_quotient();
    EXPECT_EQ(b.projective_dimension(), 3);
    EXPECT_EQ(b.column_sum(1), 3);
    EXPECT_EQ(b.min_degree(2), 3);
    EXPECT_EQ(b.max_degree(2), 4);
    EXPECT_TRUE(b.is_nonnegative());
    EXPECT_TRUE(b.has_integer_entries());
    const RowRange rows = window_of(b);
    EXPECT_EQ(rows.low, 0);
    EXPECT_EQ(rows.high, 2);
}

TEST(DegreeSequence, Validation) {
    EXPECT_THROW(DegreeSequence({}), InvalidDegreeSequence);
    EXPECT_THROW(DegreeSequence({0, 2, 2}), InvalidDegreeSequence);
    EXPECT_THROW(DegreeSequence({3, 1}), InvalidDegreeSequence);
    const DegreeSequence d{0, 2, 3, 5};
    EXPECT_EQ(d.codim(), 3);
    EXPECT_EQ(d.to_string(), "(0,2,3,5)");
}

TEST(PureDiagram, MatchesProductFormula) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = std::uniform_int_distribution<int>(0, 5)(rng);
        const int s = std::uniform_int_distribution<int>(0, n)(rng);
        std::vector<int> d{std::uniform_int_distribution<int>(-3, 3)(rng)};
        for (int i = 1; i <= s; ++i) d.push_back(d.back() + std::uniform_int_distribution<int>(1, 4)(rng));
        const PureDiagram p = pure_diagram(DegreeSequence(d), n);
        for (int i = 0; i <= s; ++i) EXPECT_EQ(p.diagram().at(i, d[i]), oracle_pure_entry(d, i));
        EXPECT_EQ(p.diagram().entries().size(), d.size());
    }
}

TEST(PureDiagram, CodimensionMustFit) {
    EXPECT_THROW(pure_diagram(DegreeSequence({0, 1, 2, 3}), 2), CodimensionExceedsAmbient);
}

TEST(PureDiagram, SatisfiesHerzogKuehlAndHasCodimension) {
    for (const Window& w : small_windows(4, 2))
        for (const auto& d : pure_diagrams_in(w)) {
            const BettiDiagram b = pure_diagram(d, w.ambient).diagram();
            EXPECT_TRUE(satisfies_hk(b, d.codim())) << d.to_string();
            EXPECT_FALSE(satisfies_hk(b, d.codim() + 1)) << d.to_string();
            EXPECT_EQ(codimension(b), d.codim());
        }
}

TEST(HerzogKuehl, ResidualsFromDefinition) {
    const BettiDiagram b = example_quotient();
    const auto r = hk_residuals(b, 3);
    ASSERT_EQ(r.size(), 3u);
    // sum (-1)^i beta_ij j^m computed by hand from the table
    EXPECT_EQ(r[0], 1 - 3 + 3 - 1);
    EXPECT_EQ(r[1], 0 - (2 * 2 + 3) + (3 + 2 * 4) - 5);
    EXPECT_EQ(r[2], 0 - (2 * 4 + 9) + (9 + 2 * 16) - 25);
    EXPECT_EQ(codimension(b), 1);
    for (int s = 0; s < 5; ++s)
        for (const auto& v : hk_residuals(BettiDiagram(3), s)) EXPECT_EQ(v, 0);
    EXPECT_THROW(codimension(BettiDiagram(3)), UndefinedOnZero);
}

TEST(Normalized, ScalesGeneratorToOne) {
    const NormalizedPureDiagram p = normalized_pure_diagram(DegreeSequence({0, 2, 3, 5}), 3);
    EXPECT_EQ(p.diagram().at(0, 0), 1);
    EXPECT_EQ(p.diagram().at(1, 2), 5);
    EXPECT_EQ(p.diagram().at(3, 5), 1);
    EXPECT_EQ(p.scale(), 30);
    EXPECT_THROW(normalized_pure_diagram(DegreeSequence({1, 2}), 2), NotGeneratedInDegreeZero);
}

TEST(Window, Shape) {
    const Window w(3, 0, 2, 0);
    EXPECT_EQ(w.rows(), 3);
    EXPECT_EQ(w.cells(), 12);
    EXPECT_EQ(w.minimum(), DegreeSequence({0, 1, 2, 3}));
    EXPECT_EQ(w.maximum(), DegreeSequence({2}));
    EXPECT_EQ(Window(3, 0, 2, 2).maximum(), DegreeSequence({2, 3, 4}));
    EXPECT_THROW(Window(2, 1, 0, 0), InvalidWindow);
    EXPECT_THROW(Window(2, 0, 1, 3), InvalidWindow);
    EXPECT_TRUE(w.contains(example_quotient()));
    EXPECT_FALSE(Window(3, 0, 1, 0).contains(example_quotient()));
}
