#pragma once

#include <gmpxx.h>

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bettifan/errors.hpp"

namespace bettifan {

// GMP keeps mpq_class in canonical form (positive denominator, reduced) as
// long as every value is built through the helpers below or arithmetic.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& q) { return q.get_str(10); }

inline std::string to_string(const Integer& z) { return z.get_str(10); }

/// Parses `[+-]digits[/digits]`. Returns nullopt on any other input,
/// including a zero denominator.
inline std::optional<Rational> try_parse_rational(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::size_t pos = 0;
    std::string num;
    if (text[pos] == '+' || text[pos] == '-') {
        if (text[pos] == '-') num.push_back('-');
        ++pos;
    }
    const std::size_t num_begin = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) num.push_back(text[pos++]);
    if (pos == num_begin) return std::nullopt;
    std::string den = "1";
    if (pos < text.size()) {
        if (text[pos] != '/') return std::nullopt;
        ++pos;
        const std::size_t den_begin = pos;
        den.clear();
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) den.push_back(text[pos++]);
        if (pos == den_begin || pos != text.size()) return std::nullopt;
    }
    Integer n(num, 10);
    Integer d(den, 10);
    if (d == 0) return std::nullopt;
    Rational q(n, d);
    q.canonicalize();
    return q;
}

inline Rational parse_rational(std::string_view text) {
    auto q = try_parse_rational(text);
    if (!q) throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
    return *q;
}

}  // namespace bettifan
