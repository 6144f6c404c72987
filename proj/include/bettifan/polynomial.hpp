#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>

#include "bettifan/rational.hpp"

namespace bettifan {

/// Sparse Laurent polynomial in t with exact rational coefficients.
/// Zero coefficients are never stored.
class LaurentPolynomial {
public:
    LaurentPolynomial() = default;

    static LaurentPolynomial monomial(int exponent, const Rational& coefficient = 1) {
        LaurentPolynomial p;
        p.add_term(exponent, coefficient);
        return p;
    }

    /// (1 - t)^k
    static LaurentPolynomial one_minus_t_power(int k) {
        LaurentPolynomial p = monomial(0);
        const LaurentPolynomial factor = monomial(0) - monomial(1);
        for (int i = 0; i < k; ++i) p = p * factor;
        return p;
    }

    void add_term(int exponent, const Rational& coefficient) {
        if (coefficient == 0) return;
        auto [it, inserted] = terms_.try_emplace(exponent, coefficient);
        if (!inserted) {
            it->second += coefficient;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Rational coefficient(int exponent) const {
        auto it = terms_.find(exponent);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<int, Rational>& terms() const { return terms_; }

    /// Only meaningful when nonzero.
    int min_degree() const { return terms_.begin()->first; }
    int max_degree() const { return terms_.rbegin()->first; }

    Rational evaluate(const Rational& t) const {
        Rational sum = 0;
        for (const auto& [e, c] : terms_) {
            Rational power = 1;
            if (e >= 0) {
                for (int i = 0; i < e; ++i) power *= t;
            } else {
                for (int i = 0; i < -e; ++i) power /= t;
            }
            sum += c * power;
        }
        return sum;
    }

    /// Exact quotient by (1 - t), or nullopt if (1 - t) does not divide.
    std::optional<LaurentPolynomial> divide_by_one_minus_t() const {
        if (is_zero()) return LaurentPolynomial{};
        LaurentPolynomial quotient;
        Rational running = 0;
        for (int e = min_degree(); e < max_degree(); ++e) {
            running += coefficient(e);
            quotient.add_term(e, running);
        }
        running += coefficient(max_degree());
        if (running != 0) return std::nullopt;
        return quotient;
    }

    /// Largest k with (1 - t)^k dividing this polynomial. Undefined on zero.
    int one_minus_t_valuation() const {
        int k = 0;
        LaurentPolynomial p = *this;
        while (auto q = p.divide_by_one_minus_t()) {
            p = std::move(*q);
            ++k;
        }
        return k;
    }

    LaurentPolynomial& operator+=(const LaurentPolynomial& other) {
        for (const auto& [e, c] : other.terms_) add_term(e, c);
        return *this;
    }
    LaurentPolynomial& operator-=(const LaurentPolynomial& other) {
        for (const auto& [e, c] : other.terms_) add_term(e, -c);
        return *this;
    }
    LaurentPolynomial& operator*=(const Rational& scalar) {
        if (scalar == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= scalar;
        return *this;
    }

    friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
    friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
    friend LaurentPolynomial operator*(LaurentPolynomial a, const Rational& s) { return a *= s; }
    friend LaurentPolynomial operator*(const Rational& s, LaurentPolynomial a) { return a *= s; }
    friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        LaurentPolynomial product;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) product.add_term(ea + eb, ca * cb);
        return product;
    }
    friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) { return a.terms_ == b.terms_; }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            Rational magnitude = abs(c);
            if (first) {
                if (c < 0) out += "-";
            } else {
                out += c < 0 ? " - " : " + ";
            }
            first = false;
            const bool unit = magnitude == 1;
            if (!unit || e == 0) out += bettifan::to_string(magnitude);
            if (e != 0) {
                if (!unit) out += "*";
                out += "t";
                if (e != 1) out += "^" + std::to_string(e);
            }
        }
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const LaurentPolynomial& p) { return os << p.to_string(); }

private:
    std::map<int, Rational> terms_;
};

}  // namespace bettifan
