#pragma once

// Betti diagrams, degree sequences and pure diagrams.

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bettifan/errors.hpp"
#include "bettifan/polynomial.hpp"
#include "bettifan/rational.hpp"

namespace bettifan {

/// Graded Betti numbers beta_{i,j} of a module over k[x_1..x_n], stored
/// sparsely by (homological index i, internal degree j). Display code uses
/// the row label j - i.
class BettiDiagram {
public:
    using Key = std::pair<int, int>;

    explicit BettiDiagram(int n = 0) : n_(n) {
        if (n < 0) throw InvalidDiagram("ambient variable count must be >= 0, got " + std::to_string(n));
    }

    int ambient() const noexcept { return n_; }

    Rational at(int i, int j) const {
        auto it = entries_.find({i, j});
        return it == entries_.end() ? Rational(0) : it->second;
    }

    void set(int i, int j, const Rational& value) {
        check_index(i);
        if (value == 0)
            entries_.erase({i, j});
        else
            entries_[{i, j}] = value;
    }

    void add(int i, int j, const Rational& value) {
        check_index(i);
        if (value == 0) return;
        auto [it, inserted] = entries_.try_emplace({i, j}, value);
        if (!inserted) {
            it->second += value;
            if (it->second == 0) entries_.erase(it);
        }
    }

    /// Nonzero entries ordered by (i, j).
    const std::map<Key, Rational>& entries() const noexcept { return entries_; }

    bool is_zero() const noexcept { return entries_.empty(); }

    /// Largest i with a nonzero entry, or -1 for the zero diagram.
    int projective_dimension() const {
        return entries_.empty() ? -1 : entries_.rbegin()->first.first;
    }

    std::optional<int> min_degree(int i) const {
        auto it = entries_.lower_bound({i, std::numeric_limits<int>::min()});
        if (it == entries_.end() || it->first.first != i) return std::nullopt;
        return it->first.second;
    }

    std::optional<int> max_degree(int i) const {
        auto it = entries_.upper_bound({i, std::numeric_limits<int>::max()});
        if (it == entries_.begin()) return std::nullopt;
        --it;
        if (it->first.first != i) return std::nullopt;
        return it->first.second;
    }

    Rational column_sum(int i) const {
        Rational sum = 0;
        for (const auto& [key, v] : entries_)
            if (key.first == i) sum += v;
        return sum;
    }

    bool is_nonnegative() const {
        return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.second > 0; });
    }

    bool has_integer_entries() const {
        return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return is_integer(e.second); });
    }

    BettiDiagram& operator+=(const BettiDiagram& other) {
        check_same_ambient(other);
        for (const auto& [key, v] : other.entries_) add(key.first, key.second, v);
        return *this;
    }
    BettiDiagram& operator-=(const BettiDiagram& other) {
        check_same_ambient(other);
        for (const auto& [key, v] : other.entries_) add(key.first, key.second, -v);
        return *this;
    }
    BettiDiagram& operator*=(const Rational& scalar) {
        if (scalar == 0) {
            entries_.clear();
            return *this;
        }
        for (auto& [key, v] : entries_) v *= scalar;
        return *this;
    }

    friend BettiDiagram operator+(BettiDiagram a, const BettiDiagram& b) { return a += b; }
    friend BettiDiagram operator-(BettiDiagram a, const BettiDiagram& b) { return a -= b; }
    friend BettiDiagram operator*(BettiDiagram a, const Rational& s) { return a *= s; }
    friend BettiDiagram operator*(const Rational& s, BettiDiagram a) { return a *= s; }
    friend bool operator==(const BettiDiagram& a, const BettiDiagram& b) {
        return a.n_ == b.n_ && a.entries_ == b.entries_;
    }

private:
    void check_index(int i) const {
        if (i < 0 || i > n_)
            throw IndexError("homological index " + std::to_string(i) + " outside [0, " + std::to_string(n_) + "]");
    }
    void check_same_ambient(const BettiDiagram& other) const {
        if (other.n_ != n_)
            throw InvalidDiagram("ambient mismatch: " + std::to_string(n_) + " vs " + std::to_string(other.n_));
    }

    int n_;
    std::map<Key, Rational> entries_;
};

/// Strictly increasing integers d_0 < d_1 < ... < d_s.
class DegreeSequence {
public:
    DegreeSequence() = default;
    explicit DegreeSequence(std::vector<int> degrees) : d_(std::move(degrees)) {
        if (d_.empty()) throw InvalidDegreeSequence("empty degree sequence");
        for (std::size_t i = 1; i < d_.size(); ++i)
            if (d_[i] <= d_[i - 1]) throw InvalidDegreeSequence("not strictly increasing: " + to_string());
    }
    DegreeSequence(std::initializer_list<int> degrees) : DegreeSequence(std::vector<int>(degrees)) {}

    /// s, the number of degrees minus one.
    int codim() const noexcept { return static_cast<int>(d_.size()) - 1; }
    std::size_t size() const noexcept { return d_.size(); }
    int operator[](std::size_t i) const { return d_[i]; }
    int back() const { return d_.back(); }
    const std::vector<int>& values() const noexcept { return d_; }
    auto begin() const noexcept { return d_.begin(); }
    auto end() const noexcept { return d_.end(); }

    std::string to_string() const {
        std::string out = "(";
        for (std::size_t i = 0; i < d_.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(d_[i]);
        }
        return out + ")";
    }

    friend bool operator==(const DegreeSequence&, const DegreeSequence&) = default;
    friend auto operator<=>(const DegreeSequence&, const DegreeSequence&) = default;

private:
    std::vector<int> d_;
};

/// Entry (-1)^i * prod_{j != i} 1/(d_j - d_i) of the pure diagram at column i.
inline Rational pure_entry(const DegreeSequence& d, int i) {
    Integer denominator = 1;
    for (int j = 0; j <= d.codim(); ++j)
        if (j != i) denominator *= d[j] - d[i];
    Rational value(Integer(i % 2 == 0 ? 1 : -1), denominator);
    value.canonicalize();
    return value;
}

class PureDiagram {
public:
    PureDiagram(DegreeSequence degrees, BettiDiagram diagram)
        : degrees_(std::move(degrees)), diagram_(std::move(diagram)) {}

    const DegreeSequence& degrees() const noexcept { return degrees_; }
    const BettiDiagram& diagram() const noexcept { return diagram_; }
    int codim() const noexcept { return degrees_.codim(); }
    int ambient() const noexcept { return diagram_.ambient(); }
    Rational entry(int i) const { return diagram_.at(i, degrees_[i]); }

    friend bool operator==(const PureDiagram& a, const PureDiagram& b) { return a.diagram_ == b.diagram_; }

private:
    DegreeSequence degrees_;
    BettiDiagram diagram_;
};

inline PureDiagram pure_diagram(const DegreeSequence& d, int n) {
    if (d.size() == 0) throw InvalidDegreeSequence("empty degree sequence");
    if (d.codim() > n)
        throw CodimensionExceedsAmbient(d.to_string() + " has codimension " + std::to_string(d.codim()) +
                                        " > n = " + std::to_string(n));
    BettiDiagram b(n);
    for (int i = 0; i <= d.codim(); ++i) b.set(i, d[i], pure_entry(d, i));
    return PureDiagram(d, std::move(b));
}

/// Pure diagram with d_0 = 0 scaled by d_1 d_2 ... d_s, so the (0,0) entry is 1.
class NormalizedPureDiagram {
public:
    explicit NormalizedPureDiagram(const PureDiagram& p) : degrees_(p.degrees()), diagram_(p.diagram()) {
        if (degrees_[0] != 0)
            throw NotGeneratedInDegreeZero("normalization needs d_0 = 0, got " + degrees_.to_string());
        scale_ = 1;
        for (int i = 1; i <= degrees_.codim(); ++i) scale_ *= degrees_[i];
        diagram_ *= Rational(scale_);
    }

    const DegreeSequence& degrees() const noexcept { return degrees_; }
    const BettiDiagram& diagram() const noexcept { return diagram_; }
    const Integer& scale() const noexcept { return scale_; }
    int codim() const noexcept { return degrees_.codim(); }
    int ambient() const noexcept { return diagram_.ambient(); }

private:
    DegreeSequence degrees_;
    BettiDiagram diagram_;
    Integer scale_;
};

inline NormalizedPureDiagram normalize(const PureDiagram& p) { return NormalizedPureDiagram(p); }

inline NormalizedPureDiagram normalized_pure_diagram(const DegreeSequence& d, int n) {
    return normalize(pure_diagram(d, n));
}

/// Herzog-Kuehl residuals sum_{i,j} (-1)^i beta_{i,j} j^m for m = 0..s-1.
inline std::vector<Rational> hk_residuals(const BettiDiagram& b, int s) {
    if (s < 0) throw std::invalid_argument("negative equation count");
    std::vector<Rational> residuals(static_cast<std::size_t>(s), Rational(0));
    for (const auto& [key, value] : b.entries()) {
        const auto [i, j] = key;
        Rational term = (i % 2 == 0) ? value : Rational(-value);
        for (int m = 0; m < s; ++m) {
            residuals[m] += term;
            term *= j;
        }
    }
    return residuals;
}

inline bool satisfies_hk(const BettiDiagram& b, int s) {
    for (const auto& r : hk_residuals(b, s))
        if (r != 0) return false;
    return true;
}

/// S(b, t) = sum (-1)^i beta_{i,j} t^j.
inline LaurentPolynomial numerator_polynomial(const BettiDiagram& b) {
    LaurentPolynomial s;
    for (const auto& [key, value] : b.entries()) s.add_term(key.second, key.first % 2 == 0 ? value : Rational(-value));
    return s;
}

/// Largest s such that (1 - t)^s divides S(b, t).
inline int codimension(const BettiDiagram& b) {
    if (b.is_zero()) throw UndefinedOnZero("codimension of the zero diagram");
    return numerator_polynomial(b).one_minus_t_valuation();
}

/// Least and largest row label j - i over the nonzero entries.
struct RowRange {
    int low;
    int high;
    friend bool operator==(const RowRange&, const RowRange&) = default;
};

inline RowRange window_of(const BettiDiagram& b) {
    if (b.is_zero()) throw UndefinedOnZero("window of the zero diagram");
    RowRange r{std::numeric_limits<int>::max(), std::numeric_limits<int>::min()};
    for (const auto& [key, value] : b.entries()) {
        const int row = key.second - key.first;
        r.low = std::min(r.low, row);
        r.high = std::max(r.high, row);
    }
    return r;
}

}  // namespace bettifan
