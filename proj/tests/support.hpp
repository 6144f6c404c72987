#pragma once

// Shared helpers for the test binaries: fixture access, seeded generators,
// and brute-force oracles that avoid the library's own combinatorics.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bettifan/bettifan.hpp"

namespace testing_support {

using namespace bettifan;

inline std::string fixture_path(const std::string& name) { return std::string(BETTIFAN_FIXTURES) + "/" + name; }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline std::string read_fixture(const std::string& name) { return read_file(fixture_path(name)); }

inline BettiDiagram example_quotient() {
    BettiDiagram b(3);
    b.set(0, 0, 1);
    b.set(1, 2, 2);
    b.set(1, 3, 1);
    b.set(2, 3, 1);
    b.set(2, 4, 2);
    b.set(3, 5, 1);
    return b;
}

/// Every window with ambient <= max_n, rows M = 0 and N - M <= max_gap, and
/// every admissible minimal codimension.
inline std::vector<Window> small_windows(int max_n, int max_gap, int low = 0) {
    std::vector<Window> out;
    for (int n = 0; n <= max_n; ++n)
        for (int gap = 0; gap <= max_gap; ++gap)
            for (int s = 0; s <= n; ++s) out.emplace_back(n, low, low + gap, s);
    return out;
}

// ---------------------------------------------------------------------------
// Oracles

/// Degree sequences of a window by direct recursion over the box constraints.
inline std::vector<std::vector<int>> oracle_sequences(const Window& w) {
    std::vector<std::vector<int>> out;
    std::vector<int> d;
    std::function<void()> grow = [&]() {
        const int i = static_cast<int>(d.size());
        if (i > 0 && i - 1 >= w.min_codim) out.push_back(d);
        if (i > w.ambient) return;
        for (int v = w.low + i; v <= w.high + i; ++v) {
            if (!d.empty() && v <= d.back()) continue;
            d.push_back(v);
            grow();
            d.pop_back();
        }
    };
    grow();
    return out;
}

/// The partial order written out from its definition.
inline bool oracle_leq(const std::vector<int>& p, const std::vector<int>& q) {
    if (p.size() < q.size()) return false;
    for (std::size_t i = 0; i < q.size(); ++i)
        if (p[i] > q[i]) return false;
    return true;
}

/// Maximal chains of the window as index paths, from the Hasse diagram
/// computed by the quadratic "nothing strictly between" test.
struct OracleFan {
    std::vector<std::vector<int>> elements;
    std::vector<std::vector<int>> chains;  // indices into elements
};

inline OracleFan oracle_fan(const Window& w, std::size_t limit = 200000) {
    OracleFan fan;
    fan.elements = oracle_sequences(w);
    const std::size_t size = fan.elements.size();
    auto less = [&](std::size_t a, std::size_t b) {
        return a != b && oracle_leq(fan.elements[a], fan.elements[b]);
    };
    std::vector<std::vector<std::size_t>> up(size);
    for (std::size_t a = 0; a < size; ++a)
        for (std::size_t b = 0; b < size; ++b) {
            if (!less(a, b)) continue;
            bool between = false;
            for (std::size_t c = 0; c < size && !between; ++c) between = less(a, c) && less(c, b);
            if (!between) up[a].push_back(b);
        }
    std::vector<std::size_t> bottoms, tops;
    for (std::size_t a = 0; a < size; ++a) {
        bool minimal = true, maximal = true;
        for (std::size_t b = 0; b < size; ++b) {
            if (less(b, a)) minimal = false;
            if (less(a, b)) maximal = false;
        }
        if (minimal) bottoms.push_back(a);
        if (maximal) tops.push_back(a);
    }
    // Longest paths from a minimal element to a maximal one.
    std::vector<int> path;
    std::size_t best = 0;
    std::vector<std::vector<int>> found;
    std::function<void(std::size_t)> walk = [&](std::size_t a) {
        path.push_back(static_cast<int>(a));
        if (up[a].empty()) {
            if (path.size() > best) {
                best = path.size();
                found.clear();
            }
            if (path.size() == best && found.size() < limit) found.push_back(path);
        }
        for (std::size_t b : up[a]) walk(b);
        path.pop_back();
    };
    for (std::size_t a : bottoms) walk(a);
    fan.chains = std::move(found);
    return fan;
}

/// Numberings checked cell by cell over every permutation (tiny windows).
inline std::size_t oracle_tableau_count(int rows, int cols) {
    const int cells = rows * cols;
    std::vector<int> p(cells);
    for (int k = 0; k < cells; ++k) p[k] = k + 1;
    std::size_t count = 0;
    do {
        bool ok = true;
        for (int r = 0; r < rows && ok; ++r)
            for (int c = 0; c < cols && ok; ++c) {
                const int v = p[r * cols + c];
                if (c + 1 < cols && p[r * cols + c + 1] >= v) ok = false;
                if (r + 1 < rows && p[(r + 1) * cols + c] <= v) ok = false;
            }
        if (ok) ++count;
    } while (std::next_permutation(p.begin(), p.end()));
    return count;
}

/// Standard Young tableaux of a rectangle by the hook length formula.
inline Integer hook_length_count(int rows, int cols) {
    Integer num = 1, den = 1;
    for (int k = 2; k <= rows * cols; ++k) num *= k;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) den *= (rows - r) + (cols - c) - 1;
    return num / den;
}

/// Betti number of a pure resolution straight from the product formula.
inline Rational oracle_pure_entry(const std::vector<int>& d, std::size_t i) {
    Rational value = 1;
    for (std::size_t j = 0; j < d.size(); ++j)
        if (j != i) value /= std::abs(d[j] - d[i]);
    return value;
}

/// Hilbert function of k[x,y,z]/(x^2, xy, xz^2) by counting standard monomials.
inline int oracle_monomials(int degree) {
    int count = 0;
    for (int a = 0; a <= degree; ++a)
        for (int b = 0; a + b <= degree; ++b) {
            const int c = degree - a - b;
            const bool killed = a >= 2 || (a >= 1 && b >= 1) || (a >= 1 && c >= 2);
            if (!killed) ++count;
        }
    return count;
}

// ---------------------------------------------------------------------------
// Random cone members

/// lcm of the denominators of pi(d): scaling by it makes the diagram integral.
inline Integer integral_scale(const DegreeSequence& d, int n) {
    Integer l = 1;
    const PureDiagram p = pure_diagram(d, n);
    for (int i = 0; i <= d.codim(); ++i) {
        const Integer den = p.entry(i).get_den();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
    }
    return l;
}

struct RandomMember {
    Window window;
    Chain chain;           // maximal chain it was drawn from
    std::vector<DegreeSequence> support;
    std::vector<Rational> coefficients;  // with respect to pi(d)
    BettiDiagram diagram;
};

/// Positive integer combination of integral multiples of pure diagrams along
/// a random subchain of a random maximal chain of w.
inline RandomMember random_member(const Window& w, std::mt19937_64& rng) {
    const auto chains = maximal_chains(w);
    const Chain& chain = chains[std::uniform_int_distribution<std::size_t>(0, chains.size() - 1)(rng)];
    std::vector<DegreeSequence> support;
    std::bernoulli_distribution keep(0.4);
    for (const auto& d : chain.elements())
        if (keep(rng)) support.push_back(d);
    if (support.empty()) support.push_back(chain[std::uniform_int_distribution<std::size_t>(0, chain.size() - 1)(rng)]);
    RandomMember m{w, chain, support, {}, BettiDiagram(w.ambient)};
    std::uniform_int_distribution<int> mult(1, 4);
    for (const auto& d : support) {
        const Rational c = Rational(integral_scale(d, w.ambient) * mult(rng));
        m.coefficients.push_back(c);
        m.diagram += c * pure_diagram(d, w.ambient).diagram();
    }
    return m;
}

}  // namespace testing_support
