#pragma once

// The partial order on pure diagrams inside a bounded degree window, its
// cover relation, maximal chains and their numbered-matrix encoding.
//
// Cells of the window grid are addressed by (row, column) with row = j - i
// (between the window's low and high row) and column = homological index i.
// Walking up a maximal chain, every step empties exactly one cell: either a
// column moves one row down (its degree rises by one) or the last column
// leaves the window from the bottom row (codimension drops by one).

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bettifan/diagram.hpp"
#include "bettifan/errors.hpp"

namespace bettifan {

/// Degrees restricted to low + i <= d_i <= high + i, codimension in
/// [min_codim, ambient].
struct Window {
    int ambient = 0;
    int low = 0;
    int high = 0;
    int min_codim = 0;

    Window() = default;
    Window(int ambient_, int low_, int high_, int min_codim_ = 0)
        : ambient(ambient_), low(low_), high(high_), min_codim(min_codim_) {
        if (ambient < 0) throw InvalidWindow("ambient must be >= 0");
        if (low > high) throw InvalidWindow("low row " + std::to_string(low) + " > high row " + std::to_string(high));
        if (min_codim < 0 || min_codim > ambient)
            throw InvalidWindow("minimal codimension " + std::to_string(min_codim) + " outside [0, " +
                                std::to_string(ambient) + "]");
    }

    int rows() const noexcept { return high - low + 1; }
    int columns() const noexcept { return ambient + 1; }
    int cells() const noexcept { return rows() * columns(); }

    bool contains(const DegreeSequence& d) const {
        if (d.codim() < min_codim || d.codim() > ambient) return false;
        for (int i = 0; i <= d.codim(); ++i)
            if (d[i] < low + i || d[i] > high + i) return false;
        return true;
    }

    /// True when every nonzero entry of b sits inside the grid.
    bool contains(const BettiDiagram& b) const {
        if (b.ambient() != ambient) return false;
        for (const auto& [key, value] : b.entries()) {
            const int row = key.second - key.first;
            if (row < low || row > high) return false;
        }
        return true;
    }

    /// (low, low+1, ..., low+ambient), codimension ambient.
    DegreeSequence minimum() const {
        std::vector<int> d(columns());
        for (int i = 0; i <= ambient; ++i) d[i] = low + i;
        return DegreeSequence(std::move(d));
    }

    /// (high, high+1, ..., high+min_codim).
    DegreeSequence maximum() const {
        std::vector<int> d(min_codim + 1);
        for (int i = 0; i <= min_codim; ++i) d[i] = high + i;
        return DegreeSequence(std::move(d));
    }

    std::string to_string() const {
        return "n=" + std::to_string(ambient) + " M=" + std::to_string(low) + " N=" + std::to_string(high) +
               " s=" + std::to_string(min_codim);
    }

    friend bool operator==(const Window&, const Window&) = default;
};

struct Cell {
    int row;
    int column;
    friend bool operator==(const Cell&, const Cell&) = default;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// pi(d_0..d_s) <= pi(e_0..e_t) iff s >= t and d_i <= e_i for i <= t.
inline bool leq(const DegreeSequence& p, const DegreeSequence& q) {
    if (p.codim() < q.codim()) return false;
    for (int i = 0; i <= q.codim(); ++i)
        if (p[i] > q[i]) return false;
    return true;
}

inline bool leq(const PureDiagram& p, const PureDiagram& q) { return leq(p.degrees(), q.degrees()); }

inline bool less(const DegreeSequence& p, const DegreeSequence& q) { return p != q && leq(p, q); }

/// Upper covers of p inside w, ordered: degree raises by column, then the drop.
inline std::vector<DegreeSequence> upper_covers(const DegreeSequence& p, const Window& w) {
    std::vector<DegreeSequence> out;
    const int s = p.codim();
    for (int c = 0; c <= s; ++c) {
        if (p[c] + 1 > w.high + c) continue;
        if (c < s && p[c] + 1 >= p[c + 1]) continue;
        std::vector<int> d = p.values();
        ++d[c];
        out.emplace_back(std::move(d));
    }
    if (s > w.min_codim && p[s] == w.high + s) {
        std::vector<int> d = p.values();
        d.pop_back();
        out.emplace_back(std::move(d));
    }
    return out;
}

/// Lower covers of q inside w.
inline std::vector<DegreeSequence> lower_covers(const DegreeSequence& q, const Window& w) {
    std::vector<DegreeSequence> out;
    const int t = q.codim();
    for (int c = 0; c <= t; ++c) {
        if (q[c] - 1 < w.low + c) continue;
        if (c > 0 && q[c] - 1 <= q[c - 1]) continue;
        std::vector<int> d = q.values();
        --d[c];
        out.emplace_back(std::move(d));
    }
    if (t < w.ambient && w.high + t + 1 > q[t]) {
        std::vector<int> d = q.values();
        d.push_back(w.high + t + 1);
        out.emplace_back(std::move(d));
    }
    return out;
}

/// q covers p in w: q raises exactly one degree of p by one, or drops the
/// last degree of p when it sits on the bottom row of the window.
inline bool covers(const DegreeSequence& p, const DegreeSequence& q, const Window& w) {
    if (!w.contains(p) || !w.contains(q)) return false;
    if (q.codim() == p.codim()) {
        int changed = -1;
        for (int i = 0; i <= p.codim(); ++i) {
            if (p[i] == q[i]) continue;
            if (q[i] != p[i] + 1 || changed != -1) return false;
            changed = i;
        }
        return changed != -1;
    }
    if (q.codim() == p.codim() - 1) {
        for (int i = 0; i <= q.codim(); ++i)
            if (p[i] != q[i]) return false;
        return p.back() == w.high + p.codim();
    }
    return false;
}

inline bool covers(const PureDiagram& p, const PureDiagram& q, const Window& w) {
    return covers(p.degrees(), q.degrees(), w);
}

/// The cell p occupies and q no longer does, for a cover pair p < q.
inline Cell vacated_cell(const DegreeSequence& p, const DegreeSequence& q) {
    if (q.codim() < p.codim()) return Cell{p.back() - p.codim(), p.codim()};
    for (int i = 0; i <= p.codim(); ++i)
        if (p[i] != q[i]) return Cell{p[i] - i, i};
    throw NotACoverTriple("identical degree sequences " + p.to_string());
}

/// Elements in a maximal chain: (n+1)(N-M) + n - s + 1.
inline int chain_length(const Window& w) { return w.cells() - w.min_codim; }

/// All degree sequences of w, ordered by codimension (descending) then
/// lexicographically.
inline std::vector<DegreeSequence> pure_diagrams_in(const Window& w) {
    std::vector<DegreeSequence> out;
    std::vector<int> d;
    std::function<void(int, int)> extend = [&](int i, int s) {
        if (i > s) {
            out.emplace_back(d);
            return;
        }
        const int start = i == 0 ? w.low : std::max(w.low + i, d.back() + 1);
        for (int v = start; v <= w.high + i; ++v) {
            d.push_back(v);
            extend(i + 1, s);
            d.pop_back();
        }
    };
    for (int s = w.ambient; s >= w.min_codim; --s) extend(0, s);
    return out;
}

/// A strictly increasing list of degree sequences in a window, smallest first.
class Chain {
public:
    Chain(Window window, std::vector<DegreeSequence> elements) : window_(window), elements_(std::move(elements)) {
        for (const auto& d : elements_)
            if (!window_.contains(d)) throw NotAChain(d.to_string() + " outside window " + window_.to_string());
        for (std::size_t k = 1; k < elements_.size(); ++k)
            if (!less(elements_[k - 1], elements_[k]))
                throw NotAChain(elements_[k - 1].to_string() + " is not below " + elements_[k].to_string());
    }

    const Window& window() const noexcept { return window_; }
    const std::vector<DegreeSequence>& elements() const noexcept { return elements_; }
    std::size_t size() const noexcept { return elements_.size(); }
    const DegreeSequence& operator[](std::size_t k) const { return elements_[k]; }
    PureDiagram pure(std::size_t k) const { return pure_diagram(elements_[k], window_.ambient); }

    bool is_maximal() const {
        if (elements_.size() != static_cast<std::size_t>(chain_length(window_))) return false;
        if (elements_.front() != window_.minimum() || elements_.back() != window_.maximum()) return false;
        for (std::size_t k = 1; k < elements_.size(); ++k)
            if (!covers(elements_[k - 1], elements_[k], window_)) return false;
        return true;
    }

    /// Copy without the element at index k.
    Chain without(std::size_t k) const {
        std::vector<DegreeSequence> rest = elements_;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
        return Chain(window_, std::move(rest));
    }

    friend bool operator==(const Chain&, const Chain&) = default;

private:
    Window window_;
    std::vector<DegreeSequence> elements_;
};

/// Numbering of the (rows x columns) window grid, strictly decreasing along
/// rows (increasing to the left) and strictly increasing down columns.
/// Entry at (r, c) numbers the chain element that last occupies that cell;
/// when min_codim > 0 the cells (high, 0..min_codim) all belong to the
/// chain's top element and carry the largest numbers, cells() - c.
class Tableau {
public:
    Tableau() = default;
    explicit Tableau(std::vector<std::vector<int>> entries) : entries_(std::move(entries)) {
        if (entries_.empty() || entries_.front().empty()) throw InvalidTableau("empty tableau");
        for (const auto& row : entries_)
            if (row.size() != entries_.front().size()) throw InvalidTableau("ragged rows");
    }

    int rows() const noexcept { return static_cast<int>(entries_.size()); }
    int columns() const noexcept { return entries_.empty() ? 0 : static_cast<int>(entries_.front().size()); }
    int at(int r, int c) const { return entries_[r][c]; }
    const std::vector<std::vector<int>>& entries() const noexcept { return entries_; }

    /// Throws InvalidTableau unless this is a valid numbering for w.
    void validate(const Window& w) const {
        if (rows() != w.rows() || columns() != w.columns())
            throw InvalidTableau("shape " + std::to_string(rows()) + "x" + std::to_string(columns()) +
                                 " does not match window " + w.to_string());
        const int total = w.cells();
        std::vector<bool> seen(total + 1, false);
        for (int r = 0; r < rows(); ++r)
            for (int c = 0; c < columns(); ++c) {
                const int v = entries_[r][c];
                if (v < 1 || v > total || seen[v])
                    throw InvalidTableau("entries are not a permutation of 1.." + std::to_string(total));
                seen[v] = true;
                if (c + 1 < columns() && entries_[r][c + 1] >= v)
                    throw InvalidTableau("row " + std::to_string(r) + " not increasing to the left");
                if (r + 1 < rows() && entries_[r + 1][c] <= v)
                    throw InvalidTableau("column " + std::to_string(c) + " not increasing downwards");
            }
        for (int c = 0; c <= w.min_codim; ++c)
            if (entries_[rows() - 1][c] != total - c)
                throw InvalidTableau("bottom-row cell " + std::to_string(c) +
                                     " must carry " + std::to_string(total - c) + " when min_codim = " +
                                     std::to_string(w.min_codim));
    }

    friend bool operator==(const Tableau&, const Tableau&) = default;
    friend auto operator<=>(const Tableau&, const Tableau&) = default;

private:
    std::vector<std::vector<int>> entries_;
};

inline Chain chain_from_tableau(const Tableau& t, const Window& w) {
    t.validate(w);
    const int length = chain_length(w);
    std::vector<Cell> cell_of(w.cells() + 1);
    for (int r = 0; r < t.rows(); ++r)
        for (int c = 0; c < t.columns(); ++c) cell_of[t.at(r, c)] = Cell{w.low + r, c};

    std::vector<DegreeSequence> elements;
    elements.reserve(length);
    std::vector<int> d = w.minimum().values();
    elements.emplace_back(d);
    for (int k = 1; k < length; ++k) {
        const Cell cell = cell_of[k];
        const int last = static_cast<int>(d.size()) - 1;
        if (cell.column > last || d[cell.column] - cell.column != cell.row)
            throw InvalidTableau("cell numbered " + std::to_string(k) + " is not occupied at that step");
        if (cell.row < w.high) {
            ++d[cell.column];
        } else {
            if (cell.column != last) throw InvalidTableau("bottom-row cell left before the columns to its right");
            d.pop_back();
        }
        elements.emplace_back(d);
    }
    return Chain(w, std::move(elements));
}

inline Tableau tableau_from_chain(const Chain& chain) {
    if (!chain.is_maximal()) throw ChainNotMaximal("chain is not maximal in window " + chain.window().to_string());
    const Window& w = chain.window();
    std::vector<std::vector<int>> entries(w.rows(), std::vector<int>(w.columns(), 0));
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        const Cell cell = vacated_cell(chain[k], chain[k + 1]);
        entries[cell.row - w.low][cell.column] = static_cast<int>(k) + 1;
    }
    for (int c = 0; c <= w.min_codim; ++c) entries[w.rows() - 1][c] = w.cells() - c;
    return Tableau(std::move(entries));
}

/// Visits every valid numbering of w in lexicographic (row-major) order.
/// The visitor returns false to stop early.
template <class Visitor>
void for_each_tableau(const Window& w, Visitor&& visit) {
    const int rows = w.rows();
    const int cols = w.columns();
    const int total = w.cells();
    std::vector<std::vector<int>> t(rows, std::vector<int>(cols, 0));
    std::vector<bool> used(total + 1, false);
    // The top element owns the bottom-left cells when min_codim > 0.
    auto fixed_value = [&](int r, int c) -> int { return (r == rows - 1 && c <= w.min_codim) ? total - c : 0; };
    for (int c = 0; c <= w.min_codim; ++c) used[total - c] = true;

    bool stop = false;
    std::function<void(int)> fill = [&](int index) {
        if (stop) return;
        if (index == total) {
            if (!visit(Tableau(t))) stop = true;
            return;
        }
        const int r = index / cols;
        const int c = index % cols;
        // At least the cells up and to the right come earlier; at least the
        // cells down and to the left come later.
        int lo = (r + 1) * (cols - c);
        int hi = total - (rows - r) * (c + 1) + 1;
        if (r > 0) lo = std::max(lo, t[r - 1][c] + 1);
        if (c > 0) hi = std::min(hi, t[r][c - 1] - 1);
        if (const int fixed = fixed_value(r, c); fixed != 0) {
            if (fixed < lo || fixed > hi) return;
            t[r][c] = fixed;
            fill(index + 1);
            return;
        }
        for (int v = lo; v <= hi && !stop; ++v) {
            if (used[v]) continue;
            used[v] = true;
            t[r][c] = v;
            fill(index + 1);
            used[v] = false;
        }
    };
    fill(0);
}

/// Visits every maximal chain of w once, in lexicographic tableau order.
template <class Visitor>
void for_each_maximal_chain(const Window& w, Visitor&& visit) {
    for_each_tableau(w, [&](const Tableau& t) { return visit(chain_from_tableau(t, w), t); });
}

inline std::size_t count_maximal_chains(const Window& w) {
    std::size_t count = 0;
    for_each_tableau(w, [&](const Tableau&) {
        ++count;
        return true;
    });
    return count;
}

/// Materializes all maximal chains; throws WindowTooLarge past `limit`.
inline std::vector<Chain> maximal_chains(const Window& w, std::size_t limit = 1'000'000) {
    std::vector<Chain> out;
    bool overflow = false;
    for_each_maximal_chain(w, [&](const Chain& c, const Tableau&) {
        if (out.size() == limit) {
            overflow = true;
            return false;
        }
        out.push_back(c);
        return true;
    });
    if (overflow) throw WindowTooLarge("more than " + std::to_string(limit) + " maximal chains in " + w.to_string());
    return out;
}

namespace detail {

/// Every saturated cover path from `from` to `to` (both included).
inline std::vector<std::vector<DegreeSequence>> cover_paths(const DegreeSequence& from, const DegreeSequence& to,
                                                            const Window& w) {
    std::vector<std::vector<DegreeSequence>> out;
    std::vector<DegreeSequence> path{from};
    std::function<void()> walk = [&]() {
        const DegreeSequence& here = path.back();
        if (here == to) {
            out.push_back(path);
            return;
        }
        for (auto& next : upper_covers(here, w)) {
            if (!leq(next, to)) continue;
            path.push_back(std::move(next));
            walk();
            path.pop_back();
        }
    };
    if (leq(from, to)) walk();
    return out;
}

}  // namespace detail

namespace detail {

inline std::vector<DegreeSequence> chain_anchors(const Chain& chain) {
    const Window& w = chain.window();
    std::vector<DegreeSequence> anchors;
    anchors.push_back(w.minimum());
    for (const auto& d : chain.elements())
        if (d != anchors.back()) anchors.push_back(d);
    if (anchors.back() != w.maximum()) anchors.push_back(w.maximum());
    return anchors;
}

}  // namespace detail

/// One maximal chain refining `chain` (the first one found by depth-first
/// search), without enumerating the others.
inline std::optional<Chain> extend_to_maximal(const Chain& chain) {
    const Window& w = chain.window();
    const auto anchors = detail::chain_anchors(chain);
    std::vector<DegreeSequence> elements{anchors.front()};
    for (std::size_t k = 1; k < anchors.size(); ++k) {
        const DegreeSequence& target = anchors[k];
        // Any upper cover still below the target keeps the target reachable.
        while (elements.back() != target) {
            std::optional<DegreeSequence> step;
            for (auto& next : upper_covers(elements.back(), w))
                if (leq(next, target)) {
                    step = std::move(next);
                    break;
                }
            if (!step) return std::nullopt;
            elements.push_back(std::move(*step));
        }
    }
    return Chain(w, std::move(elements));
}

/// Every maximal chain of the chain's window that contains all its elements,
/// ordered by tableau.
inline std::vector<Chain> complete_chain(const Chain& chain) {
    const Window& w = chain.window();
    const auto anchors = detail::chain_anchors(chain);

    std::vector<std::vector<DegreeSequence>> partial{{anchors.front()}};
    for (std::size_t k = 1; k < anchors.size(); ++k) {
        const auto segments = detail::cover_paths(anchors[k - 1], anchors[k], w);
        std::vector<std::vector<DegreeSequence>> next;
        for (const auto& prefix : partial)
            for (const auto& segment : segments) {
                auto extended = prefix;
                extended.insert(extended.end(), segment.begin() + 1, segment.end());
                next.push_back(std::move(extended));
            }
        partial = std::move(next);
        if (partial.empty()) break;
    }

    std::vector<std::pair<Tableau, Chain>> keyed;
    for (auto& elements : partial) {
        Chain c(w, std::move(elements));
        keyed.emplace_back(tableau_from_chain(c), std::move(c));
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Chain> out;
    for (auto& [t, c] : keyed) out.push_back(std::move(c));
    return out;
}

}  // namespace bettifan
