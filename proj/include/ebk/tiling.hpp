#pragma once

// Machinery for d*d' not a multiple of k. The coefficient-matrix space
// splits into two cyclic blocks (one grid side a multiple of k) plus a
// corner of shape (k+r) x (k+r'). The corner is partitioned into
// generalized k-diagonals (k cells, distinct rows and columns) and
// L_{k+s} patterns (k-1 singleton cells plus s+1 cells sharing one line),
// found by a deterministic backtracking exact-cover search.

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "ebk/cyclic.hpp"
#include "ebk/errors.hpp"
#include "ebk/isometry.hpp"
#include "ebk/state.hpp"

namespace ebk {

using Cell = std::pair<std::size_t, std::size_t>;

enum class BlockKind { cyclic, corner };

struct GridBlock {
    std::size_t row0 = 0;
    std::size_t col0 = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    BlockKind kind = BlockKind::cyclic;
};

struct BlockDecomposition {
    std::size_t d = 0, dprime = 0, k = 0;
    std::size_t s = 0, r = 0;           // d = s*k + r
    std::size_t sprime = 0, rprime = 0; // d' = s'*k + r'
    std::vector<GridBlock> blocks;
};

/// d x d' = [d x (s'-1)k columns] + [(s-1)k x (k+r') rows] + corner
/// (k+r) x (k+r'), the corner at bottom right. Empty blocks are omitted.
inline BlockDecomposition block_decompose(std::size_t d, std::size_t dprime, std::size_t k) {
    if (k < 2 || k > d || d > dprime)
        throw invalid_input_error("block_decompose: requires 2 <= k <= d <= d'");
    if ((d * dprime) % k == 0)
        throw wrong_path_error("block_decompose: d*d' is a multiple of k; use the cyclic path");
    BlockDecomposition out;
    out.d = d;
    out.dprime = dprime;
    out.k = k;
    out.s = d / k;
    out.r = d % k;
    out.sprime = dprime / k;
    out.rprime = dprime % k;
    const std::size_t col_split = (out.sprime - 1) * k;
    const std::size_t row_split = (out.s - 1) * k;
    if (col_split > 0)
        out.blocks.push_back({0, 0, d, col_split, BlockKind::cyclic});
    if (row_split > 0)
        out.blocks.push_back({0, col_split, row_split, k + out.rprime, BlockKind::cyclic});
    out.blocks.push_back({row_split, col_split, k + out.r, k + out.rprime, BlockKind::corner});
    return out;
}

enum class LOrientation { column, row };

/// k-1 singleton cells with pairwise distinct rows and columns, plus s+1
/// cells sharing one column (or one row), row- and column-disjoint from the
/// singletons as required for rank exactly k.
struct LPattern {
    std::size_t k = 0;
    std::size_t s = 0;
    LOrientation orientation = LOrientation::column;
    std::vector<Cell> singletons;
    std::vector<Cell> shared;

    std::vector<Cell> cells() const {
        std::vector<Cell> all = singletons;
        all.insert(all.end(), shared.begin(), shared.end());
        return all;
    }

    bool structurally_valid() const {
        if (singletons.size() != k - 1 || shared.size() != s + 1 || s < 1 || s > k - 1)
            return false;
        std::vector<std::size_t> rows, cols;
        for (const auto& [r, c] : singletons) {
            rows.push_back(r);
            cols.push_back(c);
        }
        const bool by_column = orientation == LOrientation::column;
        for (const auto& [r, c] : shared) {
            if (by_column && c != shared.front().second) return false;
            if (!by_column && r != shared.front().first) return false;
            rows.push_back(r);
            cols.push_back(c);
        }
        if (by_column) {
            // every cell on its own row; the shared column fresh
            std::sort(rows.begin(), rows.end());
            if (std::adjacent_find(rows.begin(), rows.end()) != rows.end()) return false;
            std::vector<std::size_t> scols;
            for (const auto& [r, c] : singletons) scols.push_back(c);
            std::sort(scols.begin(), scols.end());
            if (std::adjacent_find(scols.begin(), scols.end()) != scols.end()) return false;
            for (std::size_t c : scols)
                if (c == shared.front().second) return false;
        } else {
            std::sort(cols.begin(), cols.end());
            if (std::adjacent_find(cols.begin(), cols.end()) != cols.end()) return false;
            std::vector<std::size_t> srows;
            for (const auto& [r, c] : singletons) srows.push_back(r);
            std::sort(srows.begin(), srows.end());
            if (std::adjacent_find(srows.begin(), srows.end()) != srows.end()) return false;
            for (std::size_t r : srows)
                if (r == shared.front().first) return false;
        }
        return true;
    }
};

struct Tiling {
    std::size_t rows = 0, cols = 0, k = 0;
    std::vector<std::vector<Cell>> diagonals;
    std::vector<LPattern> l_patterns;

    std::size_t covered_cells() const {
        std::size_t n = 0;
        for (const auto& d : diagonals) n += d.size();
        for (const auto& l : l_patterns) n += l.k + l.s;
        return n;
    }

    bool covers_exactly() const {
        std::vector<char> seen(rows * cols, 0);
        auto mark = [&](const Cell& c) {
            if (c.first >= rows || c.second >= cols || seen[c.first * cols + c.second]) return false;
            seen[c.first * cols + c.second] = 1;
            return true;
        };
        for (const auto& d : diagonals)
            for (const auto& c : d)
                if (!mark(c)) return false;
        for (const auto& l : l_patterns)
            for (const auto& c : l.cells())
                if (!mark(c)) return false;
        return covered_cells() == rows * cols;
    }
};

namespace detail {

struct CoverGrid {
    std::size_t rows = 0, cols = 0;
    std::vector<char> covered;
    bool free_cell(std::size_t r, std::size_t c) const { return !covered[r * cols + c]; }
    void set(const std::vector<Cell>& cells, char v) {
        for (const auto& [r, c] : cells) covered[r * cols + c] = v;
    }
    bool first_free(Cell& out) const {
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                if (!covered[r * cols + c]) {
                    out = {r, c};
                    return true;
                }
        return false;
    }
};

// All k-cell generalized diagonals whose lexicographically smallest cell is
// the anchor, visited in ascending lexicographic order of their cell lists.
// The visitor returns true to stop the enumeration; candidates are produced
// lazily so a successful branch never pays for the rest.
template <typename Visit>
inline bool enumerate_diagonals(const CoverGrid& g, const Cell& anchor, std::size_t k,
                                Visit&& visit) {
    std::vector<Cell> cells{anchor};
    std::vector<char> used_row(g.rows, 0), used_col(g.cols, 0);
    used_row[anchor.first] = used_col[anchor.second] = 1;
    auto rec = [&](auto&& self, std::size_t next_row) -> bool {
        if (cells.size() == k) return visit(cells);
        // not enough rows left for the remaining cells
        if (g.rows - next_row < k - cells.size()) return false;
        for (std::size_t r = next_row; r < g.rows; ++r) {
            if (used_row[r]) continue;
            for (std::size_t c = 0; c < g.cols; ++c) {
                if (used_col[c] || !g.free_cell(r, c)) continue;
                used_row[r] = used_col[c] = 1;
                cells.emplace_back(r, c);
                const bool stop = self(self, r + 1);
                cells.pop_back();
                used_row[r] = used_col[c] = 0;
                if (stop) return true;
            }
        }
        return false;
    };
    return rec(rec, anchor.first + 1);
}

// All L_{k+s} placements anchored (lexicographically smallest cell) at the
// given cell, visited lazily. Candidate order: anchor as first singleton
// before anchor on the shared line, column orientation before row
// orientation, then ascending cell choices. This makes the search
// reproducible and puts the textbook placement (singleton top-left, shared
// line to its lower right) first. The visitor returns true to stop.
template <typename Visit>
inline bool enumerate_l_patterns(const CoverGrid& g, const Cell& anchor, std::size_t k,
                                 std::size_t s, Visit&& visit) {
    const auto [ar, ac] = anchor;

    struct Picked {
        std::vector<Cell> singles;
        std::vector<char> used_row, used_col;
    };

    auto pick_singletons = [&](Picked& p, std::size_t count, Cell start, auto&& done) -> bool {
        auto rec = [&](auto&& self, Cell from) -> bool {
            if (p.singles.size() == count) return done();
            for (std::size_t r = from.first; r < g.rows; ++r) {
                if (p.used_row[r]) continue;
                const std::size_t c0 = (r == from.first) ? from.second : 0;
                for (std::size_t c = c0; c < g.cols; ++c) {
                    if (p.used_col[c] || !g.free_cell(r, c)) continue;
                    p.used_row[r] = p.used_col[c] = 1;
                    p.singles.emplace_back(r, c);
                    const bool stop = self(self, {r, c + 1});
                    p.singles.pop_back();
                    p.used_row[r] = p.used_col[c] = 0;
                    if (stop) return true;
                }
            }
            return false;
        };
        return rec(rec, start);
    };

    // ascending (count)-subsets of the free values of `line` beyond `from`
    auto pick_line_cells = [&](std::size_t count, bool column, std::size_t line,
                               std::size_t from, const std::vector<char>& used,
                               auto&& done) -> bool {
        std::vector<std::size_t> chosen;
        auto rec = [&](auto&& self, std::size_t next) -> bool {
            if (chosen.size() == count) return done(chosen);
            const std::size_t limit = column ? g.rows : g.cols;
            for (std::size_t v = next; v < limit; ++v) {
                if (used[v]) continue;
                const bool free = column ? g.free_cell(v, line) : g.free_cell(line, v);
                if (!free) continue;
                chosen.push_back(v);
                const bool stop = self(self, v + 1);
                chosen.pop_back();
                if (stop) return true;
            }
            return false;
        };
        return rec(rec, from);
    };

    auto emit = [&](LOrientation o, std::vector<Cell> singles, std::vector<Cell> shared) -> bool {
        LPattern l;
        l.k = k;
        l.s = s;
        l.orientation = o;
        l.singletons = std::move(singles);
        l.shared = std::move(shared);
        return visit(l);
    };

    // Pass A: anchor is the first singleton.
    for (LOrientation o : {LOrientation::column, LOrientation::row}) {
        Picked p;
        p.used_row.assign(g.rows, 0);
        p.used_col.assign(g.cols, 0);
        p.used_row[ar] = p.used_col[ac] = 1;
        const bool stop = pick_singletons(p, k - 2, {ar + 1, 0}, [&]() -> bool {
            if (o == LOrientation::column) {
                for (std::size_t c = 0; c < g.cols; ++c) {
                    if (p.used_col[c]) continue;
                    const bool inner = pick_line_cells(
                        s + 1, true, c, ar + 1, p.used_row,
                        [&](const std::vector<std::size_t>& rows) -> bool {
                            std::vector<Cell> singles{anchor};
                            singles.insert(singles.end(), p.singles.begin(), p.singles.end());
                            std::vector<Cell> shared;
                            for (std::size_t r : rows) shared.emplace_back(r, c);
                            return emit(o, std::move(singles), std::move(shared));
                        });
                    if (inner) return true;
                }
            } else {
                for (std::size_t rr = ar + 1; rr < g.rows; ++rr) {
                    if (p.used_row[rr]) continue;
                    const bool inner = pick_line_cells(
                        s + 1, false, rr, 0, p.used_col,
                        [&](const std::vector<std::size_t>& cols) -> bool {
                            std::vector<Cell> singles{anchor};
                            singles.insert(singles.end(), p.singles.begin(), p.singles.end());
                            std::vector<Cell> shared;
                            for (std::size_t c : cols) shared.emplace_back(rr, c);
                            return emit(o, std::move(singles), std::move(shared));
                        });
                    if (inner) return true;
                }
            }
            return false;
        });
        if (stop) return true;
    }

    // Pass B: anchor is the first cell of the shared line.
    {
        // column orientation: shared column ac, anchor its topmost row
        std::vector<char> used_row(g.rows, 0);
        used_row[ar] = 1;
        const bool stop =
            pick_line_cells(s, true, ac, ar + 1, used_row,
                            [&](const std::vector<std::size_t>& rows) -> bool {
                                Picked p;
                                p.used_row.assign(g.rows, 0);
                                p.used_col.assign(g.cols, 0);
                                p.used_row[ar] = 1;
                                p.used_col[ac] = 1;
                                for (std::size_t r : rows) p.used_row[r] = 1;
                                return pick_singletons(p, k - 1, {ar + 1, 0}, [&]() -> bool {
                                    std::vector<Cell> shared{anchor};
                                    for (std::size_t r : rows) shared.emplace_back(r, ac);
                                    return emit(LOrientation::column, p.singles, shared);
                                });
                            });
        if (stop) return true;
    }
    {
        // row orientation: shared row ar, anchor its leftmost column
        std::vector<char> used_col(g.cols, 0);
        used_col[ac] = 1;
        const bool stop =
            pick_line_cells(s, false, ar, ac + 1, used_col,
                            [&](const std::vector<std::size_t>& cols) -> bool {
                                Picked p;
                                p.used_row.assign(g.rows, 0);
                                p.used_col.assign(g.cols, 0);
                                p.used_row[ar] = 1;
                                p.used_col[ac] = 1;
                                for (std::size_t c : cols) p.used_col[c] = 1;
                                return pick_singletons(p, k - 1, {ar + 1, 0}, [&]() -> bool {
                                    std::vector<Cell> shared{anchor};
                                    for (std::size_t c : cols) shared.emplace_back(ar, c);
                                    return emit(LOrientation::row, p.singles, shared);
                                });
                            });
        if (stop) return true;
    }
    return false;
}

struct CoverSearch {
    CoverGrid grid;
    std::size_t k = 0;
    std::vector<std::size_t> planned_excess; // multiset of L excesses still to place
    Tiling result;
    long long nodes = 0;
    static constexpr long long node_cap = 20'000'000;

    // No row or column may hold more free cells than the remaining pieces
    // can absorb: one per diagonal, s+1 per L whose shared line lies along
    // it. Once all L-patterns are placed this bound is exact (a region
    // splits into D diagonals of k cells iff its size is D*k and no line
    // exceeds D), so dead branches die immediately.
    bool line_counts_feasible() const {
        std::size_t free_cells = 0;
        std::vector<std::size_t> row_count(grid.rows, 0), col_count(grid.cols, 0);
        for (std::size_t r = 0; r < grid.rows; ++r)
            for (std::size_t c = 0; c < grid.cols; ++c)
                if (grid.free_cell(r, c)) {
                    ++free_cells;
                    ++row_count[r];
                    ++col_count[c];
                }
        std::size_t l_cells = 0, l_extra = 0;
        for (std::size_t s : planned_excess) {
            l_cells += k + s;
            l_extra += s; // an L's shared line covers s more cells of one line than a diagonal would
        }
        if (free_cells < l_cells || (free_cells - l_cells) % k != 0) return false;
        const std::size_t diagonals = (free_cells - l_cells) / k;
        const std::size_t budget = diagonals + planned_excess.size() + l_extra;
        for (std::size_t v : row_count)
            if (v > budget) return false;
        for (std::size_t v : col_count)
            if (v > budget) return false;
        return true;
    }

    bool run() {
        Cell anchor;
        if (!grid.first_free(anchor)) return planned_excess.empty();
        if (++nodes > node_cap) throw tiling_not_found_error("tile_corner: search budget exhausted");
        if (!line_counts_feasible()) return false;

        // L-patterns before diagonals; distinct planned excesses largest first.
        std::vector<std::size_t> tried;
        for (std::size_t i = 0; i < planned_excess.size(); ++i) {
            const std::size_t s = planned_excess[i];
            if (std::find(tried.begin(), tried.end(), s) != tried.end()) continue;
            tried.push_back(s);
            const bool found = enumerate_l_patterns(grid, anchor, k, s, [&](const LPattern& l) {
                const auto cells = l.cells();
                grid.set(cells, 1);
                planned_excess.erase(planned_excess.begin() + static_cast<std::ptrdiff_t>(i));
                result.l_patterns.push_back(l);
                if (run()) return true;
                result.l_patterns.pop_back();
                planned_excess.insert(planned_excess.begin() + static_cast<std::ptrdiff_t>(i), s);
                grid.set(cells, 0);
                return false;
            });
            if (found) return true;
        }
        return enumerate_diagonals(grid, anchor, k, [&](const std::vector<Cell>& cells) {
            grid.set(cells, 1);
            result.diagonals.push_back(cells);
            if (run()) return true;
            result.diagonals.pop_back();
            grid.set(cells, 0);
            return false;
        });
    }
};

} // namespace detail

/// Greedy excess plan: the corner area is congruent to r*r' mod k; that
/// excess is met with the largest L_{k+s} that fits (s bounded by the longer
/// free dimension), falling back to several smaller patterns.
inline std::vector<std::size_t> plan_l_excesses(std::size_t m, std::size_t n, std::size_t k) {
    std::vector<std::size_t> plan;
    std::size_t residue = (m * n) % k;
    const std::size_t s_max = std::max(m, n) - k;
    while (residue > 0) {
        const std::size_t s = std::min({k - 1, s_max, residue});
        if (s == 0) throw tiling_not_found_error("tile_corner: no L pattern fits this corner");
        plan.push_back(s);
        residue -= s;
    }
    return plan;
}

/// Deterministic exact-cover tiling of an m x n corner, m = k+r, n = k+r'
/// with 1 <= r, r' <= k-1. Backtracking over the first uncovered cell in
/// row-major order, L-patterns tried before diagonals.
inline Tiling tile_corner(std::size_t m, std::size_t n, std::size_t k) {
    if (k < 2 || m <= k || n <= k || m >= 2 * k || n >= 2 * k)
        throw invalid_input_error("tile_corner: corner sides must lie strictly between k and 2k");
    detail::CoverSearch search;
    search.grid.rows = m;
    search.grid.cols = n;
    search.grid.covered.assign(m * n, 0);
    search.k = k;
    search.planned_excess = plan_l_excesses(m, n, k);
    search.result.rows = m;
    search.result.cols = n;
    search.result.k = k;
    if (!search.run())
        throw tiling_not_found_error(
            "tile_corner: exact-cover search exhausted; this corner needs a decomposition "
            "beyond L-patterns plus diagonals");
    return search.result;
}

/// Rank-k orthonormal basis of the L_{k+s} space: k+s matrices of shape
/// (k+s) x k; matrix i carries column i of the supplied isometry, entries
/// 0..k-2 on the diagonal and the tail down the last column. Singular values
/// are the k-1 leading moduli plus the tail norm.
inline std::vector<CMatrix> l_pattern_basis(std::size_t k, std::size_t s, const Isometry& coeffs) {
    if (k < 2 || s < 1 || s > k - 1)
        throw invalid_input_error("l_pattern_basis: requires 1 <= s <= k-1");
    const std::size_t n = k + s;
    if (coeffs.rows() != n || coeffs.cols() != n)
        throw invalid_input_error("l_pattern_basis: coefficient isometry must be (k+s) x (k+s)");
    validate_isometry(coeffs);
    for (std::size_t i = 0; i < n; ++i) {
        double tail = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            const double a = std::abs(coeffs.entries.at(p, i));
            if (p < k - 1 && a <= 1e-12)
                throw degenerate_coefficient_error(
                    "l_pattern_basis: zero leading coefficient would drop the rank below k");
            if (p >= k - 1) tail += a * a;
        }
        if (tail <= 1e-24)
            throw degenerate_coefficient_error(
                "l_pattern_basis: vanishing tail would drop the rank below k");
    }
    std::vector<CMatrix> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        CMatrix a(n, k);
        for (std::size_t p = 0; p < n; ++p) {
            const std::size_t col = (p < k - 1) ? p : k - 1;
            a.at(p, col) = coeffs.entries.at(p, i);
        }
        out.push_back(std::move(a));
    }
    return out;
}

namespace detail {

// Pieces sorted by their smallest cell give the deterministic emission order.
struct PieceRef {
    Cell anchor;
    bool is_l = false;
    std::size_t index = 0;
};

inline std::vector<PieceRef> ordered_pieces(const Tiling& t) {
    std::vector<PieceRef> refs;
    for (std::size_t i = 0; i < t.diagonals.size(); ++i)
        refs.push_back({*std::min_element(t.diagonals[i].begin(), t.diagonals[i].end()), false, i});
    for (std::size_t i = 0; i < t.l_patterns.size(); ++i) {
        const auto cells = t.l_patterns[i].cells();
        refs.push_back({*std::min_element(cells.begin(), cells.end()), true, i});
    }
    std::sort(refs.begin(), refs.end(),
              [](const PieceRef& a, const PieceRef& b) { return a.anchor < b.anchor; });
    return refs;
}

inline Isometry default_isometry(CoefficientField field, std::size_t size) {
    return field == CoefficientField::real_field ? od(size) : dft(size);
}

} // namespace detail

/// Complete EBk of C^d (x) C^d' when k does not divide d*d': cyclic blocks
/// filled via ebk_cyclic on their sub-grids, the corner filled from its
/// tiling (diagonals carry the k x k coefficients, L-patterns carry
/// l_pattern_basis coefficients of the matching size).
inline EntangledBasis assemble(std::size_t d, std::size_t dprime, std::size_t k,
                               const Isometry& coeffs) {
    const BlockDecomposition deco = block_decompose(d, dprime, k);
    if (coeffs.rows() != k || coeffs.cols() != k)
        throw invalid_input_error("assemble: coefficient isometry must be k x k");
    validate_isometry(coeffs);
    if (!no_zero_entries(coeffs))
        throw degenerate_coefficient_error("assemble: coefficient isometry has zero entries");

    EntangledBasis basis;
    basis.d = d;
    basis.dprime = dprime;
    basis.k = k;
    basis.family = BasisFamily::ebk;
    basis.states.reserve(d * dprime);

    auto push_state = [&](std::vector<Amplitude> amps) {
        basis.states.push_back(BipartiteState(d, dprime, std::move(amps)));
    };

    for (const auto& block : deco.blocks) {
        if (block.kind != BlockKind::cyclic) continue;
        const bool transpose = block.rows > block.cols;
        const std::size_t sub_d = transpose ? block.cols : block.rows;
        const std::size_t sub_dp = transpose ? block.rows : block.cols;
        EntangledBasis sub = ebk_cyclic(sub_d, sub_dp, k, coeffs);
        for (const auto& st : sub.states) {
            std::vector<Amplitude> amps;
            amps.reserve(st.amplitudes().size());
            for (const auto& a : st.amplitudes()) {
                const std::size_t r = transpose ? a.col : a.row;
                const std::size_t c = transpose ? a.row : a.col;
                amps.push_back({block.row0 + r, block.col0 + c, a.value});
            }
            push_state(std::move(amps));
        }
    }

    const GridBlock& corner = deco.blocks.back();
    const Tiling tiling = tile_corner(corner.rows, corner.cols, k);
    for (const auto& piece : detail::ordered_pieces(tiling)) {
        if (!piece.is_l) {
            std::vector<Cell> cells = tiling.diagonals[piece.index];
            std::sort(cells.begin(), cells.end());
            for (std::size_t m = 0; m < k; ++m) {
                std::vector<Amplitude> amps;
                for (std::size_t l = 0; l < k; ++l)
                    amps.push_back({corner.row0 + cells[l].first, corner.col0 + cells[l].second,
                                    coeffs.entries.at(l, m)});
                push_state(std::move(amps));
            }
        } else {
            const LPattern& l = tiling.l_patterns[piece.index];
            const Isometry lc = detail::default_isometry(coeffs.field, k + l.s);
            const auto cells = l.cells(); // singletons then shared; entry p of a column sits at cells[p]
            for (std::size_t i = 0; i < k + l.s; ++i) {
                std::vector<Amplitude> amps;
                for (std::size_t p = 0; p < cells.size(); ++p)
                    amps.push_back({corner.row0 + cells[p].first, corner.col0 + cells[p].second,
                                    lc.entries.at(p, i)});
                push_state(std::move(amps));
            }
        }
    }

    basis.provenance["construction"] = "block+tiling";
    basis.provenance["ordering"] = "cyclic blocks first, then corner pieces by smallest cell";
    basis.provenance["corner"] = std::to_string(corner.rows) + "x" + std::to_string(corner.cols);
    basis.provenance["l_patterns"] = std::to_string(tiling.l_patterns.size());
    return basis;
}

} // namespace ebk
