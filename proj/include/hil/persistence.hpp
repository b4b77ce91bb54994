#pragma once

// Persistent homology by column reduction of the boundary matrix over F_p,
// with the clearing (twist) optimization: dimensions are processed top-down,
// and columns already identified as pivots of one dimension up are skipped.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "hil/barcode.hpp"
#include "hil/filtration.hpp"
#include "hil/fp.hpp"

namespace hil {

struct PersistencePair {
    int birth_simplex;  // index into the reduction order
    int death_simplex;  // -1 for essential classes
};

struct ReductionResult {
    std::vector<int> order;            // simplex indices of X in reduction order
    std::vector<PersistencePair> pairs;     // paired (birth, death), positions in `order`
    std::vector<int> essential;             // unpaired positions in `order`
};

// The canonical reduction order: (value, dimension, lexicographic).
inline std::vector<int> canonical_order(const FilteredComplex& x) {
    std::vector<int> order(x.size());
    std::iota(order.begin(), order.end(), 0);
    const auto& ss = x.simplices();
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (ss[a].value != ss[b].value) return ss[a].value < ss[b].value;
        if (ss[a].verts.size() != ss[b].verts.size()) return ss[a].verts.size() < ss[b].verts.size();
        return ss[a].verts < ss[b].verts;
    });
    return order;
}

namespace detail {

// sparse column over F_p: (row, coeff) sorted by row ascending, coeff != 0
using SparseCol = std::vector<std::pair<int, std::uint32_t>>;

inline void add_scaled(SparseCol& dst, const SparseCol& src, std::uint32_t scale,
                       const PrimeField& f) {
    SparseCol out;
    out.reserve(dst.size() + src.size());
    std::size_t a = 0, b = 0;
    while (a < dst.size() || b < src.size()) {
        if (b == src.size() || (a < dst.size() && dst[a].first < src[b].first)) {
            out.push_back(dst[a++]);
        } else if (a == dst.size() || src[b].first < dst[a].first) {
            out.emplace_back(src[b].first, f.mul(scale, src[b].second));
            ++b;
        } else {
            std::uint32_t v = f.add(dst[a].second, f.mul(scale, src[b].second));
            if (v != 0) out.emplace_back(dst[a].first, v);
            ++a;
            ++b;
        }
    }
    dst = std::move(out);
}

}  // namespace detail

/// Runs the reduction and returns the simplex pairing. `order` must list each
/// simplex exactly once, faces before cofaces and values nondecreasing; the
/// default is the canonical (value, dim, lex) order.
inline ReductionResult reduce_matrix(const FilteredComplex& x, std::uint32_t p = 2,
                                     std::vector<int> order = {}) {
    const PrimeField field(p);
    if (order.empty()) order = canonical_order(x);
    const int n = static_cast<int>(order.size());
    const auto& ss = x.simplices();

    std::vector<int> pos_of(x.size(), -1);  // simplex index -> position in order
    for (int pos = 0; pos < n; ++pos) pos_of[order[pos]] = pos;

    // boundary columns in order positions
    std::vector<detail::SparseCol> boundary(n);
    int top_dim = 0;
    for (int pos = 0; pos < n; ++pos) {
        const Simplex& verts = ss[order[pos]].verts;
        const int dim = static_cast<int>(verts.size()) - 1;
        top_dim = std::max(top_dim, dim);
        if (dim == 0) continue;
        detail::SparseCol col;
        std::uint32_t sign = 1;  // alternating signs, top index dropped first
        auto fs = facets(verts);
        // facets() drops vertex 0,1,...,k in order; boundary signs alternate
        for (std::size_t i = 0; i < fs.size(); ++i) {
            int idx = *x.index_of(fs[i]);
            std::uint32_t coeff = (i % 2 == 0) ? 1 : field.neg(1);
            col.emplace_back(pos_of[idx], coeff);
        }
        (void)sign;
        std::sort(col.begin(), col.end());
        boundary[pos] = std::move(col);
    }

    std::vector<int> pivot_owner(n, -1);   // row -> column position owning that pivot
    std::vector<char> cleared(n, 0);
    std::vector<char> is_death(n, 0);

    ReductionResult res;
    res.order = order;

    for (int dim = top_dim; dim >= 1; --dim) {
        for (int pos = 0; pos < n; ++pos) {
            if (static_cast<int>(ss[order[pos]].verts.size()) - 1 != dim) continue;
            if (cleared[pos]) continue;
            detail::SparseCol& col = boundary[pos];
            while (!col.empty()) {
                int pivot_row = col.back().first;
                int owner = pivot_owner[pivot_row];
                if (owner < 0) break;
                std::uint32_t factor =
                    field.neg(field.mul(col.back().second, field.inv(boundary[owner].back().second)));
                detail::add_scaled(col, boundary[owner], factor, field);
            }
            if (!col.empty()) {
                int pivot_row = col.back().first;
                pivot_owner[pivot_row] = pos;
                cleared[pivot_row] = 1;  // its own reduction is known to vanish
                is_death[pos] = 1;
                res.pairs.push_back({pivot_row, pos});
            }
        }
    }

    for (int pos = 0; pos < n; ++pos)
        if (!cleared[pos] && !is_death[pos]) res.essential.push_back(pos);

    std::sort(res.pairs.begin(), res.pairs.end(),
              [](const PersistencePair& a, const PersistencePair& b) {
                  return a.birth_simplex < b.birth_simplex;
              });
    return res;
}

/// Barcode of H_k for k <= max_degree, coefficients in F_p. Intervals are
/// half-open [b, d); zero-length pairs are computed and dropped.
inline Barcode barcodes(const FilteredComplex& x, int max_degree, std::uint32_t p = 2,
                        std::vector<int> order = {}) {
    ReductionResult red = reduce_matrix(x, p, std::move(order));
    const auto& ss = x.simplices();
    Barcode bc;
    for (const auto& pair : red.pairs) {
        const auto& birth = ss[red.order[pair.birth_simplex]];
        const auto& death = ss[red.order[pair.death_simplex]];
        int degree = static_cast<int>(birth.verts.size()) - 1;
        if (degree <= max_degree) bc.add(degree, {birth.value, death.value});
    }
    for (int pos : red.essential) {
        const auto& birth = ss[red.order[pos]];
        int degree = static_cast<int>(birth.verts.size()) - 1;
        if (degree <= max_degree) bc.add(degree, {birth.value, kInf});
    }
    return bc;
}

}  // namespace hil
