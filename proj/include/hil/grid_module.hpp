#pragma once

// Persistence modules presented on a finite grid: dimension per grid point
// and a transition matrix per consecutive pair, over a prime field. The
// module is constant on [t_i, t_{i+1}), zero before t_1, and constant equal
// to the last stage from t_m on.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "hil/barcode.hpp"
#include "hil/common.hpp"
#include "hil/filtration.hpp"
#include "hil/fp.hpp"
#include "hil/persistence.hpp"

namespace hil {

struct grid_mismatch : error {
    explicit grid_mismatch(const std::string& msg) : error(msg) {}
};

class GridModule {
public:
    static GridModule create(std::vector<double> grid, std::vector<int> dims,
                             std::vector<FpMat> maps, std::uint32_t p = 2) {
        PrimeField field(p);
        if (grid.size() != dims.size())
            throw grid_mismatch("grid and dims must have the same length");
        for (std::size_t i = 0; i + 1 < grid.size(); ++i)
            if (!(grid[i] < grid[i + 1])) throw grid_mismatch("grid must be strictly increasing");
        if (!grid.empty() && maps.size() != grid.size() - 1)
            throw grid_mismatch("need exactly one transition matrix per consecutive grid pair");
        for (std::size_t i = 0; i < maps.size(); ++i) {
            if (maps[i].rows() != dims[i + 1] || maps[i].cols() != dims[i])
                throw grid_mismatch("transition " + std::to_string(i) + " has shape " +
                                    std::to_string(maps[i].rows()) + "x" +
                                    std::to_string(maps[i].cols()) + ", expected " +
                                    std::to_string(dims[i + 1]) + "x" + std::to_string(dims[i]));
            if (!(maps[i].field() == field))
                throw grid_mismatch("transition matrices must share the module's field");
        }
        GridModule m;
        m.grid_ = std::move(grid);
        m.dims_ = std::move(dims);
        m.maps_ = std::move(maps);
        m.field_ = field;
        return m;
    }

    static GridModule zero(std::uint32_t p = 2) { return create({}, {}, {}, p); }

    const std::vector<double>& grid() const { return grid_; }
    const std::vector<int>& dims() const { return dims_; }
    const std::vector<FpMat>& maps() const { return maps_; }
    const PrimeField& field() const { return field_; }
    std::uint32_t p() const { return field_.p(); }

    // index of the stage active at r, or -1 when r precedes the grid
    int stage_at(double r) const {
        int lo = 0, hi = static_cast<int>(grid_.size()) - 1, ans = -1;
        while (lo <= hi) {
            int mid = lo + (hi - lo) / 2;
            if (grid_[mid] <= r) { ans = mid; lo = mid + 1; }
            else hi = mid - 1;
        }
        return ans;
    }

    int dim_at(double r) const {
        int s = stage_at(r);
        return s < 0 ? 0 : dims_[s];
    }

    // matrix of the internal map M_r -> M_s for r <= s
    FpMat transition(double r, double s) const {
        int a = stage_at(r), b = stage_at(s);
        if (a < 0) return FpMat(dim_at(s), 0, field_);
        FpMat t = FpMat::identity(dims_[a], field_);
        for (int i = a; i < b; ++i) t = maps_[i].mul(t);
        return t;
    }

    bool operator==(const GridModule& o) const {
        return grid_ == o.grid_ && dims_ == o.dims_ && maps_ == o.maps_ && field_ == o.field_;
    }

private:
    std::vector<double> grid_;
    std::vector<int> dims_;
    std::vector<FpMat> maps_;
    PrimeField field_{2};
};

/// M(delta): every grid point moves down by delta.
inline GridModule shift_module(const GridModule& m, double delta) {
    std::vector<double> grid = m.grid();
    for (double& t : grid) t -= delta;
    return GridModule::create(std::move(grid), m.dims(), m.maps(), m.p());
}

/// Interval decomposition by rank inclusion-exclusion: the multiplicity of
/// the index interval [i, j] is r(i,j) - r(i-1,j) - r(i,j+1) + r(i-1,j+1)
/// with r(i,j) the rank of M_{t_i} -> M_{t_j} and out-of-range ranks 0.
/// Index intervals become real intervals [t_i, t_{j+1}) with t_{m+1} = inf.
inline std::vector<Interval> decompose(const GridModule& m) {
    const int n = static_cast<int>(m.grid().size());
    std::vector<Interval> bars;
    if (n == 0) return bars;
    std::vector<std::vector<int>> r(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) {
        r[i][i] = m.dims()[i];
        FpMat t;
        for (int j = i + 1; j < n; ++j) {
            t = (j == i + 1) ? m.maps()[i] : m.maps()[j - 1].mul(t);
            r[i][j] = t.rank();
        }
    }
    auto rank_at = [&](int i, int j) {
        if (i < 0 || j >= n) return 0;
        return r[i][j];
    };
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            int mult = rank_at(i, j) - rank_at(i - 1, j) - rank_at(i, j + 1) + rank_at(i - 1, j + 1);
            for (int copy = 0; copy < mult; ++copy)
                bars.push_back({m.grid()[i], j + 1 < n ? m.grid()[j + 1] : kInf});
        }
    std::sort(bars.begin(), bars.end());
    return bars;
}

/// The degree-k homology of a filtered complex as a GridModule over the
/// critical values of X, with explicit cycle-basis representatives and the
/// induced transition matrices. An independent computation path from
/// barcodes(): useful as a cross-check of the reduction.
inline GridModule homology_module(const FilteredComplex& x, int degree, std::uint32_t p = 2) {
    PrimeField field(p);
    std::vector<double> grid = x.critical_values();
    const int m = static_cast<int>(grid.size());
    if (m == 0) return GridModule::zero(p);

    // chain coordinates: simplices of each dimension sorted by (value, lex),
    // so each sublevel set is a prefix
    auto sorted_of_dim = [&](int d) {
        std::vector<int> ids;
        for (int i = 0; i < x.size(); ++i)
            if (static_cast<int>(x.simplices()[i].verts.size()) - 1 == d) ids.push_back(i);
        std::sort(ids.begin(), ids.end(), [&](int a, int b) {
            const auto& sa = x.simplices()[a];
            const auto& sb = x.simplices()[b];
            if (sa.value != sb.value) return sa.value < sb.value;
            return sa.verts < sb.verts;
        });
        return ids;
    };
    std::vector<int> k_cells = sorted_of_dim(degree);
    std::vector<int> k1_cells = sorted_of_dim(degree + 1);
    std::vector<int> km1_cells = sorted_of_dim(degree - 1);

    const int nk = static_cast<int>(k_cells.size());
    const int nk1 = static_cast<int>(k1_cells.size());
    const int nkm1 = static_cast<int>(km1_cells.size());

    std::vector<int> col_of(x.size(), -1);
    for (int c = 0; c < nk; ++c) col_of[k_cells[c]] = c;
    std::vector<int> row_of(x.size(), -1);
    for (int r = 0; r < nkm1; ++r) row_of[km1_cells[r]] = r;

    // boundary of k-cells (rows: (k-1)-cells) and of (k+1)-cells (rows: k-cells)
    FpMat bd_k(nkm1, nk, field);
    for (int c = 0; c < nk; ++c) {
        const Simplex& verts = x.simplices()[k_cells[c]].verts;
        auto fs = facets(verts);
        for (std::size_t i = 0; i < fs.size(); ++i) {
            int idx = *x.index_of(fs[i]);
            bd_k.at(row_of[idx], c) = (i % 2 == 0) ? 1 : field.neg(1);
        }
    }
    std::vector<FpVec> bd_k1_cols(nk1, FpVec(nk, 0));
    for (int c = 0; c < nk1; ++c) {
        const Simplex& verts = x.simplices()[k1_cells[c]].verts;
        auto fs = facets(verts);
        for (std::size_t i = 0; i < fs.size(); ++i) {
            int idx = *x.index_of(fs[i]);
            bd_k1_cols[c][col_of[idx]] = (i % 2 == 0) ? 1 : field.neg(1);
        }
    }

    auto count_leq = [&](const std::vector<int>& cells, double r) {
        int c = 0;
        while (c < static_cast<int>(cells.size()) && x.simplices()[cells[c]].value <= r) ++c;
        return c;
    };

    // per stage: a cycle basis of H_k as vectors in global k-chain coordinates
    std::vector<std::vector<FpVec>> h_basis(m);
    std::vector<std::vector<FpVec>> b_gens(m);
    std::vector<int> dims(m, 0);
    for (int s = 0; s < m; ++s) {
        int cols = count_leq(k_cells, grid[s]);
        int cols1 = count_leq(k1_cells, grid[s]);
        FpMat sub(nkm1, cols, field);
        for (int r = 0; r < nkm1; ++r)
            for (int c = 0; c < cols; ++c) sub.at(r, c) = bd_k.at(r, c);
        std::vector<FpVec> kernel = fp_kernel(sub);
        FpSpan span(nk, field);
        for (int c = 0; c < cols1; ++c) {
            span.add(bd_k1_cols[c]);
            b_gens[s].push_back(bd_k1_cols[c]);
        }
        for (const auto& kv : kernel) {
            FpVec global(nk, 0);
            for (int c = 0; c < cols; ++c) global[c] = kv[c];
            if (span.add(global)) h_basis[s].push_back(std::move(global));
        }
        dims[s] = static_cast<int>(h_basis[s].size());
    }

    // transition matrices: express each stage-s basis cycle in the stage-s+1
    // quotient basis modulo boundaries
    std::vector<FpMat> maps;
    for (int s = 0; s + 1 < m; ++s) {
        FpMat t(dims[s + 1], dims[s], field);
        std::vector<FpVec> gens = h_basis[s + 1];
        for (const auto& b : b_gens[s + 1]) gens.push_back(b);
        for (int c = 0; c < dims[s]; ++c) {
            auto coeffs = fp_solve(gens, h_basis[s][c], field);
            if (!coeffs) throw error("internal: cycle not expressible at the next stage");
            for (int r = 0; r < dims[s + 1]; ++r) t.at(r, c) = (*coeffs)[r];
        }
        maps.push_back(std::move(t));
    }
    return GridModule::create(std::move(grid), std::move(dims), std::move(maps), p);
}

}  // namespace hil
