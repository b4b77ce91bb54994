#pragma once

// Test-only oracles: independent brute-force routes for the quantities the
// library computes cleverly. Nothing here shares an algorithm with the
// implementation under test.

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "hil/barcode.hpp"
#include "hil/experiments.hpp"
#include "hil/filtration.hpp"
#include "hil/grid_module.hpp"
#include "hil/matching.hpp"
#include "hil/metric_space.hpp"

namespace oracles {

using hil::Barcode;
using hil::FilteredComplex;
using hil::FiniteMetricSpace;
using hil::Interval;
using hil::Rng;
using hil::Simplex;

// --- Gromov-Hausdorff by full enumeration ------------------------------------

// distortion by direct evaluation of the defining sup
inline double distortion_direct(const std::vector<std::pair<int, int>>& pairs,
                                const FiniteMetricSpace& p, const FiniteMetricSpace& q) {
    double sup = 0;
    for (const auto& a : pairs)
        for (const auto& b : pairs)
            sup = std::max(sup,
                           std::abs(p.dist(a.first, b.first) - q.dist(a.second, b.second)));
    return sup;
}

// min over every subset of P x Q with surjective projections; usable for
// |P|*|Q| <= ~20
inline double gh_exhaustive(const FiniteMetricSpace& p, const FiniteMetricSpace& q) {
    const int np = p.size(), nq = q.size(), cells = np * nq;
    double best = hil::kInf;
    for (std::uint64_t mask = 1; mask < (1ULL << cells); ++mask) {
        std::vector<std::pair<int, int>> pairs;
        std::vector<bool> hit_p(np, false), hit_q(nq, false);
        for (int cell = 0; cell < cells; ++cell)
            if (mask & (1ULL << cell)) {
                int i = cell / nq, j = cell % nq;
                pairs.emplace_back(i, j);
                hit_p[i] = true;
                hit_q[j] = true;
            }
        bool surjective = std::all_of(hit_p.begin(), hit_p.end(), [](bool b) { return b; }) &&
                          std::all_of(hit_q.begin(), hit_q.end(), [](bool b) { return b; });
        if (!surjective) continue;
        best = std::min(best, distortion_direct(pairs, p, q));
    }
    return best / 2.0;
}

// --- Rips by subset enumeration ----------------------------------------------

inline FilteredComplex rips_enumerated(const FiniteMetricSpace& p, int max_dim,
                                       double max_scale = hil::kInf) {
    std::vector<std::pair<Simplex, double>> entries;
    const int n = p.size();
    Simplex stack;
    auto recurse = [&](auto&& self, int next) -> void {
        if (!stack.empty()) {
            double value = 0;
            for (std::size_t a = 0; a < stack.size(); ++a)
                for (std::size_t b = a + 1; b < stack.size(); ++b)
                    value = std::max(value, p.dist(stack[a], stack[b]) / 2.0);
            if (value <= max_scale) entries.emplace_back(stack, value);
        }
        if (static_cast<int>(stack.size()) == max_dim + 1) return;
        for (int v = next; v < n; ++v) {
            stack.push_back(v);
            self(self, v + 1);
            stack.pop_back();
        }
    };
    recurse(recurse, 0);
    // a subset enters only if all its faces do; with value = max pairwise
    // distance the closure property is automatic, so this builds directly
    return FilteredComplex::from_simplices(std::move(entries));
}

// --- persistent Betti numbers by dense rank computations ----------------------

// rank of an integer matrix mod p; self-contained
inline int rank_mod_p(std::vector<std::vector<std::uint32_t>> m, std::uint32_t p) {
    if (m.empty() || m[0].empty()) return 0;
    const int rows = static_cast<int>(m.size()), cols = static_cast<int>(m[0].size());
    auto inv_mod = [&](std::uint32_t a) {
        std::uint32_t r = 1, b = a, e = p - 2;
        while (e) {
            if (e & 1) r = static_cast<std::uint32_t>(static_cast<std::uint64_t>(r) * b % p);
            b = static_cast<std::uint32_t>(static_cast<std::uint64_t>(b) * b % p);
            e >>= 1;
        }
        return r;
    };
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][c] != 0) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(m[pivot], m[rank]);
        std::uint32_t inv = inv_mod(m[rank][c]);
        for (int j = c; j < cols; ++j)
            m[rank][j] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(m[rank][j]) * inv % p);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] == 0) continue;
            std::uint32_t f = m[r][c];
            for (int j = c; j < cols; ++j) {
                std::uint64_t sub = static_cast<std::uint64_t>(f) * m[rank][j] % p;
                m[r][j] = static_cast<std::uint32_t>((m[r][j] + p - sub) % p);
            }
        }
        ++rank;
    }
    return rank;
}

// rank of H_k(X_r) -> H_k(X_s) = dim Z_k(X_r) - dim(Z_k(X_r) ∩ B_k(X_s)),
// with dim(Z ∩ B) = dim Z + dim B - dim(Z + B)
class PersistentBetti {
public:
    PersistentBetti(const FilteredComplex& x, int degree, std::uint32_t p)
        : x_(x), degree_(degree), p_(p) {
        for (int i = 0; i < x.size(); ++i) {
            int d = static_cast<int>(x.simplices()[i].verts.size()) - 1;
            if (d == degree) k_cells_.push_back(i);
            if (d == degree + 1) k1_cells_.push_back(i);
            if (d == degree - 1) km1_cells_.push_back(i);
        }
    }

    int rank(double r, double s) const {
        int dim_z = dim_cycles(r);
        int dim_b = dim_boundaries(s);
        int dim_sum = dim_span_union(r, s);
        int dim_intersection = dim_z + dim_b - dim_sum;
        return dim_z - dim_intersection;
    }

private:
    std::vector<std::vector<std::uint32_t>> boundary_cols(double r) const {
        // columns: boundaries of k-cells present at r, rows: (k-1)-cells
        std::vector<std::vector<std::uint32_t>> cols;
        std::map<int, int> row_of;
        for (int id : km1_cells_) row_of[id] = static_cast<int>(row_of.size());
        for (int id : k_cells_) {
            if (x_.simplices()[id].value > r) continue;
            std::vector<std::uint32_t> col(km1_cells_.size(), 0);
            auto fs = hil::facets(x_.simplices()[id].verts);
            for (std::size_t i = 0; i < fs.size(); ++i)
                col[row_of.at(*x_.index_of(fs[i]))] = (i % 2 == 0) ? 1 : p_ - 1;
            cols.push_back(std::move(col));
        }
        return cols;
    }

    std::vector<std::vector<std::uint32_t>> cobound_cols(double s) const {
        // columns: boundaries of (k+1)-cells present at s, rows: k-cells
        std::vector<std::vector<std::uint32_t>> cols;
        std::map<int, int> row_of;
        for (int id : k_cells_) row_of[id] = static_cast<int>(row_of.size());
        for (int id : k1_cells_) {
            if (x_.simplices()[id].value > s) continue;
            std::vector<std::uint32_t> col(k_cells_.size(), 0);
            auto fs = hil::facets(x_.simplices()[id].verts);
            for (std::size_t i = 0; i < fs.size(); ++i)
                col[row_of.at(*x_.index_of(fs[i]))] = (i % 2 == 0) ? 1 : p_ - 1;
            cols.push_back(std::move(col));
        }
        return cols;
    }

    // basis vectors of Z_k(X_r) in k-cell coordinates, via null space of bd_k
    std::vector<std::vector<std::uint32_t>> cycle_vectors(double r) const {
        std::vector<int> present;
        for (int id : k_cells_)
            if (x_.simplices()[id].value <= r) present.push_back(id);
        auto cols = boundary_cols(r);
        // transpose into row-major matrix (rows: (k-1)-cells, columns: present)
        std::vector<std::vector<std::uint32_t>> m(km1_cells_.size(),
                                                  std::vector<std::uint32_t>(present.size(), 0));
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (std::size_t row = 0; row < cols[c].size(); ++row) m[row][c] = cols[c][row];
        // kernel by rref bookkeeping
        std::vector<std::vector<std::uint32_t>> kernel;
        const int rows = static_cast<int>(m.size()), colsn = static_cast<int>(present.size());
        std::vector<int> pivot_col(colsn, -1);
        if (rows > 0) {
            auto inv_mod = [&](std::uint32_t a) {
                std::uint32_t rr = 1, b = a, e = p_ - 2;
                while (e) {
                    if (e & 1) rr = static_cast<std::uint32_t>(static_cast<std::uint64_t>(rr) * b % p_);
                    b = static_cast<std::uint32_t>(static_cast<std::uint64_t>(b) * b % p_);
                    e >>= 1;
                }
                return rr;
            };
            int rank = 0;
            for (int c = 0; c < colsn && rank < rows; ++c) {
                int pivot = -1;
                for (int r2 = rank; r2 < rows; ++r2)
                    if (m[r2][c] != 0) { pivot = r2; break; }
                if (pivot < 0) continue;
                std::swap(m[pivot], m[rank]);
                std::uint32_t inv = inv_mod(m[rank][c]);
                for (int j = c; j < colsn; ++j)
                    m[rank][j] =
                        static_cast<std::uint32_t>(static_cast<std::uint64_t>(m[rank][j]) * inv % p_);
                for (int r2 = 0; r2 < rows; ++r2) {
                    if (r2 == rank || m[r2][c] == 0) continue;
                    std::uint32_t f = m[r2][c];
                    for (int j = c; j < colsn; ++j) {
                        std::uint64_t sub = static_cast<std::uint64_t>(f) * m[rank][j] % p_;
                        m[r2][j] = static_cast<std::uint32_t>((m[r2][j] + p_ - sub) % p_);
                    }
                }
                pivot_col[c] = rank;
                ++rank;
            }
        }
        for (int c = 0; c < colsn; ++c) {
            if (pivot_col[c] >= 0) continue;
            std::vector<std::uint32_t> v(k_cells_.size(), 0);
            // embed: coordinate of present[i] in global k-cell ordering
            auto embed = [&](int present_idx, std::uint32_t val) {
                int id = present[present_idx];
                for (std::size_t g = 0; g < k_cells_.size(); ++g)
                    if (k_cells_[g] == id) v[g] = val;
            };
            embed(c, 1);
            for (int c2 = 0; c2 < colsn; ++c2)
                if (pivot_col[c2] >= 0 && m[pivot_col[c2]][c] != 0)
                    embed(c2, p_ - m[pivot_col[c2]][c]);
            kernel.push_back(std::move(v));
        }
        return kernel;
    }

    int dim_cycles(double r) const { return static_cast<int>(cycle_vectors(r).size()); }

    int dim_boundaries(double s) const {
        auto cols = cobound_cols(s);
        std::vector<std::vector<std::uint32_t>> m;
        for (auto& c : cols) m.push_back(std::move(c));
        return rank_mod_p(std::move(m), p_);  // rows are the vectors, rank is the same
    }

    int dim_span_union(double r, double s) const {
        std::vector<std::vector<std::uint32_t>> m;
        for (auto& v : cycle_vectors(r)) m.push_back(std::move(v));
        for (auto& v : cobound_cols(s)) m.push_back(std::move(v));
        if (m.empty()) return 0;
        return rank_mod_p(std::move(m), p_);
    }

    const FilteredComplex& x_;
    int degree_;
    std::uint32_t p_;
    std::vector<int> k_cells_, k1_cells_, km1_cells_;
};

// multiset of degree-k intervals via rank inclusion-exclusion over the
// critical grid; the independent route against reduction-based barcodes
inline std::vector<Interval> barcode_by_ranks(const FilteredComplex& x, int degree,
                                              std::uint32_t p) {
    std::vector<double> grid = x.critical_values();
    const int m = static_cast<int>(grid.size());
    std::vector<Interval> bars;
    if (m == 0) return bars;
    PersistentBetti betti(x, degree, p);
    std::vector<std::vector<int>> beta(m, std::vector<int>(m, 0));
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) beta[i][j] = betti.rank(grid[i], grid[j]);
    auto at = [&](int i, int j) { return (i < 0 || j >= m) ? 0 : beta[i][j]; };
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            int mult = at(i, j) - at(i - 1, j) - at(i, j + 1) + at(i - 1, j + 1);
            for (int c = 0; c < mult; ++c)
                bars.push_back({grid[i], j + 1 < m ? grid[j + 1] : hil::kInf});
        }
    std::sort(bars.begin(), bars.end());
    return bars;
}

// --- bottleneck by exhaustive matching minimization ---------------------------

inline double unmatched_cost(const Interval& iv) {
    return std::isinf(iv.death) ? hil::kInf : iv.length() / 2;
}

inline double bottleneck_exhaustive(const std::vector<Interval>& c,
                                    const std::vector<Interval>& d) {
    const int nc = static_cast<int>(c.size()), nd = static_cast<int>(d.size());
    double best = hil::kInf;
    std::vector<char> used(nd, 0);
    auto recurse = [&](auto&& self, int i, double cur) -> void {
        if (cur >= best) return;
        if (i == nc) {
            double total = cur;
            for (int j = 0; j < nd; ++j)
                if (!used[j]) total = std::max(total, unmatched_cost(d[j]));
            best = std::min(best, total);
            return;
        }
        self(self, i + 1, std::max(cur, unmatched_cost(c[i])));
        for (int j = 0; j < nd; ++j) {
            if (used[j]) continue;
            used[j] = 1;
            self(self, i + 1, std::max(cur, hil::matching_threshold(c[i], d[j])));
            used[j] = 0;
        }
    };
    recurse(recurse, 0, 0.0);
    return best;
}

// --- Kunneth dimensions via polynomial coefficients ---------------------------

// lexicographic size-t subsets of {0..c-1}, for composite-collapse checks
inline std::vector<std::vector<int>> kunneth_basis_for_tests(int c, int t) {
    std::vector<std::vector<int>> out;
    if (t < 0 || t > c) return out;
    std::vector<int> cur(t);
    for (int i = 0; i < t; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int pos = t - 1;
        while (pos >= 0 && cur[pos] == c - t + pos) --pos;
        if (pos < 0) break;
        ++cur[pos];
        for (int i = pos + 1; i < t; ++i) cur[i] = cur[i - 1] + 1;
    }
    return out;
}

// dim H_k of a product of c spheres S^m over a field = [x^k] (1 + x^m)^c
inline long long kunneth_dim_poly(int copies, long long sphere_dim, long long k) {
    std::map<long long, long long> poly{{0, 1}};
    for (int i = 0; i < copies; ++i) {
        std::map<long long, long long> next;
        for (auto [deg, coeff] : poly) {
            next[deg] += coeff;
            next[deg + sphere_dim] += coeff;
        }
        poly = std::move(next);
    }
    auto it = poly.find(k);
    return it == poly.end() ? 0 : it->second;
}

// --- random instance generators ----------------------------------------------

// face-closed monotone complex with values snapped to a coarse lattice so
// ties are common; at most max_simplices simplices
inline FilteredComplex random_complex(Rng& rng, int n_vertices, int max_simplices) {
    std::map<Simplex, double> entries;
    for (int v = 0; v < n_vertices; ++v)
        entries[{v}] = 0.25 * rng.uniform_int(0, 4);
    auto add_with_faces = [&](auto&& self, const Simplex& s) -> double {
        auto it = entries.find(s);
        if (it != entries.end()) return it->second;
        double floor = 0;
        for (const auto& f : hil::facets(s)) floor = std::max(floor, self(self, f));
        double value = floor + 0.25 * rng.uniform_int(0, 3);
        entries[s] = value;
        return value;
    };
    int budget = max_simplices - n_vertices;
    while (budget > 0) {
        int size = rng.uniform_int(2, std::min(4, n_vertices));
        Simplex s;
        while (static_cast<int>(s.size()) < size) {
            int v = rng.uniform_int(0, n_vertices - 1);
            if (std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
        }
        std::sort(s.begin(), s.end());
        std::size_t before = entries.size();
        add_with_faces(add_with_faces, s);
        budget -= static_cast<int>(entries.size() - before);
    }
    std::vector<std::pair<Simplex, double>> list(entries.begin(), entries.end());
    return FilteredComplex::from_simplices(std::move(list));
}

// a valid reduction order with the ties inside each value group shuffled
inline std::vector<int> shuffled_order(const FilteredComplex& x, Rng& rng) {
    std::vector<int> order(x.size());
    for (int i = 0; i < x.size(); ++i) order[i] = i;
    const auto& ss = x.simplices();
    std::vector<double> keys(x.size());
    for (int i = 0; i < x.size(); ++i) keys[i] = rng.uniform();
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (ss[a].value != ss[b].value) return ss[a].value < ss[b].value;
        if (ss[a].verts.size() != ss[b].verts.size()) return ss[a].verts.size() < ss[b].verts.size();
        return keys[a] < keys[b];
    });
    return order;
}

inline std::vector<Interval> random_bars(Rng& rng, int max_bars, double essential_prob = 0.2) {
    std::vector<Interval> bars;
    int n = rng.uniform_int(0, max_bars);
    for (int i = 0; i < n; ++i) {
        double birth = rng.uniform(0.0, 10.0);
        if (rng.uniform() < essential_prob)
            bars.push_back({birth, hil::kInf});
        else
            bars.push_back({birth, birth + rng.uniform(0.01, 8.0)});
    }
    return bars;
}

// random grid module on a dyadic lattice (multiples of 1/8), so every shift
// and candidate comparison in interleaving checks is float-exact
inline hil::GridModule random_grid_module(Rng& rng, int max_grid, int max_dim,
                                          std::uint32_t p = 2) {
    hil::PrimeField field(p);
    int m = rng.uniform_int(1, max_grid);
    std::vector<double> grid;
    int tick = rng.uniform_int(0, 16);
    for (int i = 0; i < m; ++i) {
        grid.push_back(tick * 0.125);
        tick += rng.uniform_int(1, 16);
    }
    std::vector<int> dims(m);
    for (int i = 0; i < m; ++i) dims[i] = rng.uniform_int(0, max_dim);
    std::vector<hil::FpMat> maps;
    for (int i = 0; i + 1 < m; ++i) {
        hil::FpMat map(dims[i + 1], dims[i], field);
        for (int r = 0; r < map.rows(); ++r)
            for (int c = 0; c < map.cols(); ++c)
                map.at(r, c) = static_cast<std::uint32_t>(rng.uniform_int(0, p - 1));
        maps.push_back(std::move(map));
    }
    return hil::GridModule::create(std::move(grid), std::move(dims), std::move(maps), p);
}

// monotone simplexwise function on a fixed face-closed complex, values on a
// coarse lattice
inline hil::SimplexFunction random_monotone_function(Rng& rng, std::vector<Simplex> simplices) {
    std::sort(simplices.begin(), simplices.end(), [](const Simplex& a, const Simplex& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    std::map<Simplex, double> values;
    for (const auto& s : simplices) {
        double floor = 0;
        for (const auto& f : hil::facets(s)) floor = std::max(floor, values.at(f));
        values[s] = floor + 0.25 * rng.uniform_int(0, 4);
    }
    std::vector<std::pair<Simplex, double>> list(values.begin(), values.end());
    return hil::SimplexFunction::create(std::move(list));
}

}  // namespace oracles
