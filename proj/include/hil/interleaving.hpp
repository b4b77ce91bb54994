#pragma once

// delta-interleavings of grid modules: a pair of morphisms f: M -> N(delta),
// g: N -> M(delta) whose composites are the 2*delta transition maps. For
// vector-space valued functors homotopy collapses to equality, so all checks
// here are exact matrix identities.

#include <algorithm>
#include <cstdint>
#include <variant>
#include <vector>

#include "hil/common.hpp"
#include "hil/filtration.hpp"
#include "hil/fp.hpp"
#include "hil/grid_module.hpp"
#include "hil/matching.hpp"
#include "hil/persistence.hpp"

namespace hil {

struct invalid_matching : error {
    explicit invalid_matching(const std::string& msg) : error(msg) {}
};

struct invalid_witness : error {
    explicit invalid_witness(const std::string& msg) : error(msg) {}
};

// A morphism f: M -> N(delta), stored as one component matrix per point of
// the canonical sample grid (the union of M's grid and N's grid shifted down
// by delta); both sides are constant between consecutive sample points.
class ModuleMorphism {
public:
    static std::vector<double> canonical_samples(const GridModule& source,
                                                 const GridModule& target, double delta) {
        std::vector<double> s = source.grid();
        for (double t : target.grid()) s.push_back(t - delta);
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        return s;
    }

    static ModuleMorphism create(GridModule source, GridModule target, double delta,
                                 std::vector<FpMat> components) {
        ModuleMorphism f;
        f.samples_ = canonical_samples(source, target, delta);
        if (components.size() != f.samples_.size())
            throw grid_mismatch("expected " + std::to_string(f.samples_.size()) +
                                " components, got " + std::to_string(components.size()));
        for (std::size_t i = 0; i < components.size(); ++i) {
            int rows = target.dim_at(f.samples_[i] + delta);
            int cols = source.dim_at(f.samples_[i]);
            if (components[i].rows() != rows || components[i].cols() != cols)
                throw grid_mismatch("component " + std::to_string(i) + " has shape " +
                                    std::to_string(components[i].rows()) + "x" +
                                    std::to_string(components[i].cols()) + ", expected " +
                                    std::to_string(rows) + "x" + std::to_string(cols));
        }
        f.source_ = std::move(source);
        f.target_ = std::move(target);
        f.delta_ = delta;
        f.components_ = std::move(components);
        return f;
    }

    /// The zero morphism M -> N(delta).
    static ModuleMorphism zero(GridModule source, GridModule target, double delta) {
        std::vector<double> samples = canonical_samples(source, target, delta);
        std::vector<FpMat> comps;
        comps.reserve(samples.size());
        for (double r : samples)
            comps.emplace_back(target.dim_at(r + delta), source.dim_at(r), source.field());
        return create(std::move(source), std::move(target), delta, std::move(comps));
    }

    const GridModule& source() const { return source_; }
    const GridModule& target() const { return target_; }
    double delta() const { return delta_; }
    const std::vector<double>& samples() const { return samples_; }
    const std::vector<FpMat>& components() const { return components_; }

    FpMat component_at(double r) const {
        int lo = 0, hi = static_cast<int>(samples_.size()) - 1, ans = -1;
        while (lo <= hi) {
            int mid = lo + (hi - lo) / 2;
            if (samples_[mid] <= r) { ans = mid; lo = mid + 1; }
            else hi = mid - 1;
        }
        if (ans < 0) return FpMat(target_.dim_at(r + delta_), source_.dim_at(r), source_.field());
        return components_[ans];
    }

    /// Naturality: target transitions commute with source transitions through
    /// the components, across every sample interval.
    bool is_natural() const {
        for (std::size_t i = 0; i + 1 < samples_.size(); ++i) {
            double r = samples_[i], s = samples_[i + 1];
            FpMat lhs = target_.transition(r + delta_, s + delta_).mul(components_[i]);
            FpMat rhs = components_[i + 1].mul(source_.transition(r, s));
            if (!(lhs == rhs)) return false;
        }
        return true;
    }

private:
    GridModule source_, target_;
    double delta_ = 0;
    std::vector<double> samples_;
    std::vector<FpMat> components_;
};

/// True iff (f, g) is a delta-interleaving: both morphisms natural and both
/// composites equal to the 2*delta transitions at every sample point.
/// Throws grid_mismatch when f and g do not connect the same pair of modules
/// at the same delta.
inline bool check_interleaving(const ModuleMorphism& f, const ModuleMorphism& g) {
    if (f.delta() != g.delta())
        throw grid_mismatch("interleaving morphisms must share one delta");
    if (!(f.source() == g.target()) || !(f.target() == g.source()))
        throw grid_mismatch("morphisms do not connect the same pair of modules");
    const GridModule& m = f.source();
    const GridModule& n = f.target();
    const double delta = f.delta();

    if (!f.is_natural() || !g.is_natural()) return false;

    std::vector<double> samples;
    for (double t : m.grid()) { samples.push_back(t); samples.push_back(t - delta); samples.push_back(t - 2 * delta); }
    for (double t : n.grid()) { samples.push_back(t); samples.push_back(t - delta); samples.push_back(t - 2 * delta); }
    std::sort(samples.begin(), samples.end());
    samples.erase(std::unique(samples.begin(), samples.end()), samples.end());

    for (double r : samples) {
        FpMat gf = g.component_at(r + delta).mul(f.component_at(r));
        FpMat phi_m = m.transition(r, r + 2 * delta);
        if (!(gf == phi_m)) return false;
        FpMat fg = f.component_at(r + delta).mul(g.component_at(r));
        FpMat phi_n = n.transition(r, r + 2 * delta);
        if (!(fg == phi_n)) return false;
    }
    return true;
}

// Interval-sum presentation of a barcode: the module with one generator per
// bar, together with per-stage positions of the bars that are alive.
struct IntervalModule {
    GridModule module;
    std::vector<Interval> bars;

    static IntervalModule from_bars(std::vector<Interval> bars, std::uint32_t p = 2) {
        PrimeField field(p);
        std::vector<double> grid;
        for (const auto& b : bars) {
            grid.push_back(b.birth);
            if (!std::isinf(b.death)) grid.push_back(b.death);
        }
        std::sort(grid.begin(), grid.end());
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
        const int m = static_cast<int>(grid.size());
        std::vector<std::vector<int>> alive(m);
        std::vector<int> dims(m, 0);
        for (int s = 0; s < m; ++s) {
            for (std::size_t b = 0; b < bars.size(); ++b)
                if (bars[b].alive_at(grid[s])) alive[s].push_back(static_cast<int>(b));
            dims[s] = static_cast<int>(alive[s].size());
        }
        std::vector<FpMat> maps;
        for (int s = 0; s + 1 < m; ++s) {
            FpMat t(dims[s + 1], dims[s], field);
            for (int c = 0; c < dims[s]; ++c) {
                auto it = std::find(alive[s + 1].begin(), alive[s + 1].end(), alive[s][c]);
                if (it != alive[s + 1].end())
                    t.at(static_cast<int>(it - alive[s + 1].begin()), c) = 1;
            }
            maps.push_back(std::move(t));
        }
        IntervalModule im;
        im.module = GridModule::create(std::move(grid), std::move(dims), std::move(maps), p);
        im.bars = std::move(bars);
        return im;
    }

    // position of bar b in the stage basis at time r, or -1 when dead
    int position_at(std::size_t b, double r) const {
        if (!bars[b].alive_at(r)) return -1;
        int pos = 0;
        for (std::size_t other = 0; other < b; ++other)
            if (bars[other].alive_at(r)) ++pos;
        return pos;
    }
};

struct InterleavingPair {
    IntervalModule m, n;
    ModuleMorphism f, g;
};

/// Constructive converse of algebraic stability: from a delta-matching
/// between two barcodes, build the bar-by-bar interleaving morphisms (shift
/// maps on matched bars, zero on unmatched). The result passes
/// check_interleaving exactly when the matching is valid at delta.
inline InterleavingPair matching_to_interleaving(const std::vector<Interval>& bars_m,
                                                 const std::vector<Interval>& bars_n,
                                                 const DeltaMatching& sigma, std::uint32_t p = 2) {
    std::vector<char> used_m(bars_m.size(), 0), used_n(bars_n.size(), 0);
    for (auto [i, j] : sigma.matched) {
        if (i < 0 || i >= static_cast<int>(bars_m.size()) || j < 0 ||
            j >= static_cast<int>(bars_n.size()))
            throw invalid_matching("matched pair (" + std::to_string(i) + "," + std::to_string(j) +
                                   ") out of range");
        if (used_m[i]++ || used_n[j]++)
            throw invalid_matching("interval used twice in the matching");
    }
    const double delta = sigma.delta;
    IntervalModule m = IntervalModule::from_bars(bars_m, p);
    IntervalModule n = IntervalModule::from_bars(bars_n, p);

    auto build = [&](const IntervalModule& src, const IntervalModule& tgt, bool m_to_n) {
        std::vector<double> samples =
            ModuleMorphism::canonical_samples(src.module, tgt.module, delta);
        std::vector<FpMat> comps;
        comps.reserve(samples.size());
        for (double r : samples) {
            FpMat comp(tgt.module.dim_at(r + delta), src.module.dim_at(r), src.module.field());
            for (auto [i, j] : sigma.matched) {
                int si = m_to_n ? i : j;
                int tj = m_to_n ? j : i;
                int col = src.position_at(si, r);
                int row = tgt.position_at(tj, r + delta);
                if (col >= 0 && row >= 0) comp.at(row, col) = 1;
            }
            comps.push_back(std::move(comp));
        }
        return ModuleMorphism::create(src.module, tgt.module, delta, std::move(comps));
    };

    ModuleMorphism f = build(m, n, true);
    ModuleMorphism g = build(n, m, false);
    return InterleavingPair{std::move(m), std::move(n), std::move(f), std::move(g)};
}

/// d_I of grid modules, computed as the bottleneck distance of the interval
/// decompositions (equal by forward and converse algebraic stability).
inline double interleaving_distance_pfd(const GridModule& m, const GridModule& n) {
    return bottleneck(decompose(m), decompose(n)).value;
}

// --- the computable d_HI bracket -------------------------------------------

// case (a): X and Y are sublevel filtrations of two functions on one complex
struct SublevelWitness {
    SimplexFunction gamma, kappa;
};

// case (b): explicit simplicial interleaving maps, given by vertex images
struct MapWitness {
    std::vector<std::pair<int, int>> to_y;  // vertex of X -> vertex of Y
    std::vector<std::pair<int, int>> to_x;  // vertex of Y -> vertex of X
    double delta = 0;
};

using HiWitness = std::variant<std::monostate, SublevelWitness, MapWitness>;

struct HiBracket {
    double lower = 0;  // max_k d_B(B H_k X, B H_k Y): the homology-bounding floor
    double upper = kInf;  // certified interleaving scale, inf without a witness
};

namespace detail {

inline int lookup_vertex(const std::vector<std::pair<int, int>>& map, int v) {
    for (auto [from, to] : map)
        if (from == v) return to;
    return -1;
}

inline void verify_simplicial_shift(const FilteredComplex& from, const FilteredComplex& to,
                                    const std::vector<std::pair<int, int>>& vertex_map,
                                    double delta, const char* name) {
    for (const auto& e : from.simplices()) {
        Simplex image;
        for (int v : e.verts) {
            int w = lookup_vertex(vertex_map, v);
            if (w < 0) throw invalid_witness(std::string(name) + " misses vertex " + std::to_string(v));
            image.push_back(w);
        }
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());
        auto val = to.value_of(image);
        if (!val)
            throw invalid_witness(std::string(name) + " sends " + simplex_str(e.verts) +
                                  " outside the target complex");
        if (*val > e.value + delta)
            throw invalid_witness(std::string(name) + " sends " + simplex_str(e.verts) + " (value " +
                                  format_value(e.value) + ") to a simplex of value " +
                                  format_value(*val) + " > value + delta");
    }
}

}  // namespace detail

/// Computable bracket d_B <= d_HI <= d_I on filtered complexes: the lower
/// bound from the homology bounding axiom, the upper bound from a verified
/// strict-interleaving witness (inf when no witness is supplied).
inline HiBracket hi_bracket(const FilteredComplex& x, const FilteredComplex& y, int max_degree,
                            std::uint32_t p = 2, const HiWitness& witness = std::monostate{}) {
    HiBracket out;
    Barcode bx = barcodes(x, max_degree, p);
    Barcode by = barcodes(y, max_degree, p);
    for (int k = 0; k <= max_degree; ++k)
        out.lower = std::max(out.lower, bottleneck(bx, by, k).value);

    if (std::holds_alternative<SublevelWitness>(witness)) {
        const auto& w = std::get<SublevelWitness>(witness);
        if (!w.gamma.same_domain(w.kappa))
            throw invalid_witness("gamma and kappa live on different complexes");
        if (!(sublevel_filtration(w.gamma) == x))
            throw invalid_witness("Sb(gamma) differs from X");
        if (!(sublevel_filtration(w.kappa) == y))
            throw invalid_witness("Sb(kappa) differs from Y");
        out.upper = sup_norm_distance(w.gamma, w.kappa);
    } else if (std::holds_alternative<MapWitness>(witness)) {
        const auto& w = std::get<MapWitness>(witness);
        if (w.delta < 0) throw invalid_witness("delta must be nonnegative");
        detail::verify_simplicial_shift(x, y, w.to_y, w.delta, "to_y");
        detail::verify_simplicial_shift(y, x, w.to_x, w.delta, "to_x");
        // composites must be the internal inclusions, i.e. fix every vertex
        for (const auto& e : x.simplices()) {
            if (e.verts.size() != 1) continue;
            int v = e.verts[0];
            if (detail::lookup_vertex(w.to_x, detail::lookup_vertex(w.to_y, v)) != v)
                throw invalid_witness("to_x(to_y(" + std::to_string(v) + ")) != " + std::to_string(v));
        }
        for (const auto& e : y.simplices()) {
            if (e.verts.size() != 1) continue;
            int v = e.verts[0];
            if (detail::lookup_vertex(w.to_y, detail::lookup_vertex(w.to_x, v)) != v)
                throw invalid_witness("to_y(to_x(" + std::to_string(v) + ")) != " + std::to_string(v));
        }
        out.upper = w.delta;
    }
    return out;
}

}  // namespace hil
