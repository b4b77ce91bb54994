#pragma once

// Filtered simplicial complexes. Filtration values follow the convention of
// Rips(P)_r = clique complex on edges {d(p,q) <= 2r}, so a simplex value is
// half its metric diameter.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hil/common.hpp"
#include "hil/metric_space.hpp"

namespace hil {

using Simplex = std::vector<int>;  // sorted, distinct vertex ids

struct complex_error : error {
    enum class Kind { BadSimplex, DuplicateSimplex, MissingFace, NonMonotone };
    Kind kind;
    Simplex simplex, face;
    complex_error(Kind kind_, const std::string& msg, Simplex simplex_ = {}, Simplex face_ = {})
        : error(msg), kind(kind_), simplex(std::move(simplex_)), face(std::move(face_)) {}
};

struct non_monotone_function : error {
    Simplex face, coface;
    non_monotone_function(const std::string& msg, Simplex face_, Simplex coface_)
        : error(msg), face(std::move(face_)), coface(std::move(coface_)) {}
};

inline std::string simplex_str(const Simplex& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(s[i]);
    }
    return out + "]";
}

inline std::vector<Simplex> facets(const Simplex& s) {
    std::vector<Simplex> out;
    if (s.size() < 2) return out;
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
        Simplex f;
        f.reserve(s.size() - 1);
        for (std::size_t i = 0; i < s.size(); ++i)
            if (i != drop) f.push_back(s[i]);
        out.push_back(std::move(f));
    }
    return out;
}

// A finite simplicial complex with a monotone real value per simplex,
// closed under faces. Simplices are stored in (dimension, lex) order.
class FilteredComplex {
public:
    struct Entry {
        Simplex verts;
        double value;
        bool operator==(const Entry&) const = default;
    };

    FilteredComplex() = default;

    static FilteredComplex from_simplices(std::vector<std::pair<Simplex, double>> simplices) {
        FilteredComplex x;
        for (auto& [verts, value] : simplices) {
            std::sort(verts.begin(), verts.end());
            if (verts.empty() || std::adjacent_find(verts.begin(), verts.end()) != verts.end())
                throw complex_error(complex_error::Kind::BadSimplex,
                                    "simplex must have distinct vertices: " + simplex_str(verts), verts);
            x.entries_.push_back({std::move(verts), value});
        }
        std::sort(x.entries_.begin(), x.entries_.end(), [](const Entry& a, const Entry& b) {
            if (a.verts.size() != b.verts.size()) return a.verts.size() < b.verts.size();
            return a.verts < b.verts;
        });
        for (std::size_t i = 0; i < x.entries_.size(); ++i) {
            if (!x.index_.emplace(x.entries_[i].verts, static_cast<int>(i)).second)
                throw complex_error(complex_error::Kind::DuplicateSimplex,
                                    "duplicate simplex " + simplex_str(x.entries_[i].verts),
                                    x.entries_[i].verts);
        }
        for (const auto& e : x.entries_) {
            for (const auto& f : facets(e.verts)) {
                auto it = x.index_.find(f);
                if (it == x.index_.end())
                    throw complex_error(complex_error::Kind::MissingFace,
                                        "face " + simplex_str(f) + " of " + simplex_str(e.verts) +
                                            " is missing",
                                        e.verts, f);
                if (x.entries_[it->second].value > e.value)
                    throw complex_error(complex_error::Kind::NonMonotone,
                                        "face " + simplex_str(f) + " enters after coface " +
                                            simplex_str(e.verts),
                                        e.verts, f);
            }
        }
        return x;
    }

    const std::vector<Entry>& simplices() const { return entries_; }
    int size() const { return static_cast<int>(entries_.size()); }
    bool empty() const { return entries_.empty(); }

    int max_dim() const {
        int d = -1;
        for (const auto& e : entries_) d = std::max(d, static_cast<int>(e.verts.size()) - 1);
        return d;
    }

    std::optional<int> index_of(const Simplex& s) const {
        auto it = index_.find(s);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    std::optional<double> value_of(const Simplex& s) const {
        auto it = index_.find(s);
        if (it == index_.end()) return std::nullopt;
        return entries_[it->second].value;
    }

    std::vector<double> critical_values() const {
        std::vector<double> vals;
        vals.reserve(entries_.size());
        for (const auto& e : entries_) vals.push_back(e.value);
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        return vals;
    }

    long long euler_characteristic_at(double r) const {
        long long chi = 0;
        for (const auto& e : entries_)
            if (e.value <= r) chi += (e.verts.size() % 2 == 1) ? 1 : -1;
        return chi;
    }

    bool operator==(const FilteredComplex& o) const { return entries_ == o.entries_; }

private:
    std::vector<Entry> entries_;
    std::map<Simplex, int> index_;
};

/// X(delta): the filtration with X(delta)_r = X_{r+delta}.
inline FilteredComplex shift_filtration(const FilteredComplex& x, double delta) {
    std::vector<std::pair<Simplex, double>> shifted;
    shifted.reserve(x.size());
    for (const auto& e : x.simplices()) shifted.emplace_back(e.verts, e.value - delta);
    return FilteredComplex::from_simplices(std::move(shifted));
}

// A real-valued function on the simplices of a fixed face-closed complex.
// Monotonicity is a property of the values, checked by sublevel_filtration.
class SimplexFunction {
public:
    static SimplexFunction create(std::vector<std::pair<Simplex, double>> values) {
        // reuse the complex validation for closure, then keep values verbatim
        SimplexFunction g;
        std::map<Simplex, double> by_simplex;
        for (auto& [verts, value] : values) {
            std::sort(verts.begin(), verts.end());
            if (!by_simplex.emplace(verts, value).second)
                throw complex_error(complex_error::Kind::DuplicateSimplex,
                                    "duplicate simplex " + simplex_str(verts), verts);
        }
        for (const auto& [verts, value] : by_simplex)
            for (const auto& f : facets(verts))
                if (!by_simplex.count(f))
                    throw complex_error(complex_error::Kind::MissingFace,
                                        "face " + simplex_str(f) + " of " + simplex_str(verts) +
                                            " is missing",
                                        verts, f);
        for (auto& [verts, value] : by_simplex) {
            g.simplices_.push_back(verts);
            g.values_.push_back(value);
            g.index_.emplace(verts, static_cast<int>(g.simplices_.size()) - 1);
        }
        return g;
    }

    const std::vector<Simplex>& simplices() const { return simplices_; }
    const std::vector<double>& values() const { return values_; }
    int size() const { return static_cast<int>(simplices_.size()); }

    std::optional<double> value_of(const Simplex& s) const {
        auto it = index_.find(s);
        if (it == index_.end()) return std::nullopt;
        return values_[it->second];
    }

    bool same_domain(const SimplexFunction& o) const { return simplices_ == o.simplices_; }

private:
    std::map<Simplex, int> index_;
    std::vector<Simplex> simplices_;
    std::vector<double> values_;
};

/// sup-norm distance between two simplexwise functions on one complex.
inline double sup_norm_distance(const SimplexFunction& g, const SimplexFunction& k) {
    if (!g.same_domain(k)) throw error("simplex functions live on different complexes");
    double sup = 0;
    for (int i = 0; i < g.size(); ++i) sup = std::max(sup, std::abs(g.values()[i] - k.values()[i]));
    return sup;
}

/// Sb(gamma): the filtration whose sublevel set at r is gamma^{-1}(-inf, r].
inline FilteredComplex sublevel_filtration(const SimplexFunction& gamma) {
    for (int i = 0; i < gamma.size(); ++i) {
        const Simplex& s = gamma.simplices()[i];
        for (const auto& f : facets(s)) {
            double fv = *gamma.value_of(f);
            if (fv > gamma.values()[i])
                throw non_monotone_function("gamma(" + simplex_str(f) + ") = " + format_value(fv) +
                                                " > gamma(" + simplex_str(s) + ") = " +
                                                format_value(gamma.values()[i]),
                                            f, s);
        }
    }
    std::vector<std::pair<Simplex, double>> entries;
    entries.reserve(gamma.size());
    for (int i = 0; i < gamma.size(); ++i) entries.emplace_back(gamma.simplices()[i], gamma.values()[i]);
    return FilteredComplex::from_simplices(std::move(entries));
}

/// Vietoris-Rips filtration: simplex value is max_{u,v} d(u,v)/2, flag
/// expansion up to max_dim, simplices with value > max_scale omitted.
inline FilteredComplex rips_filtration(const FiniteMetricSpace& p, int max_dim,
                                       double max_scale = kInf) {
    const int n = p.size();
    std::vector<std::pair<Simplex, double>> entries;
    for (int v = 0; v < n; ++v) entries.push_back({{v}, 0.0});
    if (max_dim >= 1) {
        // grow cliques one vertex at a time; candidates stay above the last vertex
        std::vector<std::pair<Simplex, double>> frontier;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                double val = p.dist(u, v) / 2.0;
                if (val <= max_scale) frontier.push_back({{u, v}, val});
            }
        for (int dim = 1; dim <= max_dim && !frontier.empty(); ++dim) {
            for (const auto& e : frontier) entries.push_back(e);
            if (dim == max_dim) break;
            std::vector<std::pair<Simplex, double>> next;
            for (const auto& [verts, value] : frontier) {
                for (int w = verts.back() + 1; w < n; ++w) {
                    double val = value;
                    bool ok = true;
                    for (int u : verts) {
                        double ev = p.dist(u, w) / 2.0;
                        if (ev > max_scale) { ok = false; break; }
                        val = std::max(val, ev);
                    }
                    if (!ok || val > max_scale) continue;
                    Simplex s = verts;
                    s.push_back(w);
                    next.push_back({std::move(s), val});
                }
            }
            frontier = std::move(next);
        }
    }
    return FilteredComplex::from_simplices(std::move(entries));
}

// The correspondence filtration F^P (and F^Q) on the simplex with vertex set
// C: a simplex enters F^P at r once all its P-projections are pairwise within
// 2r. gamma_p/gamma_q are the entry-time functions on the common domain of
// all simplices up to max_dim, so that Sb(gamma_p) = F_P whenever no
// max_scale cut is applied.
struct CorrespondenceFiltration {
    FilteredComplex f_p, f_q;
    SimplexFunction gamma_p, gamma_q;
};

inline CorrespondenceFiltration correspondence_filtration(const Correspondence& c,
                                                          const FiniteMetricSpace& p,
                                                          const FiniteMetricSpace& q, int max_dim,
                                                          double max_scale = kInf) {
    if (c.size_p() != p.size() || c.size_q() != q.size())
        throw index_out_of_range("correspondence does not index the given spaces");
    const int m = c.size();
    const auto& cells = c.pairs();

    std::vector<std::pair<Simplex, double>> fn_p, fn_q;
    std::vector<std::pair<Simplex, double>> cx_p, cx_q;

    // All subsets of the cells of C with at most max_dim+1 elements.
    Simplex stack;
    auto value_p = [&](const Simplex& s) {
        double v = 0;
        for (std::size_t a = 0; a < s.size(); ++a)
            for (std::size_t b = a + 1; b < s.size(); ++b)
                v = std::max(v, p.dist(cells[s[a]].first, cells[s[b]].first) / 2.0);
        return v;
    };
    auto value_q = [&](const Simplex& s) {
        double v = 0;
        for (std::size_t a = 0; a < s.size(); ++a)
            for (std::size_t b = a + 1; b < s.size(); ++b)
                v = std::max(v, q.dist(cells[s[a]].second, cells[s[b]].second) / 2.0);
        return v;
    };
    auto emit = [&](const Simplex& s) {
        double vp = value_p(s), vq = value_q(s);
        fn_p.emplace_back(s, vp);
        fn_q.emplace_back(s, vq);
        if (vp <= max_scale) cx_p.emplace_back(s, vp);
        if (vq <= max_scale) cx_q.emplace_back(s, vq);
    };
    auto recurse = [&](auto&& self, int next) -> void {
        if (!stack.empty()) emit(stack);
        if (static_cast<int>(stack.size()) == max_dim + 1) return;
        for (int v = next; v < m; ++v) {
            stack.push_back(v);
            self(self, v + 1);
            stack.pop_back();
        }
    };
    recurse(recurse, 0);

    return CorrespondenceFiltration{FilteredComplex::from_simplices(std::move(cx_p)),
                                    FilteredComplex::from_simplices(std::move(cx_q)),
                                    SimplexFunction::create(std::move(fn_p)),
                                    SimplexFunction::create(std::move(fn_q))};
}

// Verification report for the fiber condition of Quillen's Theorem A applied
// to the projection-induced map g: F^P -> Rips(P).
struct QuillenReport {
    bool pass = true;
    int fibers_checked = 0;
    long long member_simplices = 0;
    std::string detail;       // human-readable failure description, empty on PASS
    Simplex witness_simplex;  // the simplex of Rips(P) (or F^P) at fault
    double witness_value = 0; // the critical value at which the failure shows
};

/// Checks, at every critical value, that each closed simplex of Rips(P) pulls
/// back under proj_P to the full simplex on its preimage vertex set (a cone).
/// max_dim / max_scale must match how f_p was constructed.
inline QuillenReport quillen_fiber_check(const FilteredComplex& f_p, const FiniteMetricSpace& p,
                                         const Correspondence& c, int max_dim,
                                         double max_scale = kInf) {
    QuillenReport rep;
    FilteredComplex rips = rips_filtration(p, max_dim, max_scale);
    const auto& cells = c.pairs();

    // g must be a map of filtrations: the image simplex exists no later.
    for (const auto& e : f_p.simplices()) {
        Simplex image;
        for (int cell : e.verts) {
            if (cell < 0 || cell >= c.size())
                throw index_out_of_range("F^P vertex " + std::to_string(cell) +
                                         " is not a cell of C");
            image.push_back(cells[cell].first);
        }
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());
        auto rv = rips.value_of(image);
        if (!rv || *rv > e.value) {
            rep.pass = false;
            rep.detail = "projection of " + simplex_str(e.verts) + " = " + simplex_str(image) +
                         (rv ? " enters Rips(P) only at " + format_value(*rv) : " is not in Rips(P)") +
                         " but F^P holds it at " + format_value(e.value);
            rep.witness_simplex = e.verts;
            rep.witness_value = e.value;
            return rep;
        }
    }

    // Fullness of each fiber from its first critical value onward.
    for (const auto& sigma : rips.simplices()) {
        Simplex fiber_verts;
        for (int cell = 0; cell < c.size(); ++cell)
            if (std::binary_search(sigma.verts.begin(), sigma.verts.end(), cells[cell].first))
                fiber_verts.push_back(cell);
        Simplex stack;
        bool ok = true;
        auto walk = [&](auto&& self, std::size_t next) -> void {
            if (!ok) return;
            if (!stack.empty()) {
                auto fv = f_p.value_of(stack);
                ++rep.member_simplices;
                if (!fv || *fv > sigma.value) {
                    ok = false;
                    rep.pass = false;
                    rep.detail = "fiber over " + simplex_str(sigma.verts) + " at r = " +
                                 format_value(sigma.value) + " is missing " + simplex_str(stack) +
                                 (fv ? " (enters only at " + format_value(*fv) + ")" : "");
                    rep.witness_simplex = sigma.verts;
                    rep.witness_value = sigma.value;
                    return;
                }
            }
            if (static_cast<int>(stack.size()) == max_dim + 1) return;
            for (std::size_t i = next; i < fiber_verts.size(); ++i) {
                stack.push_back(fiber_verts[i]);
                self(self, i + 1);
                stack.pop_back();
                if (!ok) return;
            }
        };
        walk(walk, 0);
        if (!rep.pass) return rep;
        ++rep.fibers_checked;
    }
    return rep;
}

}  // namespace hil
