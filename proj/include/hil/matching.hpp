#pragma once

// delta-matchings and the bottleneck distance, with certificates.
//
// Interval conventions: barcodes hold half-open intervals [b, d). Ex(I,d)
// is the closed delta-thickening of the closure of I. An interval is forced
// into a delta-matching iff it contains a closed interval of length 2*delta,
// which for [b, d) means d - b > 2*delta (strict); at equality it may be
// left unmatched. Births of essential classes compare as usual and
// inf - inf counts as 0, so two essential bars can match; an essential bar
// can never match a finite one and can never be left unmatched.

#include <algorithm>
#include <optional>
#include <queue>
#include <vector>

#include "hil/barcode.hpp"
#include "hil/common.hpp"

namespace hil {

struct ClosedInterval {
    double lo, hi;
    bool operator==(const ClosedInterval&) const = default;
};

/// Ex(I, delta): the closed delta-thickening [b - delta, d + delta] of I.
inline ClosedInterval extend(const Interval& iv, double delta) {
    return {iv.birth - delta, iv.death + delta};
}

inline bool contains(const ClosedInterval& outer, const Interval& inner) {
    return inner.birth >= outer.lo && inner.death <= outer.hi;
}

/// The least delta at which I and J are mutually Ex-contained: the max of the
/// birth and death gaps, where inf - inf counts as 0 and a finite/infinite
/// death mismatch is inadmissible at every finite delta.
inline double matching_threshold(const Interval& i, const Interval& j) {
    if (std::isinf(i.death) != std::isinf(j.death)) return kInf;
    double death_gap = std::isinf(i.death) ? 0.0 : std::abs(i.death - j.death);
    return std::max(std::abs(i.birth - j.birth), death_gap);
}

/// Mutual Ex-containment: I ⊆ Ex(J, delta) and J ⊆ Ex(I, delta). Evaluated
/// through matching_threshold so that feasibility flips exactly at the
/// candidate values used by bottleneck().
inline bool admissible_pair(const Interval& i, const Interval& j, double delta) {
    return matching_threshold(i, j) <= delta;
}

/// Whether I lies in C^{2 delta}, i.e. must be matched at this delta.
inline bool forced_at(const Interval& iv, double delta) { return iv.length() > 2 * delta; }

struct DeltaMatching {
    double delta = 0;
    std::vector<std::pair<int, int>> matched;  // (index into C, index into D)
};

/// Independent certificate check: indices unique and in range, all forced
/// intervals matched, every matched pair mutually Ex-contained.
inline bool is_valid_matching(const std::vector<Interval>& c, const std::vector<Interval>& d,
                              const DeltaMatching& m) {
    std::vector<char> used_c(c.size(), 0), used_d(d.size(), 0);
    for (auto [i, j] : m.matched) {
        if (i < 0 || i >= static_cast<int>(c.size()) || j < 0 || j >= static_cast<int>(d.size()))
            return false;
        if (used_c[i] || used_d[j]) return false;
        used_c[i] = used_d[j] = 1;
        if (!admissible_pair(c[i], d[j], m.delta)) return false;
    }
    for (std::size_t i = 0; i < c.size(); ++i)
        if (!used_c[i] && forced_at(c[i], m.delta)) return false;
    for (std::size_t j = 0; j < d.size(); ++j)
        if (!used_d[j] && forced_at(d[j], m.delta)) return false;
    return true;
}

namespace detail {

// Hopcroft-Karp maximum bipartite matching. Vertices are 0..n_left-1 and
// 0..n_right-1; adj holds right-neighbors per left vertex.
class HopcroftKarp {
public:
    HopcroftKarp(int n_left, int n_right)
        : n_left_(n_left), n_right_(n_right), adj_(n_left), match_l_(n_left, -1),
          match_r_(n_right, -1) {}

    void add_edge(int l, int r) { adj_[l].push_back(r); }

    int solve() {
        int matching = 0;
        while (bfs()) {
            for (int l = 0; l < n_left_; ++l)
                if (match_l_[l] < 0 && dfs(l)) ++matching;
        }
        return matching;
    }

    const std::vector<int>& left_matches() const { return match_l_; }

private:
    static constexpr int kInfDist = 1 << 30;

    bool bfs() {
        std::queue<int> q;
        dist_.assign(n_left_, kInfDist);
        for (int l = 0; l < n_left_; ++l)
            if (match_l_[l] < 0) {
                dist_[l] = 0;
                q.push(l);
            }
        bool found_free = false;
        while (!q.empty()) {
            int l = q.front();
            q.pop();
            for (int r : adj_[l]) {
                int l2 = match_r_[r];
                if (l2 < 0) {
                    found_free = true;
                } else if (dist_[l2] == kInfDist) {
                    dist_[l2] = dist_[l] + 1;
                    q.push(l2);
                }
            }
        }
        return found_free;
    }

    bool dfs(int l) {
        for (int r : adj_[l]) {
            int l2 = match_r_[r];
            if (l2 < 0 || (dist_[l2] == dist_[l] + 1 && dfs(l2))) {
                match_l_[l] = r;
                match_r_[r] = l;
                return true;
            }
        }
        dist_[l] = kInfDist;
        return false;
    }

    int n_left_, n_right_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> match_l_, match_r_, dist_;
};

}  // namespace detail

/// Searches for a delta-matching between interval multisets C and D.
/// Realized as maximum matching on the admissibility graph augmented with one
/// diagonal slot per unforced interval; a certificate is returned on success.
inline std::optional<DeltaMatching> exists_delta_matching(const std::vector<Interval>& c,
                                                          const std::vector<Interval>& d,
                                                          double delta) {
    const int nc = static_cast<int>(c.size());
    const int nd = static_cast<int>(d.size());
    // left: [0,nc) = C, [nc, nc+nd) = diagonal slots of D
    // right: [0,nd) = D, [nd, nd+nc) = diagonal slots of C
    detail::HopcroftKarp hk(nc + nd, nd + nc);
    for (int i = 0; i < nc; ++i)
        for (int j = 0; j < nd; ++j)
            if (admissible_pair(c[i], d[j], delta)) hk.add_edge(i, j);
    for (int i = 0; i < nc; ++i)
        if (!forced_at(c[i], delta)) hk.add_edge(i, nd + i);
    for (int j = 0; j < nd; ++j) {
        if (!forced_at(d[j], delta)) hk.add_edge(nc + j, j);
        for (int i = 0; i < nc; ++i) hk.add_edge(nc + j, nd + i);
    }
    if (hk.solve() != nc + nd) return std::nullopt;
    DeltaMatching m;
    m.delta = delta;
    const auto& ml = hk.left_matches();
    for (int i = 0; i < nc; ++i)
        if (ml[i] >= 0 && ml[i] < nd) m.matched.emplace_back(i, ml[i]);
    return m;
}

struct BottleneckResult {
    double value = kInf;
    DeltaMatching matching;  // certificate at `value`; empty when value is inf
};

/// Exact bottleneck distance. The infimum is attained on the finite candidate
/// set {|b_I - b_J|, |d_I - d_J|, (d - b)/2, 0} drawn from both barcodes, so a
/// binary search over that set with the matching test is exact on floats.
inline BottleneckResult bottleneck(const std::vector<Interval>& c, const std::vector<Interval>& d) {
    std::vector<double> cand{0.0};
    for (const auto& i : c)
        for (const auto& j : d) {
            double t = matching_threshold(i, j);
            if (!std::isinf(t)) cand.push_back(t);
        }
    for (const auto& i : c)
        if (!std::isinf(i.death)) cand.push_back(i.length() / 2);
    for (const auto& j : d)
        if (!std::isinf(j.death)) cand.push_back(j.length() / 2);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    if (!exists_delta_matching(c, d, cand.back())) return {};  // essential counts differ

    int lo = 0, hi = static_cast<int>(cand.size()) - 1;
    while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        if (exists_delta_matching(c, d, cand[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    BottleneckResult res;
    res.value = cand[lo];
    res.matching = *exists_delta_matching(c, d, cand[lo]);
    return res;
}

inline BottleneckResult bottleneck(const Barcode& c, const Barcode& d, int degree) {
    return bottleneck(c.degree(degree), d.degree(degree));
}

/// d_I on p.f.d. modules presented by their barcodes: equal to the bottleneck
/// distance by forward and converse algebraic stability.
inline double interleaving_distance_pfd(const std::vector<Interval>& bars_m,
                                        const std::vector<Interval>& bars_n) {
    return bottleneck(bars_m, bars_n).value;
}

}  // namespace hil
