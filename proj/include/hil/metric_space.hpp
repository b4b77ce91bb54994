#pragma once

// Finite metric spaces, correspondences between them, distortion, and the
// exact Gromov-Hausdorff distance at desk scale.

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hil/common.hpp"

namespace hil {

struct metric_error : error {
    enum class Kind { NotSquare, AsymmetricMatrix, NonzeroDiagonal, TriangleViolation, DuplicatePoint };
    Kind kind;
    int i = -1, j = -1, k = -1;  // witness indices where applicable
    metric_error(Kind kind_, const std::string& msg, int i_ = -1, int j_ = -1, int k_ = -1)
        : error(msg), kind(kind_), i(i_), j(j_), k(k_) {}
};

struct correspondence_error : error {
    explicit correspondence_error(const std::string& msg) : error(msg) {}
};

struct index_out_of_range : error {
    explicit index_out_of_range(const std::string& msg) : error(msg) {}
};

struct too_large : error {
    explicit too_large(const std::string& msg) : error(msg) {}
};

class FiniteMetricSpace {
public:
    int size() const { return n_; }
    double dist(int i, int j) const { return d_[static_cast<std::size_t>(i) * n_ + j]; }
    const std::vector<std::string>& labels() const { return labels_; }

    double diameter() const {
        double m = 0;
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j) m = std::max(m, dist(i, j));
        return m;
    }

    bool operator==(const FiniteMetricSpace& o) const { return n_ == o.n_ && d_ == o.d_; }

    friend FiniteMetricSpace validate_metric(const std::vector<std::vector<double>>& matrix,
                                             std::vector<std::string> labels, double tol);

private:
    FiniteMetricSpace(int n, std::vector<double> d, std::vector<std::string> labels)
        : n_(n), d_(std::move(d)), labels_(std::move(labels)) {}

    int n_ = 0;
    std::vector<double> d_;
    std::vector<std::string> labels_;
};

// Checks the metric axioms (within `tol`) and rejects pseudo-metrics. The
// returned space stores the matrix as given.
inline FiniteMetricSpace validate_metric(const std::vector<std::vector<double>>& matrix,
                                         std::vector<std::string> labels = {},
                                         double tol = kDefaultTol) {
    const int n = static_cast<int>(matrix.size());
    if (n == 0) throw metric_error(metric_error::Kind::NotSquare, "empty distance matrix");
    for (int i = 0; i < n; ++i)
        if (static_cast<int>(matrix[i].size()) != n)
            throw metric_error(metric_error::Kind::NotSquare,
                               "row " + std::to_string(i) + " has wrong length", i);
    for (int i = 0; i < n; ++i)
        if (std::abs(matrix[i][i]) > tol)
            throw metric_error(metric_error::Kind::NonzeroDiagonal,
                               "dist[" + std::to_string(i) + "][" + std::to_string(i) + "] = " +
                                   format_value(matrix[i][i]),
                               i, i);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(matrix[i][j] - matrix[j][i]) > tol)
                throw metric_error(metric_error::Kind::AsymmetricMatrix,
                                   "dist[" + std::to_string(i) + "][" + std::to_string(j) +
                                       "] != dist[" + std::to_string(j) + "][" + std::to_string(i) + "]",
                                   i, j);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (matrix[i][j] <= tol)
                throw metric_error(metric_error::Kind::DuplicatePoint,
                                   "points " + std::to_string(i) + " and " + std::to_string(j) +
                                       " are at distance " + format_value(matrix[i][j]),
                                   i, j);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j)
                if (matrix[i][k] > matrix[i][j] + matrix[j][k] + tol)
                    throw metric_error(metric_error::Kind::TriangleViolation,
                                       "d(" + std::to_string(i) + "," + std::to_string(k) + ") > d(" +
                                           std::to_string(i) + "," + std::to_string(j) + ") + d(" +
                                           std::to_string(j) + "," + std::to_string(k) + ")",
                                       i, k, j);
    if (labels.empty()) {
        labels.resize(n);
        for (int i = 0; i < n; ++i) labels[i] = "p" + std::to_string(i);
    }
    std::vector<double> flat(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) flat[static_cast<std::size_t>(i) * n + j] = matrix[i][j];
    return FiniteMetricSpace(n, std::move(flat), std::move(labels));
}

// A relation C ⊂ P×Q whose two coordinate projections are onto.
class Correspondence {
public:
    static Correspondence create(std::vector<std::pair<int, int>> pairs, int size_p, int size_q) {
        std::sort(pairs.begin(), pairs.end());
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
        std::vector<bool> hit_p(size_p, false), hit_q(size_q, false);
        for (auto [i, j] : pairs) {
            if (i < 0 || i >= size_p || j < 0 || j >= size_q)
                throw index_out_of_range("correspondence pair (" + std::to_string(i) + "," +
                                         std::to_string(j) + ") out of range");
            hit_p[i] = true;
            hit_q[j] = true;
        }
        for (int i = 0; i < size_p; ++i)
            if (!hit_p[i])
                throw correspondence_error("projection to P misses point " + std::to_string(i));
        for (int j = 0; j < size_q; ++j)
            if (!hit_q[j])
                throw correspondence_error("projection to Q misses point " + std::to_string(j));
        return Correspondence(std::move(pairs), size_p, size_q);
    }

    static Correspondence diagonal(int n) {
        std::vector<std::pair<int, int>> pairs(n);
        for (int i = 0; i < n; ++i) pairs[i] = {i, i};
        return Correspondence(std::move(pairs), n, n);
    }

    static Correspondence full(int size_p, int size_q) {
        std::vector<std::pair<int, int>> pairs;
        pairs.reserve(static_cast<std::size_t>(size_p) * size_q);
        for (int i = 0; i < size_p; ++i)
            for (int j = 0; j < size_q; ++j) pairs.emplace_back(i, j);
        return Correspondence(std::move(pairs), size_p, size_q);
    }

    const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
    int size() const { return static_cast<int>(pairs_.size()); }
    int size_p() const { return size_p_; }
    int size_q() const { return size_q_; }

    // The same relation read as a correspondence between Q and P. Cell order
    // is preserved, so complexes built on the cells of C keep their indexing.
    Correspondence transpose() const {
        std::vector<std::pair<int, int>> rev(pairs_.size());
        for (std::size_t k = 0; k < pairs_.size(); ++k) rev[k] = {pairs_[k].second, pairs_[k].first};
        return Correspondence(std::move(rev), size_q_, size_p_);
    }

    bool operator==(const Correspondence& o) const = default;

private:
    Correspondence(std::vector<std::pair<int, int>> pairs, int size_p, int size_q)
        : pairs_(std::move(pairs)), size_p_(size_p), size_q_(size_q) {}

    std::vector<std::pair<int, int>> pairs_;
    int size_p_ = 0, size_q_ = 0;
};

/// Metric distortion of C: sup over (p,q),(p',q') in C of |d_P(p,p') - d_Q(q,q')|.
inline double distortion(const Correspondence& c, const FiniteMetricSpace& p,
                         const FiniteMetricSpace& q) {
    if (c.size_p() != p.size() || c.size_q() != q.size())
        throw index_out_of_range("correspondence does not index the given spaces");
    double sup = 0;
    const auto& pairs = c.pairs();
    for (std::size_t a = 0; a < pairs.size(); ++a)
        for (std::size_t b = a; b < pairs.size(); ++b) {
            double dp = p.dist(pairs[a].first, pairs[b].first);
            double dq = q.dist(pairs[a].second, pairs[b].second);
            sup = std::max(sup, std::abs(dp - dq));
        }
    return sup;
}

/// distortion(C)/2; an upper bound for the Gromov-Hausdorff distance.
inline double gh_upper_bound(const FiniteMetricSpace& p, const FiniteMetricSpace& q,
                             const Correspondence& c) {
    return distortion(c, p, q) / 2.0;
}

struct GHResult {
    double value;  // exactly half the minimal distortion
    Correspondence witness;
};

namespace detail {

// Minimal correspondences are unions of a function P->Q and a function Q->P,
// and dropping pairs never increases distortion, so the search runs over
// exactly those. Depth-first branch and bound: rows of P are assigned first,
// then the still-uncovered columns of Q; a branch dies as soon as the partial
// distortion reaches the incumbent.
class GHSearch {
public:
    GHSearch(const FiniteMetricSpace& p, const FiniteMetricSpace& q) : p_(p), q_(q) {}

    GHResult run() {
        np_ = p_.size();
        nq_ = q_.size();
        chosen_.clear();
        best_ = kInf;
        greedy_seed();
        descend_rows(0);
        return GHResult{best_ / 2.0,
                        Correspondence::create(best_pairs_, np_, nq_)};
    }

private:
    double pair_cost(std::pair<int, int> a, std::pair<int, int> b) const {
        return std::abs(p_.dist(a.first, b.first) - q_.dist(a.second, b.second));
    }

    double incremental(const std::vector<std::pair<int, int>>& chosen, std::pair<int, int> cell) const {
        double m = 0;
        for (auto& c : chosen) m = std::max(m, pair_cost(c, cell));
        return m;
    }

    void greedy_seed() {
        std::vector<std::pair<int, int>> chosen;
        double cur = 0;
        for (int i = 0; i < np_; ++i) {
            int best_j = 0;
            double best_inc = kInf;
            for (int j = 0; j < nq_; ++j) {
                double inc = incremental(chosen, {i, j});
                if (inc < best_inc) { best_inc = inc; best_j = j; }
            }
            chosen.emplace_back(i, best_j);
            cur = std::max(cur, best_inc);
        }
        std::vector<bool> covered(nq_, false);
        for (auto& c : chosen) covered[c.second] = true;
        for (int j = 0; j < nq_; ++j) {
            if (covered[j]) continue;
            int best_i = 0;
            double best_inc = kInf;
            for (int i = 0; i < np_; ++i) {
                double inc = incremental(chosen, {i, j});
                if (inc < best_inc) { best_inc = inc; best_i = i; }
            }
            chosen.emplace_back(best_i, j);
            cur = std::max(cur, best_inc);
        }
        best_ = cur;
        best_pairs_ = chosen;
    }

    void record_if_better(double cur) {
        if (cur < best_) {
            best_ = cur;
            best_pairs_ = chosen_;
        }
    }

    void descend_rows(int row) {
        if (row == np_) {
            std::vector<int> missing;
            std::vector<bool> covered(nq_, false);
            for (auto& c : chosen_) covered[c.second] = true;
            for (int j = 0; j < nq_; ++j)
                if (!covered[j]) missing.push_back(j);
            descend_cols(missing, 0, partial_);
            return;
        }
        std::vector<std::pair<double, int>> order;
        order.reserve(nq_);
        for (int j = 0; j < nq_; ++j) {
            double inc = incremental(chosen_, {row, j});
            if (std::max(partial_, inc) < best_) order.emplace_back(inc, j);
        }
        std::sort(order.begin(), order.end());
        for (auto [inc, j] : order) {
            double saved = partial_;
            double next = std::max(partial_, inc);
            if (next >= best_) break;  // ordered ascending, the rest only get worse
            chosen_.emplace_back(row, j);
            partial_ = next;
            descend_rows(row + 1);
            chosen_.pop_back();
            partial_ = saved;
            if (best_ == 0) return;
        }
    }

    void descend_cols(const std::vector<int>& missing, std::size_t idx, double cur) {
        if (cur >= best_) return;
        if (idx == missing.size()) {
            record_if_better(cur);
            return;
        }
        int j = missing[idx];
        std::vector<std::pair<double, int>> order;
        order.reserve(np_);
        for (int i = 0; i < np_; ++i) {
            double inc = incremental(chosen_, {i, j});
            if (std::max(cur, inc) < best_) order.emplace_back(inc, i);
        }
        std::sort(order.begin(), order.end());
        for (auto [inc, i] : order) {
            double next = std::max(cur, inc);
            if (next >= best_) break;
            chosen_.emplace_back(i, j);
            descend_cols(missing, idx + 1, next);
            chosen_.pop_back();
            if (best_ == 0) return;
        }
    }

    const FiniteMetricSpace& p_;
    const FiniteMetricSpace& q_;
    int np_ = 0, nq_ = 0;
    double partial_ = 0;
    double best_ = kInf;
    std::vector<std::pair<int, int>> chosen_;
    std::vector<std::pair<int, int>> best_pairs_;
};

}  // namespace detail

/// Exact Gromov-Hausdorff distance with an optimal witness correspondence.
/// Exhaustive up to pruning; refuses inputs with |P|*|Q| beyond `size_limit`.
inline GHResult gromov_hausdorff_exact(const FiniteMetricSpace& p, const FiniteMetricSpace& q,
                                       int size_limit = 36) {
    if (static_cast<long long>(p.size()) * q.size() > size_limit)
        throw too_large("|P|*|Q| = " + std::to_string(p.size() * q.size()) + " exceeds size_limit " +
                        std::to_string(size_limit) + "; use gh_upper_bound with a correspondence");
    detail::GHSearch search(p, q);
    return search.run();
}

}  // namespace hil
