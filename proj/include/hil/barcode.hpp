#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "hil/common.hpp"

namespace hil {

// Half-open interval [birth, death); death may be infinite for essential
// classes. Empty intervals (birth == death) are never stored in a Barcode.
struct Interval {
    double birth;
    double death;

    double length() const { return death - birth; }
    bool alive_at(double r) const { return birth <= r && r < death; }
    auto operator<=>(const Interval&) const = default;
};

// Multiset of intervals per homology degree. Slices are kept sorted so that
// equality is multiset equality and output is deterministic.
class Barcode {
public:
    void add(int degree, Interval iv) {
        if (!(iv.birth < iv.death)) return;  // zero-length pairs are dropped
        auto& slice = slices_[degree];
        slice.insert(std::upper_bound(slice.begin(), slice.end(), iv), iv);
    }

    const std::vector<Interval>& degree(int k) const {
        static const std::vector<Interval> empty;
        auto it = slices_.find(k);
        return it == slices_.end() ? empty : it->second;
    }

    std::vector<int> degrees() const {
        std::vector<int> ks;
        for (const auto& [k, slice] : slices_)
            if (!slice.empty()) ks.push_back(k);
        return ks;
    }

    int total_intervals() const {
        int n = 0;
        for (const auto& [k, slice] : slices_) n += static_cast<int>(slice.size());
        return n;
    }

    int alive_at(int k, double r) const {
        int n = 0;
        for (const auto& iv : degree(k))
            if (iv.alive_at(r)) ++n;
        return n;
    }

    bool operator==(const Barcode& o) const {
        auto non_empty = [](const std::map<int, std::vector<Interval>>& m) {
            std::map<int, std::vector<Interval>> out;
            for (const auto& [k, s] : m)
                if (!s.empty()) out.emplace(k, s);
            return out;
        };
        return non_empty(slices_) == non_empty(o.slices_);
    }

private:
    std::map<int, std::vector<Interval>> slices_;
};

}  // namespace hil
