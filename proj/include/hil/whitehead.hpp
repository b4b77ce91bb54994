#pragma once

// Homology persistence modules of the sphere-power tower Y^n: stage i of the
// tower is a product of 2^{n-i} spheres of dimension 2^i, live on [2i, 2i+2),
// and each step collapses adjacent sphere pairs via S^m x S^m -> S^{2m}.
// Over F_2 the Kunneth basis of H_k of a sphere power is indexed by the
// subsets of copies carrying the top class, and the collapse acts by merging
// aligned pairs: a basis subset survives iff every pair of copies (2j, 2j+1)
// lies fully inside or fully outside it.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "hil/common.hpp"
#include "hil/fp.hpp"
#include "hil/grid_module.hpp"
#include "hil/interleaving.hpp"
#include "hil/matching.hpp"

namespace hil {

struct SpherePowerStage {
    int index;       // 0 <= index <= n; the terminal point is not a stage
    long long sphere_dim;  // 2^index
    long long copies;      // 2^{n-index}
};

inline SpherePowerStage sphere_power_stage(int n, int i) {
    return SpherePowerStage{i, 1LL << i, 1LL << (n - i)};
}

namespace detail {

// saturating binomial: values beyond the cap come back as the cap, which is
// far above any size build_Yn_module will accept
inline long long binom_ll(long long n, long long k) {
    constexpr long long cap = 4'000'000'000'000'000'000LL;
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (long long i = 1; i <= k; ++i) {
        r = r * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
        if (r > static_cast<unsigned __int128>(cap)) return cap;
    }
    return static_cast<long long>(r);
}

// Subsets of {0..c-1} of size t in lexicographic order, as sorted vectors.
inline std::vector<std::vector<int>> kunneth_basis(int c, int t) {
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

}  // namespace detail

/// dim H_k of stage i of Y^n over F_2: binom(copies, k / sphere_dim) when the
/// sphere dimension divides k, else 0.
inline long long yn_stage_dim(int n, int stage, long long k) {
    SpherePowerStage st = sphere_power_stage(n, stage);
    if (k % st.sphere_dim != 0) return 0;
    return detail::binom_ll(st.copies, k / st.sphere_dim);
}

/// H_k(Y^n) as a GridModule over F_2 on the grid (0, 2, ..., 2n+2); reduced
/// homology, so degree k >= 1 is assumed and the terminal point carries 0.
inline GridModule build_Yn_module(int n, long long k) {
    if (n < 1) throw error("build_Yn_module needs n >= 1");
    if (k < 1) throw error("build_Yn_module computes reduced homology, needs degree >= 1");
    const PrimeField f2(2);

    std::vector<double> grid;
    std::vector<int> dims;
    for (int i = 0; i <= n + 1; ++i) grid.push_back(2.0 * i);

    std::vector<long long> stage_dims(n + 2, 0);
    for (int i = 0; i <= n; ++i) stage_dims[i] = yn_stage_dim(n, i, k);
    stage_dims[n + 1] = 0;
    for (int i = 0; i <= n + 1; ++i)
        if (stage_dims[i] > 50'000'000)
            throw too_large("Kunneth basis too large at n = " + std::to_string(n) + ", k = " +
                            std::to_string(k));
    long long total_entries = 0;
    for (int i = 0; i <= n; ++i) total_entries += stage_dims[i] * stage_dims[i + 1];
    if (total_entries > 50'000'000)
        throw too_large("collapse matrices too large at n = " + std::to_string(n) + ", k = " +
                        std::to_string(k));
    for (int i = 0; i <= n + 1; ++i) dims.push_back(static_cast<int>(stage_dims[i]));

    std::vector<FpMat> maps;
    for (int i = 0; i <= n; ++i) {
        FpMat map(dims[i + 1], dims[i], f2);
        if (dims[i] > 0 && dims[i + 1] > 0) {
            SpherePowerStage st = sphere_power_stage(n, i);
            int c = static_cast<int>(st.copies);
            int t = static_cast<int>(k / st.sphere_dim);
            auto src = detail::kunneth_basis(c, t);
            auto dst = detail::kunneth_basis(c / 2, t / 2);
            for (std::size_t col = 0; col < src.size(); ++col) {
                // merge aligned pairs (2j, 2j+1); any split pair kills the class
                std::vector<char> in(c, 0);
                for (int v : src[col]) in[v] = 1;
                std::vector<int> image;
                bool survives = true;
                for (int j = 0; j < c / 2; ++j) {
                    int a = in[2 * j], b = in[2 * j + 1];
                    if (a != b) { survives = false; break; }
                    if (a) image.push_back(j);
                }
                if (!survives) continue;
                auto it = std::lower_bound(dst.begin(), dst.end(), image);
                if (it == dst.end() || *it != image) continue;  // odd t: nothing survives
                map.at(static_cast<int>(it - dst.begin()), static_cast<int>(col)) = 1;
            }
        }
        maps.push_back(std::move(map));
    }
    return GridModule::create(std::move(grid), std::move(dims), std::move(maps), 2);
}

/// The truncated Y' tower: blocks Y^1, ..., Y^N laid out on consecutive
/// windows (offsets 0, 4, 10, ...), with zero maps across block boundaries.
inline GridModule build_Yprime_module(int big_n, long long k) {
    if (big_n < 1) throw error("build_Yprime_module needs N >= 1");
    const PrimeField f2(2);
    std::vector<double> grid;
    std::vector<int> dims;
    std::vector<FpMat> maps;
    double offset = 0;
    for (int n = 1; n <= big_n; ++n) {
        GridModule block = build_Yn_module(n, k);
        for (int i = 0; i <= n; ++i) {
            grid.push_back(offset + 2.0 * i);
            dims.push_back(block.dims()[i]);
            if (i < n) {
                maps.push_back(block.maps()[i]);
            } else {
                // terminal collapse of this block; the next point starts a new one
                int next_dim = (n == big_n) ? 0 : static_cast<int>(yn_stage_dim(n + 1, 0, k));
                maps.push_back(FpMat(next_dim, dims.back(), f2));
            }
        }
        offset += 2.0 * n + 2.0;
    }
    grid.push_back(offset);
    dims.push_back(0);
    return GridModule::create(std::move(grid), std::move(dims), std::move(maps), 2);
}

struct WhiteheadReport {
    int n = 0;
    bool pass = false;
    std::vector<Interval> top_bars;  // decomposition in degree 2^n
    double top_distance = 0;         // d_I(H_{2^n} Y^n, 0)
    std::vector<std::pair<long long, double>> per_degree;  // (k, d_I(H_k Y^n, 0))
    std::string detail;
};

/// Verifies, in homology, the strict (n+1)-interleaving claims: the degree
/// 2^n barcode is exactly one bar [0, 2n+2), its distance to the zero module
/// is exactly n+1, and no degree k <= 2^n exceeds n+1.
inline WhiteheadReport verify_counterexample(int n, int n_max = 6) {
    if (n < 1 || n > n_max)
        throw error("verify_counterexample: n must lie in [1, " + std::to_string(n_max) + "]");
    WhiteheadReport rep;
    rep.n = n;
    const long long top_degree = 1LL << n;
    const double expected_death = 2.0 * n + 2.0;

    GridModule top = build_Yn_module(n, top_degree);
    rep.top_bars = decompose(top);
    if (rep.top_bars.size() != 1 || rep.top_bars[0] != Interval{0.0, expected_death}) {
        rep.detail = "degree " + std::to_string(top_degree) + " barcode is not exactly {[0, " +
                     format_value(expected_death) + ")}";
        return rep;
    }
    rep.top_distance = interleaving_distance_pfd(top, GridModule::zero(2));
    if (rep.top_distance != static_cast<double>(n + 1)) {
        rep.detail = "top-degree distance to the zero module is " + format_value(rep.top_distance) +
                     ", expected " + std::to_string(n + 1);
        return rep;
    }
    for (long long k = 1; k <= top_degree; ++k) {
        GridModule mod = build_Yn_module(n, k);
        double dist = interleaving_distance_pfd(mod, GridModule::zero(2));
        rep.per_degree.emplace_back(k, dist);
        if (dist > static_cast<double>(n + 1)) {
            rep.detail = "degree " + std::to_string(k) + " distance " + format_value(dist) +
                         " exceeds n+1";
            return rep;
        }
    }
    rep.pass = true;
    return rep;
}

}  // namespace hil
