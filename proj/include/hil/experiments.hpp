#pragma once

// Seeded experiment drivers behind the CLI: the Rips stability sweep
// (Thm d_B <= 2 d_GH audited instance by instance) and the correspondence
// filtration verification chain. Instances run concurrently (HI_THREADS caps
// the worker count); per-instance RNG streams and index-ordered assembly keep
// reports byte-identical for a fixed seed.

#include <atomic>
#include <cstdlib>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hil/common.hpp"
#include "hil/filtration.hpp"
#include "hil/matching.hpp"
#include "hil/metric_space.hpp"
#include "hil/persistence.hpp"

namespace hil {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // uniform in [0, 1), identical across platforms (53-bit mantissa path)
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::mt19937_64 gen_;
};

inline int thread_budget(int requested = 0) {
    int budget = requested;
    if (budget <= 0) {
        unsigned hw = std::thread::hardware_concurrency();
        budget = hw == 0 ? 1 : static_cast<int>(hw);
    }
    if (const char* env = std::getenv("HI_THREADS")) {
        int cap = std::atoi(env);
        if (cap > 0) budget = std::min(budget, cap);
    }
    return budget;
}

template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
    threads = std::min(std::max(threads, 1), count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

/// n points uniform in the unit cube of R^dim, as a metric space.
inline FiniteMetricSpace random_point_cloud(Rng& rng, int n, int dim) {
    std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
    for (auto& p : pts)
        for (double& x : p) x = rng.uniform();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double s = 0;
            for (int k = 0; k < dim; ++k) s += (pts[i][k] - pts[j][k]) * (pts[i][k] - pts[j][k]);
            d[i][j] = d[j][i] = std::sqrt(s);
        }
    return validate_metric(d);
}

// --- Rips stability sweep ----------------------------------------------------

struct StabilityConfig {
    int instances = 200;
    int max_points = 8;
    int max_degree = 2;
    std::uint64_t seed = 1;
    double tol = kDefaultTol;
    int gh_size_limit = 64;
    int threads = 0;  // 0 = HI_THREADS or hardware
};

struct StabilityInstance {
    int index = 0;
    int n_p = 0, n_q = 0, dim = 0;
    double d_gh = 0;
    bool exact_gh = true;  // false when only an upper bound was available
    std::vector<double> d_b;  // per degree 0..max_degree
    bool pass = false;
    bool inconclusive = false;
};

struct ExperimentReport {
    StabilityConfig config;
    std::vector<StabilityInstance> instances;
    int passed = 0, failed = 0, inconclusive = 0;

    bool all_pass() const { return failed == 0 && inconclusive == 0; }

    std::string render() const {
        std::ostringstream out;
        out << "# stability sweep: instances=" << config.instances
            << " max_points=" << config.max_points << " max_degree=" << config.max_degree
            << " seed=" << config.seed << " tol=" << format_value(config.tol) << '\n';
        out << "# columns: index n_p n_q dim d_gh 2*d_gh d_b[0..k] verdict\n";
        for (const auto& inst : instances) {
            out << inst.index << ' ' << inst.n_p << ' ' << inst.n_q << ' ' << inst.dim << ' '
                << format_value(inst.d_gh) << ' ' << format_value(2 * inst.d_gh);
            for (double db : inst.d_b) out << ' ' << format_value(db);
            out << ' ' << (inst.inconclusive ? "INCONCLUSIVE" : inst.pass ? "PASS" : "FAIL") << '\n';
        }
        out << "# summary: pass=" << passed << " fail=" << failed
            << " inconclusive=" << inconclusive << '\n';
        return out.str();
    }
};

/// One audited instance of d_B(H_k Rips(P), H_k Rips(Q)) <= 2 d_GH(P, Q).
/// With only an upper GH bound the verdict can be PASS or INCONCLUSIVE,
/// never FAIL.
inline StabilityInstance stability_check(const FiniteMetricSpace& p, const FiniteMetricSpace& q,
                                         int max_degree, double d_gh, bool exact_gh, double tol) {
    StabilityInstance inst;
    inst.n_p = p.size();
    inst.n_q = q.size();
    inst.d_gh = d_gh;
    inst.exact_gh = exact_gh;
    Barcode bp = barcodes(rips_filtration(p, max_degree + 1), max_degree);
    Barcode bq = barcodes(rips_filtration(q, max_degree + 1), max_degree);
    bool ok = true;
    for (int k = 0; k <= max_degree; ++k) {
        double db = bottleneck(bp, bq, k).value;
        inst.d_b.push_back(db);
        if (db > 2 * d_gh + tol) ok = false;
    }
    inst.pass = ok;
    inst.inconclusive = !ok && !exact_gh;
    if (inst.inconclusive) inst.pass = false;
    return inst;
}

/// Seeded random sweep over point-cloud pairs in R^2 / R^3.
inline ExperimentReport run_stability_random(const StabilityConfig& config) {
    ExperimentReport report;
    report.config = config;
    report.instances.resize(config.instances);
    parallel_for(config.instances, thread_budget(config.threads), [&](int idx) {
        Rng rng(config.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(idx));
        int dim = 2 + rng.uniform_int(0, 1);
        int n_p = rng.uniform_int(2, config.max_points);
        int n_q = rng.uniform_int(2, config.max_points);
        FiniteMetricSpace p = random_point_cloud(rng, n_p, dim);
        FiniteMetricSpace q = random_point_cloud(rng, n_q, dim);
        GHResult gh = gromov_hausdorff_exact(p, q, config.gh_size_limit);
        StabilityInstance inst =
            stability_check(p, q, config.max_degree, gh.value, /*exact_gh=*/true, config.tol);
        inst.index = idx;
        inst.dim = dim;
        report.instances[idx] = std::move(inst);
    });
    for (const auto& inst : report.instances) {
        if (inst.inconclusive) ++report.inconclusive;
        else if (inst.pass) ++report.passed;
        else ++report.failed;
    }
    return report;
}

// --- correspondence filtration chain ----------------------------------------

struct CorrFiltReport {
    double distortion = 0;
    double sup_gamma_diff = 0;
    QuillenReport quillen_p, quillen_q;
    std::vector<bool> barcode_equal;    // per degree 0..max_degree
    std::vector<double> d_b_fp_fq;      // per degree, must be <= distortion/2
    bool pass = false;
    std::string detail;

    std::string render() const {
        std::ostringstream out;
        out << "distortion " << format_value(distortion) << '\n';
        out << "sup|gamma_P - gamma_Q| " << format_value(sup_gamma_diff) << " (bound "
            << format_value(distortion / 2) << ")\n";
        out << "quillen F^P " << (quillen_p.pass ? "PASS" : "FAIL: " + quillen_p.detail) << " ("
            << quillen_p.fibers_checked << " fibers)\n";
        out << "quillen F^Q " << (quillen_q.pass ? "PASS" : "FAIL: " + quillen_q.detail) << " ("
            << quillen_q.fibers_checked << " fibers)\n";
        for (std::size_t k = 0; k < barcode_equal.size(); ++k)
            out << "H_" << k << " barcode F^P == Rips(P): " << (barcode_equal[k] ? "yes" : "NO")
                << ", d_B(F^P, F^Q) = " << format_value(d_b_fp_fq[k]) << '\n';
        out << (pass ? "PASS" : "FAIL: " + detail) << '\n';
        return out.str();
    }
};

/// Runs the proof chain of the two-axioms proposition on a concrete
/// (P, Q, C): fiber condition on both projections, barcode equality
/// B(F^P) = B(Rips(P)), and the sup-norm bound on gamma functions.
inline CorrFiltReport run_corr_filt(const FiniteMetricSpace& p, const FiniteMetricSpace& q,
                                    const Correspondence& c, int max_degree,
                                    double tol = kDefaultTol) {
    CorrFiltReport rep;
    const int complex_dim = max_degree + 1;  // degree-k deaths need (k+1)-simplices
    rep.distortion = distortion(c, p, q);
    CorrespondenceFiltration cf = correspondence_filtration(c, p, q, complex_dim);
    rep.sup_gamma_diff = sup_norm_distance(cf.gamma_p, cf.gamma_q);
    rep.quillen_p = quillen_fiber_check(cf.f_p, p, c, complex_dim);
    rep.quillen_q = quillen_fiber_check(cf.f_q, q, c.transpose(), complex_dim);

    Barcode b_fp = barcodes(cf.f_p, max_degree);
    Barcode b_fq = barcodes(cf.f_q, max_degree);
    Barcode b_rp = barcodes(rips_filtration(p, complex_dim), max_degree);

    bool ok = rep.quillen_p.pass && rep.quillen_q.pass;
    if (!ok) rep.detail = "fiber condition failed";
    if (rep.sup_gamma_diff > rep.distortion / 2 + tol) {
        ok = false;
        rep.detail = "sup-norm bound violated";
    }
    for (int k = 0; k <= max_degree; ++k) {
        bool eq = b_fp.degree(k) == b_rp.degree(k);
        double db = bottleneck(b_fp, b_fq, k).value;
        rep.barcode_equal.push_back(eq);
        rep.d_b_fp_fq.push_back(db);
        if (!eq) {
            ok = false;
            rep.detail = "barcode mismatch in degree " + std::to_string(k);
        }
        if (db > rep.distortion / 2 + tol) {
            ok = false;
            rep.detail = "d_B(F^P, F^Q) exceeds distortion/2 in degree " + std::to_string(k);
        }
    }
    rep.pass = ok;
    return rep;
}

/// Random (P, Q, C) generator for the chain: point clouds plus a random
/// correspondence patched to keep both projections onto.
inline Correspondence random_correspondence(Rng& rng, int size_p, int size_q) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < size_p; ++i)
        for (int j = 0; j < size_q; ++j)
            if (rng.uniform() < 0.3) pairs.emplace_back(i, j);
    std::vector<bool> hit_p(size_p, false), hit_q(size_q, false);
    for (auto [i, j] : pairs) {
        hit_p[i] = true;
        hit_q[j] = true;
    }
    for (int i = 0; i < size_p; ++i)
        if (!hit_p[i]) pairs.emplace_back(i, rng.uniform_int(0, size_q - 1));
    for (int j = 0; j < size_q; ++j)
        if (!hit_q[j]) pairs.emplace_back(rng.uniform_int(0, size_p - 1), j);
    return Correspondence::create(std::move(pairs), size_p, size_q);
}

}  // namespace hil
