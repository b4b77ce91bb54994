// hil: persistent homology, bottleneck/interleaving distances, and stability
// verification experiments on filtered complexes built from finite metric
// spaces.
//
// Exit codes: 0 success, 1 domain error (bad input data), 2 usage error.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hil/hil.hpp"

namespace {

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw hil::parse_error("cannot open " + path);
    return in;
}

std::ostream& output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw hil::parse_error("cannot open " + path + " for writing");
    return file;
}

double scale_factor(const std::string& convention) {
    // internal values are half-diameters (a simplex enters at r once all its
    // pairwise distances are <= 2r); "diameter" doubles values on output only
    return convention == "diameter" ? 2.0 : 1.0;
}

int cmd_rips(const std::string& dist_path, int max_dim, double max_scale,
             const std::string& convention, const std::string& out_path) {
    auto p = hil::read_file<hil::FiniteMetricSpace>(
        dist_path, [](std::istream& in) { return hil::read_distance_matrix(in); });
    hil::FilteredComplex x = hil::rips_filtration(p, max_dim, max_scale);
    std::ofstream file;
    hil::write_filtered_complex(output(file, out_path), x, scale_factor(convention));
    return 0;
}

int cmd_persist(const std::string& complex_path, int max_degree, std::uint32_t prime,
                const std::string& convention, const std::string& out_path) {
    auto x = hil::read_file<hil::FilteredComplex>(
        complex_path, [](std::istream& in) { return hil::read_filtered_complex(in); });
    hil::Barcode bc = hil::barcodes(x, max_degree, prime);
    std::ofstream file;
    hil::write_barcode(output(file, out_path), bc, scale_factor(convention));
    return 0;
}

int cmd_bottleneck(const std::string& a_path, const std::string& b_path, int degree,
                   bool certificate) {
    auto a = hil::read_file<hil::Barcode>(a_path,
                                          [](std::istream& in) { return hil::read_barcode(in); });
    auto b = hil::read_file<hil::Barcode>(b_path,
                                          [](std::istream& in) { return hil::read_barcode(in); });
    hil::BottleneckResult res = hil::bottleneck(a, b, degree);
    std::cout << hil::format_value(res.value) << '\n';
    if (certificate)
        for (auto [i, j] : res.matching.matched) std::cout << i << ' ' << j << '\n';
    return 0;
}

int cmd_gh(const std::string& p_path, const std::string& q_path, int size_limit,
           const std::string& corr_path, bool witness) {
    auto reader = [](std::istream& in) { return hil::read_distance_matrix(in); };
    auto p = hil::read_file<hil::FiniteMetricSpace>(p_path, reader);
    auto q = hil::read_file<hil::FiniteMetricSpace>(q_path, reader);
    if (!corr_path.empty()) {
        auto in = open_or_throw(corr_path);
        hil::Correspondence c = hil::read_correspondence(in, p.size(), q.size());
        std::cout << hil::format_value(hil::gh_upper_bound(p, q, c)) << '\n';
        return 0;
    }
    hil::GHResult res = hil::gromov_hausdorff_exact(p, q, size_limit);
    std::cout << hil::format_value(res.value) << '\n';
    if (witness) hil::write_correspondence(std::cout, res.witness);
    return 0;
}

int cmd_stability_random(int instances, int max_points, int max_degree, std::uint64_t seed,
                         double tol, int threads) {
    hil::StabilityConfig config;
    config.instances = instances;
    config.max_points = std::min(max_points, 8);
    config.max_degree = max_degree;
    config.seed = seed;
    config.tol = tol;
    config.threads = threads;
    hil::ExperimentReport report = hil::run_stability_random(config);
    std::cout << report.render();
    return 0;
}

int cmd_stability_files(const std::string& p_path, const std::string& q_path,
                        const std::string& corr_path, int max_degree, int size_limit, double tol) {
    auto reader = [](std::istream& in) { return hil::read_distance_matrix(in); };
    auto p = hil::read_file<hil::FiniteMetricSpace>(p_path, reader);
    auto q = hil::read_file<hil::FiniteMetricSpace>(q_path, reader);
    double d_gh = 0;
    bool exact = true;
    if (static_cast<long long>(p.size()) * q.size() <= size_limit) {
        d_gh = hil::gromov_hausdorff_exact(p, q, size_limit).value;
    } else {
        if (corr_path.empty())
            throw hil::too_large("spaces too large for exact GH; supply --correspondence");
        auto in = open_or_throw(corr_path);
        d_gh = hil::gh_upper_bound(p, q, hil::read_correspondence(in, p.size(), q.size()));
        exact = false;
    }
    hil::StabilityInstance inst = hil::stability_check(p, q, max_degree, d_gh, exact, tol);
    std::cout << (exact ? "d_gh " : "d_gh_upper_bound ") << hil::format_value(d_gh) << '\n';
    for (int k = 0; k <= max_degree; ++k)
        std::cout << "d_b[" << k << "] " << hil::format_value(inst.d_b[k]) << " bound "
                  << hil::format_value(2 * d_gh) << '\n';
    std::cout << (inst.inconclusive ? "INCONCLUSIVE" : inst.pass ? "PASS" : "FAIL") << '\n';
    return 0;
}

int cmd_corr_filt(const std::string& p_path, const std::string& q_path,
                  const std::string& corr_path, int max_degree, double tol) {
    auto reader = [](std::istream& in) { return hil::read_distance_matrix(in); };
    auto p = hil::read_file<hil::FiniteMetricSpace>(p_path, reader);
    auto q = hil::read_file<hil::FiniteMetricSpace>(q_path, reader);
    auto in = open_or_throw(corr_path);
    hil::Correspondence c = hil::read_correspondence(in, p.size(), q.size());
    hil::CorrFiltReport report = hil::run_corr_filt(p, q, c, max_degree, tol);
    std::cout << report.render();
    return 0;
}

int cmd_decompose(const std::string& module_path) {
    auto m = hil::read_file<hil::GridModule>(
        module_path, [](std::istream& in) { return hil::read_grid_module(in); });
    for (const auto& bar : hil::decompose(m))
        std::cout << hil::format_value(bar.birth) << ' ' << hil::format_value(bar.death) << '\n';
    return 0;
}

int cmd_whitehead(int n, long long degree, int yprime, const std::string& modules_dir) {
    auto emit_module = [&](const hil::GridModule& m, const std::string& name) {
        if (modules_dir.empty()) return;
        std::ofstream out(modules_dir + "/" + name);
        if (!out) throw hil::parse_error("cannot write into " + modules_dir);
        hil::write_grid_module(out, m);
    };
    if (yprime > 0) {
        long long k = degree > 0 ? degree : (1LL << yprime);
        hil::GridModule m = hil::build_Yprime_module(yprime, k);
        emit_module(m, "yprime" + std::to_string(yprime) + "_k" + std::to_string(k) + ".mod");
        for (const auto& bar : hil::decompose(m))
            std::cout << k << ' ' << hil::format_value(bar.birth) << ' '
                      << hil::format_value(bar.death) << '\n';
        return 0;
    }
    long long lo = degree > 0 ? degree : 1;
    long long hi = degree > 0 ? degree : (1LL << n);
    for (long long k = lo; k <= hi; ++k) {
        hil::GridModule m = hil::build_Yn_module(n, k);
        emit_module(m, "y" + std::to_string(n) + "_k" + std::to_string(k) + ".mod");
        for (const auto& bar : hil::decompose(m))
            std::cout << k << ' ' << hil::format_value(bar.birth) << ' '
                      << hil::format_value(bar.death) << '\n';
    }
    if (degree <= 0) {
        hil::WhiteheadReport rep = hil::verify_counterexample(n);
        std::cout << "top bar distance " << hil::format_value(rep.top_distance) << " expected "
                  << (n + 1) << '\n';
        std::cout << (rep.pass ? "PASS" : "FAIL: " + rep.detail) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"persistent homology, bottleneck distance, and stability checks"};
    app.require_subcommand(1);

    std::string p_path, q_path, corr_path, a_path, b_path, complex_path, module_path;
    std::string out_path, modules_dir;
    std::string convention = "paper";
    int max_dim = 1, max_degree = 1, degree = 0, size_limit = 36, threads = 0;
    int instances = 0, max_points = 8, wh_n = 1, yprime = 0;
    long long wh_degree = 0;
    std::uint32_t prime = 2;
    std::uint64_t seed = 1;
    double max_scale = hil::kInf, tol = hil::kDefaultTol;
    bool certificate = false, exact = false, witness = false;

    auto* rips = app.add_subcommand("rips", "Vietoris-Rips filtration of a distance matrix");
    rips->add_option("dist", p_path, "distance matrix CSV")->required();
    rips->add_option("--max-dim", max_dim, "top simplex dimension");
    rips->add_option("--max-scale", max_scale, "omit simplices above this value");
    rips->add_option("--scale-convention", convention, "paper (d<=2r) or diameter")
        ->check(CLI::IsMember({"paper", "diameter"}));
    rips->add_option("-o,--output", out_path, "output file (default stdout)");

    auto* persist = app.add_subcommand("persist", "barcodes of a filtered complex");
    persist->add_option("complex", complex_path, "filtered complex file")->required();
    persist->add_option("--max-degree", max_degree, "top homology degree");
    persist->add_option("--prime", prime, "field characteristic");
    persist->add_option("--scale-convention", convention, "paper (d<=2r) or diameter")
        ->check(CLI::IsMember({"paper", "diameter"}));
    persist->add_option("-o,--output", out_path, "output file (default stdout)");

    auto* bott = app.add_subcommand("bottleneck", "bottleneck distance between barcodes");
    bott->add_option("a", a_path, "first barcode file")->required();
    bott->add_option("b", b_path, "second barcode file")->required();
    bott->add_option("--degree", degree, "homology degree to compare");
    bott->add_flag("--certificate", certificate, "print the matching as \"I_index J_index\" lines");

    auto* gh = app.add_subcommand("gh", "Gromov-Hausdorff distance between metric spaces");
    gh->add_option("p", p_path, "first distance matrix")->required();
    gh->add_option("q", q_path, "second distance matrix")->required();
    gh->add_flag("--exact", exact, "exact search (the default without --correspondence)");
    gh->add_option("--size-limit", size_limit, "max |P|*|Q| for the exact search");
    gh->add_option("--correspondence", corr_path, "report distortion/2 of this correspondence");
    gh->add_flag("--witness", witness, "print the optimal correspondence");

    auto* stab = app.add_subcommand("stability", "audit d_B <= 2 d_GH on instances");
    stab->add_option("p", p_path, "first distance matrix");
    stab->add_option("q", q_path, "second distance matrix");
    stab->add_option("--correspondence", corr_path, "GH upper-bound mode for large spaces");
    stab->add_option("--random", instances, "number of random point-cloud pairs");
    stab->add_option("--seed", seed, "random seed");
    stab->add_option("--max-points", max_points, "points per cloud (capped at 8)");
    stab->add_option("--max-degree", max_degree, "top homology degree");
    stab->add_option("--size-limit", size_limit, "max |P|*|Q| for exact GH in file mode");
    stab->add_option("--tol", tol, "inequality tolerance");
    stab->add_option("--threads", threads, "worker cap (HI_THREADS overrides)");

    auto* corr = app.add_subcommand("corr-filt", "correspondence-filtration verification chain");
    corr->add_option("p", p_path, "first distance matrix")->required();
    corr->add_option("q", q_path, "second distance matrix")->required();
    corr->add_option("corr", corr_path, "correspondence file")->required();
    corr->add_option("--max-degree", max_degree, "top homology degree");
    corr->add_option("--tol", tol, "inequality tolerance");

    auto* dec = app.add_subcommand("decompose", "interval decomposition of a grid module");
    dec->add_option("module", module_path, "grid module file")->required();

    auto* wh = app.add_subcommand("whitehead", "sphere-power tower modules and verification");
    auto* wh_n_opt = wh->add_option("--n", wh_n, "tower index n");
    wh->add_option("--degree", wh_degree, "single homology degree (default: all k <= 2^n)");
    auto* wh_yp_opt =
        wh->add_option("--yprime", yprime, "build the truncated Y' tower with N blocks instead");
    wh->add_option("--modules-dir", modules_dir, "emit GridModule files into this directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (rips->parsed()) return cmd_rips(p_path, max_dim, max_scale, convention, out_path);
        if (persist->parsed())
            return cmd_persist(complex_path, max_degree, prime, convention, out_path);
        if (bott->parsed()) return cmd_bottleneck(a_path, b_path, degree, certificate);
        if (gh->parsed()) return cmd_gh(p_path, q_path, size_limit, corr_path, witness);
        if (stab->parsed()) {
            if (instances > 0)
                return cmd_stability_random(instances, max_points, max_degree, seed, tol, threads);
            if (p_path.empty() || q_path.empty())
                throw hil::error("stability needs either --random N or two distance matrices");
            return cmd_stability_files(p_path, q_path, corr_path, max_degree, size_limit, tol);
        }
        if (corr->parsed()) return cmd_corr_filt(p_path, q_path, corr_path, max_degree, tol);
        if (dec->parsed()) return cmd_decompose(module_path);
        if (wh->parsed()) {
            if (wh_n_opt->count() == 0 && wh_yp_opt->count() == 0) {
                std::cerr << "whitehead needs --n or --yprime\n";
                return 2;
            }
            return cmd_whitehead(wh_n, wh_degree, yprime, modules_dir);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
