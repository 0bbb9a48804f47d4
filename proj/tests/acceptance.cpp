// End-to-end acceptance runner. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.
//
//   acceptance [--only N]... [--artifacts DIR]

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "fixtures.hpp"
#include "mpers/experiment.hpp"
#include "mpers/filtration.hpp"
#include "mpers/persistence.hpp"
#include "mpers/sampling.hpp"
#include "mpers/statistics.hpp"
#include "property_checks.hpp"

using namespace mpers;
namespace fs = std::filesystem;

namespace {

struct Result {
    bool ok = true;
    std::ostringstream note;
};

std::string g_artifacts;
int g_workers = 1;

std::vector<PersistencePair> nonzero(const std::vector<PersistencePair>& v)
{
    std::vector<PersistencePair> out;
    for (const auto& p : v)
        if (!p.zero_length())
            out.push_back(p);
    return out;
}

ExperimentConfig with_artifact(ExperimentConfig cfg, const std::string& name)
{
    cfg.workers = g_workers;
    if (!g_artifacts.empty()) {
        cfg.output_path = (fs::path(g_artifacts) / (name + "_records.csv")).string();
        fs::remove(cfg.output_path);  // never resume from an older build's rows
    }
    return cfg;
}

void write_artifacts(const std::string& name, const std::vector<TrialRecord>& recs, const ExperimentSummary& s)
{
    if (g_artifacts.empty())
        return;
    std::ofstream summary(fs::path(g_artifacts) / (name + "_summary.csv"));
    write_summary_csv(summary, s);
    std::ofstream fit(fs::path(g_artifacts) / (name + "_fit.csv"));
    write_fit_csv(fit, s);
    std::ofstream svg(fs::path(g_artifacts) / (name + ".svg"));
    write_svg_plot(svg, recs, s);
}

std::size_t error_rows(const std::vector<TrialRecord>& recs)
{
    std::size_t e = 0;
    for (const auto& r : recs)
        e += !r.error.empty();
    return e;
}

void square(Result& r)
{
    auto diag = compute_persistence(build_cech(fixtures::unit_square(), 1.0, 2));
    auto h1 = nonzero(diag.degree(1));
    r.ok = h1.size() == 1;
    if (!r.ok) {
        r.note << h1.size() << " nonzero H1 pairs";
        return;
    }
    auto rep = max_persistence(diag, 1, 100);
    r.ok = std::abs(h1[0].birth - 0.5) <= 1e-9 && std::abs(h1[0].death - std::sqrt(2.0) / 2) <= 1e-9 &&
           std::abs(*rep.pi_max - std::sqrt(2.0)) <= 1e-9;
    r.note << std::setprecision(12) << "pair (" << h1[0].birth << ", " << h1[0].death << "), Pi_1 " << *rep.pi_max;
}

void circle(Result& r)
{
    auto fc = build_cech(fixtures::circle(12, 0.4), 0.5, 2);
    auto diag = compute_persistence(fc);
    auto naive = compute_persistence_naive(fc);
    auto h1 = nonzero(diag.degree(1));
    r.ok = h1.size() == 1 && same_barcode(diag, naive);
    if (h1.size() != 1) {
        r.note << h1.size() << " nonzero H1 pairs";
        return;
    }
    const double b = 0.4 * std::sin(std::numbers::pi / 12);
    r.ok = r.ok && std::abs(h1[0].birth - b) <= 1e-6 && std::abs(h1[0].death - 0.4) <= 1e-6;
    r.note << std::setprecision(10) << "pair (" << h1[0].birth << ", " << h1[0].death << "), expected (" << b
           << ", 0.4), Pi_1 " << h1[0].death / h1[0].birth << ", naive oracle "
           << (same_barcode(diag, naive) ? "agrees" : "DISAGREES");
}

void oracle_equivalence(Result& r)
{
    std::size_t mismatches = 0, pairs = 0;
    for (std::uint64_t s = 0; s < 200; ++s) {
        auto eng = RngStream{1001, s}.engine();
        const int d = 2 + static_cast<int>(s % 2);
        const Flavor f = (s / 2) % 2 ? Flavor::Rips : Flavor::Cech;
        const Metric m = (s / 4) % 2 ? Metric::FlatTorus : Metric::CubeEuclidean;
        auto cloud = sample_fixed(1 + eng() % 15, d, m, {1002, s});
        const double rmax = m == Metric::FlatTorus ? 0.125 : 0.15 + 0.6 * uniform01(eng);
        auto fc = build_filtration(cloud, f, rmax, d);
        auto a = compute_persistence(fc);
        auto b = compute_persistence_naive(fc);
        mismatches += !same_barcode(a, b);
        pairs += a.finite_count() + a.essential_count();
    }
    r.ok = mismatches == 0;
    r.note << "200 clouds, " << pairs << " pairs compared, " << mismatches << " mismatching diagrams";
}

void lower_bound(Result& r)
{
    for (int d : {2, 3}) {
        LowerBoundSpec spec;
        spec.d = d;
        spec.k = 1;
        spec.ell = 0.01;
        spec.L = 0.08;
        auto conf = lower_bound_configuration(spec);
        // Large enough that the configuration's full 2-skeleton is present.
        auto diag = compute_persistence(build_cech(conf.cloud, 0.1, 2));
        auto rep = max_persistence(diag, 1, static_cast<double>(conf.m));
        const double bound = 8.0 / (4.0 * std::sqrt(static_cast<double>(d)));
        bool ok = rep.pi_max && *rep.pi_max >= bound;
        r.ok = r.ok && ok;
        r.note << "d=" << d << ": Pi_1 " << std::setprecision(6) << rep.pi_max.value_or(0.0) << " >= " << bound
               << (ok ? "" : " (violated)") << "; ";
    }
}

void interleaving(Result& r)
{
    std::size_t sandwich_bad = 0, pair_bad = 0, checked = 0, substantive = 0;
    for (std::uint64_t s = 0; s < 50; ++s) {
        auto eng = RngStream{1003, s}.engine();
        auto cloud = sample_fixed(5 + eng() % 36, 2, Metric::CubeEuclidean, {1004, s});
        if (s % 2) {
            // Random points on a thin annulus, so that long-lived cycles occur.
            PointCloud ring(2, Metric::CubeEuclidean, {s, "annulus"});
            const std::size_t n = 8 + eng() % 33;
            for (std::size_t i = 0; i < n; ++i) {
                double t = 2 * std::numbers::pi * uniform01(eng);
                double rad = 0.3 + 0.04 * (uniform01(eng) - 0.5);
                ring.push_back(std::vector<double>{0.5 + rad * std::cos(t), 0.5 + rad * std::sin(t)});
            }
            cloud = ring;
        }
        // 0.75 exceeds half the cube diagonal, so both complexes are full.
        auto cech = build_cech(cloud, 0.75, 2);
        auto rips = build_rips(cloud, 0.75, 2);
        for (std::size_t p = 0; p < cech.size(); ++p) {
            auto q = rips.find(cech.vertices(p));
            double rv = q ? rips.value(*q) : -1;
            if (!q || cech.value(p) < rv * (1 - 1e-12) || cech.value(p) > 2 * rv * (1 + 1e-12))
                ++sandwich_bad;
        }
        auto dc = compute_persistence(cech);
        auto dr = compute_persistence(rips);
        // Matches are sought in the raw Rips diagram. For p <= 2 the target
        // p/2 <= 1 is met by any bar, zero-length ones included; the
        // interleaving argument only has content when p > 2.
        for (const auto& p : nonzero(dc.degree(1))) {
            if (p.essential())
                continue;
            ++checked;
            const double target = p.death / p.birth / 2;
            substantive += target > 1;
            bool found = false;
            for (const auto& q : dr.degree(1))
                found = found || q.essential() || q.death / q.birth >= target * (1 - 1e-12);
            pair_bad += !found;
        }
    }
    r.ok = sandwich_bad == 0 && pair_bad == 0;
    r.note << sandwich_bad << " sandwich violations, " << checked << " Cech H1 pairs (" << substantive
           << " with p > 2), " << pair_bad << " without a Rips pair of ratio >= p/2";
}

void scaling(Result& r)
{
    ExperimentConfig cfg;  // d=2, k=1, Cech, n = 100..12800, 20 trials
    cfg = with_artifact(cfg, "scaling");
    auto recs = run_experiment(cfg);
    auto s = summarize(recs);
    write_artifacts("scaling", recs, s);
    r.note << std::setprecision(3);
    for (const auto& ns : s.per_n) {
        bool in = ns.ratio.count > 0 && ns.ratio.mean >= 0.5 && ns.ratio.mean <= 1.3;
        r.ok = r.ok && in;
        r.note << "n=" << ns.n << ":" << ns.ratio.mean << (in ? "" : "(out)") << " ";
    }
    const auto& fit = s.fits.at(0).second;
    bool slope_ok = fit && fit->slope >= 0.6 && fit->slope <= 1.15;
    r.ok = r.ok && slope_ok;
    r.note << "| slope " << (fit ? fit->slope : std::nan("")) << " intercept " << (fit ? fit->intercept : std::nan(""))
           << " | error rows " << error_rows(recs);
}

void concentration(Result& r)
{
    ExperimentConfig cfg;
    cfg.n_grid = {400, 6400};
    cfg.trials_per_n = 100;
    cfg.root_seed = 7;
    cfg = with_artifact(cfg, "concentration");
    auto recs = run_experiment(cfg);
    auto s = summarize(recs);
    write_artifacts("concentration", recs, s);
    const auto& lo = s.per_n.at(0);
    const auto& hi = s.per_n.at(1);
    r.ok = lo.ratio.count >= 100 && hi.ratio.count >= 100 && hi.ratio.stddev < lo.ratio.stddev;
    r.note << std::setprecision(4) << "std(ratio) n=400: " << lo.ratio.stddev << " (" << lo.ratio.count
           << " trials), n=6400: " << hi.ratio.stddev << " (" << hi.ratio.count << " trials)";
}

void torus(Result& r)
{
    ExperimentConfig cfg;
    cfg.n_grid = {1000, 4000};
    cfg.trials_per_n = 50;
    cfg.flavor = Flavor::Rips;
    cfg.root_seed = 11;
    cfg.workers = g_workers;
    auto cmp = run_torus_comparison(cfg);
    if (!g_artifacts.empty()) {
        std::ofstream out(fs::path(g_artifacts) / "torus_summary.csv");
        write_torus_summary_csv(out, cmp);
    }
    std::size_t bad_ess = 0;
    for (const auto& p : cmp.pairs)
        bad_ess += p.torus.essential_count != 2 || !p.torus.error.empty();
    r.note << std::setprecision(4);
    for (const auto& s : cmp.per_n) {
        r.ok = r.ok && s.overlap && s.count == 50;
        r.note << "n=" << s.n << ": cube " << s.mean_cube << " torus " << s.mean_torus << " pooled std "
               << s.pooled_std << " (" << s.count << " pairs" << (s.overlap ? "" : ", NO overlap") << "); ";
    }
    r.ok = r.ok && bad_ess == 0;
    r.note << bad_ess << " torus trials without exactly 2 essential H1 classes";
}

void properties(Result& r)
{
    struct Item {
        const char* name;
        props::Outcome out;
    };
    std::vector<Item> items{{"monotone", props::monotone_complexes(40)},
                            {"euler", props::euler_identity(60)},
                            {"scale", props::scale_invariance(30)},
                            {"eps-net", props::epsilon_net_cover_packing(100)},
                            {"determinism", props::determinism()}};
    for (const auto& it : items) {
        r.ok = r.ok && it.out.ok;
        r.note << it.name << (it.out.ok ? " ok" : " FAILED: " + it.out.what) << "; ";
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Acceptance criteria"};
    std::vector<int> only;
    app.add_option("--only", only, "Run only these criteria");
    app.add_option("--artifacts", g_artifacts, "Directory for records, summaries and plots");
    g_workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    app.add_option("--workers", g_workers, "Concurrent trials");
    CLI11_PARSE(app, argc, argv);
    if (!g_artifacts.empty())
        fs::create_directories(g_artifacts);

    struct Criterion {
        int id;
        const char* name;
        double budget_s;  // wall-clock limit; part of the pass condition
        std::function<void(Result&)> run;
    };
    const std::vector<Criterion> criteria{
        {1, "analytic Cech diagram, square", 1, square},
        {2, "analytic Cech diagram, circle", 1, circle},
        {3, "oracle equivalence", 120, oracle_equivalence},
        {4, "lower-bound configuration", 60, lower_bound},
        {5, "interleaving", 60, interleaving},
        {6, "scaling-law band", 1800, scaling},
        {7, "concentration", 1800, concentration},
        {8, "torus comparison", 1200, torus},
        {9, "property suites", 300, properties},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end())
            continue;
        Result r;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(r);
        } catch (const std::exception& e) {
            r.ok = false;
            r.note << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.budget_s) {
            r.ok = false;
            r.note << " [over the " << c.budget_s << " s budget]";
        }
        failed += !r.ok;
        std::cout << (r.ok ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << " (" << std::fixed
                  << std::setprecision(2) << secs << " s): " << std::defaultfloat << r.note.str() << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
