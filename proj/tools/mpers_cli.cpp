// Command line front end: sampling, persistence, the lower-bound
// configuration and the trial-grid experiments.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "mpers/errors.hpp"
#include "mpers/experiment.hpp"
#include "mpers/filtration.hpp"
#include "mpers/persistence.hpp"
#include "mpers/point_cloud.hpp"
#include "mpers/sampling.hpp"
#include "mpers/statistics.hpp"

namespace {

using namespace mpers;

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw IoError(path, "cannot open for writing");
    return out;
}

void print_pair(std::ostream& out, const char* label, const PersistencePair& p)
{
    out << label << ' ' << p.birth << ' ' << p.death << '\n';
}

void print_report(std::ostream& out, const MaxPersistenceReport& r)
{
    out.precision(17);
    out << "k " << r.k << '\n';
    if (r.pi_max) {
        out << "pi_max " << *r.pi_max << '\n';
        print_pair(out, "argmax_pair", *r.argmax_pair);
    } else {
        out << "pi_max missing\n";
    }
    out << "essential " << r.essential_count << '\n';
    out << "n " << r.n_intensity << '\n';
    out << "delta_k " << r.delta_k << '\n';
    if (r.ratio)
        out << "ratio " << *r.ratio << '\n';
    out << "truncated " << (r.truncated ? 1 : 0) << '\n';
}

struct Args {
    // sample
    double n = 1000;
    int d = 2;
    std::uint64_t seed = 1;
    std::uint64_t stream = 0;
    bool fixed = false;
    std::string metric = "cube";
    std::string out;
    // persist
    std::string in;
    std::string flavor = "cech";
    std::optional<double> rmax;
    int maxdim = 2;
    // maxpers
    int k = 1;
    bool include_essential = false;
    // lowerbound
    double ell = 0.01;
    double L = 0.08;
    // experiment
    std::string config;
    std::string summary;
    std::string fit;
    std::string svg;
    std::optional<int> workers;
};

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Maximal multiplicative persistence of random point clouds"};
    app.require_subcommand(1);
    Args a;

    auto* sample = app.add_subcommand("sample", "Draw a point cloud and write it as CSV");
    sample->add_option("-n,--intensity", a.n, "Poisson intensity, or exact count with --fixed");
    sample->add_option("-d,--dim", a.d, "Ambient dimension");
    sample->add_option("--seed", a.seed, "Root seed");
    sample->add_option("--stream", a.stream, "Substream index");
    sample->add_flag("--fixed", a.fixed, "Draw exactly n points instead of a Poisson count");
    sample->add_option("--metric", a.metric, "cube or torus");
    sample->add_option("-o,--out", a.out, "Output CSV (stdout when omitted)");

    auto* persist = app.add_subcommand("persist", "Cloud CSV to persistence diagram CSV");
    persist->add_option("input", a.in, "Cloud CSV")->required();
    persist->add_option("--flavor", a.flavor, "cech or rips");
    persist->add_option("--metric", a.metric, "cube or torus");
    persist->add_option("--rmax", a.rmax, "Radius cap (default: 0.75 (log N / N)^(1/d))");
    persist->add_option("--maxdim", a.maxdim, "Largest simplex dimension");
    persist->add_option("-o,--out", a.out, "Output CSV (stdout when omitted)");

    auto* maxpers = app.add_subcommand("maxpers", "Maximal persistence of a diagram CSV");
    maxpers->add_option("input", a.in, "Diagram CSV")->required();
    maxpers->add_option("-n,--intensity", a.n, "Intensity used for the scaling term")->required();
    maxpers->add_option("-k,--degree", a.k, "Homological degree");
    maxpers->add_option("--metric", a.metric, "Metric the diagram came from, for the truncation check");
    maxpers->add_flag("--include-essential", a.include_essential, "Count essential classes as infinite");

    auto* lower = app.add_subcommand("lowerbound", "Deterministic tile configuration and its persistence");
    lower->add_option("-d,--dim", a.d, "Ambient dimension");
    lower->add_option("-k,--degree", a.k, "Homological degree");
    lower->add_option("--ell", a.ell, "Tile side");
    lower->add_option("--L", a.L, "Box side");
    lower->add_option("--flavor", a.flavor, "cech or rips");
    lower->add_option("-o,--out", a.out, "Write the configuration as cloud CSV");

    auto* experiment = app.add_subcommand("experiment", "Run a trial grid from a config file");
    experiment->add_option("config", a.config, "Config file")->required();
    experiment->add_option("-o,--out", a.out, "Records CSV (overrides output_path)");
    experiment->add_option("--summary", a.summary, "Per-n summary CSV");
    experiment->add_option("--fit", a.fit, "Fit CSV");
    experiment->add_option("--svg", a.svg, "Scatter plot with fit line");
    experiment->add_option("--workers", a.workers, "Concurrent trials");

    auto* fit = app.add_subcommand("fit", "Least-squares fit of pi_max against delta_k");
    fit->add_option("input", a.in, "Records CSV")->required();

    auto* torus = app.add_subcommand("torus-compare", "Same clouds under cube and torus metrics");
    torus->add_option("config", a.config, "Config file")->required();
    torus->add_option("-o,--out", a.out, "Summary CSV (stdout when omitted)");
    torus->add_option("--workers", a.workers, "Concurrent trials");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sample) {
            RngStream rng{a.seed, a.stream};
            Metric m = parse_metric(a.metric);
            if (a.fixed && (a.n < 0 || a.n != std::floor(a.n)))
                throw InvalidInput("--fixed needs a non-negative integer count");
            auto cloud = a.fixed ? sample_fixed(static_cast<std::size_t>(a.n), a.d, m, rng)
                                 : sample_poisson(a.n, a.d, m, rng);
            if (a.out.empty())
                write_cloud_csv(std::cout, cloud);
            else
                write_cloud_csv(a.out, cloud);
        } else if (*persist) {
            auto cloud = read_cloud_csv(a.in, parse_metric(a.metric));
            double r = a.rmax ? *a.rmax
                              : default_rmax(std::max<double>(static_cast<double>(cloud.size()), 3.0), cloud.dim(),
                                             0.75, cloud.metric());
            auto fc = build_filtration(cloud, parse_flavor(a.flavor), r, a.maxdim);
            auto diag = compute_persistence(fc);
            if (a.out.empty())
                write_diagram_csv(std::cout, diag);
            else
                write_diagram_csv(a.out, diag);
        } else if (*maxpers) {
            auto diag = read_diagram_csv(a.in);
            diag.info.metric = parse_metric(a.metric);
            auto report = max_persistence(diag, a.k, a.n, !a.include_essential);
            print_report(std::cout, report);
        } else if (*lower) {
            LowerBoundSpec spec;
            spec.d = a.d;
            spec.k = a.k;
            spec.ell = a.ell;
            spec.L = a.L;
            auto conf = lower_bound_configuration(spec);
            if (!a.out.empty())
                write_cloud_csv(a.out, conf.cloud);
            // Radius large enough that the whole configuration is one simplex.
            double r = 0.5 * a.L * std::sqrt(static_cast<double>(a.d)) * 1.01;
            auto fc = build_filtration(conf.cloud, parse_flavor(a.flavor), r, a.k + 1);
            auto diag = compute_persistence(fc);
            auto report = max_persistence(diag, a.k, static_cast<double>(std::max<std::size_t>(conf.m, 3)));
            std::cout.precision(17);
            std::cout << "points " << conf.m << '\n';
            std::cout << "tiles_per_side " << conf.tiles_per_side << '\n';
            std::cout << "guaranteed " << conf.guaranteed_persistence << '\n';
            if (report.pi_max) {
                std::cout << "pi_max " << *report.pi_max << '\n';
                print_pair(std::cout, "argmax_pair", *report.argmax_pair);
            } else {
                std::cout << "pi_max missing\n";
            }
            if (!report.pi_max || *report.pi_max < conf.guaranteed_persistence)
                std::cerr << "warning: persistence below the guaranteed bound\n";
        } else if (*experiment) {
            auto cfg = load_config(a.config);
            if (!a.out.empty())
                cfg.output_path = a.out;
            if (a.workers)
                cfg.workers = *a.workers;
            cfg.validate();
            auto records = run_experiment(cfg);
            if (cfg.output_path.empty())
                write_records_csv(std::cout, records);
            auto s = summarize(records);
            if (!a.summary.empty()) {
                auto out = open_out(a.summary);
                write_summary_csv(out, s);
            } else {
                write_summary_csv(std::cerr, s);
            }
            if (!a.fit.empty()) {
                auto out = open_out(a.fit);
                write_fit_csv(out, s);
            }
            if (!a.svg.empty()) {
                auto out = open_out(a.svg);
                write_svg_plot(out, records, s);
            }
            // Outputs are complete either way; the exit code flags exhausted retries.
            std::size_t exhausted = 0;
            for (const auto& r : records)
                exhausted += r.truncated && !r.error.empty();
            if (exhausted > 0)
                throw TruncationExhausted(std::to_string(exhausted) + " record(s) exhausted their truncation retries");
        } else if (*fit) {
            auto s = summarize(read_records_csv(a.in));
            write_fit_csv(std::cout, s);
        } else if (*torus) {
            auto cfg = load_config(a.config);
            if (a.workers)
                cfg.workers = *a.workers;
            auto cmp = run_torus_comparison(cfg);
            if (a.out.empty()) {
                write_torus_summary_csv(std::cout, cmp);
            } else {
                auto out = open_out(a.out);
                write_torus_summary_csv(out, cmp);
            }
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.path() << ": " << e.what() << '\n';
        return e.exit_code();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
