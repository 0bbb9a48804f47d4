#include "mpers/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "mpers/errors.hpp"
#include "mpers/persistence.hpp"
#include "mpers/sampling.hpp"
#include "text_util.hpp"

namespace mpers {

// ---------------------------------------------------------------------------
// Configuration

void ExperimentConfig::validate() const
{
    if (n_grid.empty())
        throw InvalidInput("n_grid must not be empty");
    for (double n : n_grid) {
        if (!(n > std::numbers::e) || !std::isfinite(n))
            throw InvalidInput("every n_grid value must exceed e");
    }
    if (d < 2)
        throw InvalidInput("d must be at least 2");
    if (k_list.empty())
        throw InvalidInput("k_list must not be empty");
    for (int k : k_list) {
        if (k < 1 || k > d - 1)
            throw InvalidInput("every k must satisfy 1 <= k <= d-1");
    }
    if (trials_per_n < 1)
        throw InvalidInput("trials_per_n must be at least 1");
    if (!(r_max_multiplier > 0.0))
        throw InvalidInput("r_max_multiplier must be positive");
    if (max_dim && *max_dim <= *std::max_element(k_list.begin(), k_list.end()))
        throw InvalidInput("max_dim must exceed every requested k");
    if (workers < 1)
        throw InvalidInput("workers must be at least 1");
    if (max_retries < 0)
        throw InvalidInput("max_retries must be non-negative");
}

int ExperimentConfig::effective_max_dim() const
{
    return max_dim.value_or(*std::max_element(k_list.begin(), k_list.end()) + 1);
}

namespace {

bool parse_bool(std::string_view v)
{
    if (v == "true" || v == "1" || v == "yes" || v == "on")
        return true;
    if (v == "false" || v == "0" || v == "no" || v == "off")
        return false;
    throw InvalidInput("not a boolean: '" + std::string(v) + "'");
}

template <class T, class F>
std::vector<T> parse_list(std::string_view v, F parse)
{
    std::vector<T> out;
    for (auto item : detail::split(v, ',')) {
        if (!item.empty())
            out.push_back(parse(item));
    }
    return out;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in)
{
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view body = line;
        if (auto hash = body.find('#'); hash != std::string_view::npos)
            body = body.substr(0, hash);
        body = detail::trim(body);
        if (body.empty())
            continue;
        auto eq = body.find('=');
        if (eq == std::string_view::npos)
            throw InvalidInput("config line " + std::to_string(lineno) + ": expected key = value");
        auto key = detail::trim(body.substr(0, eq));
        auto value = detail::trim(body.substr(eq + 1));
        if (key == "n_grid")
            cfg.n_grid = parse_list<double>(value, detail::parse_double);
        else if (key == "d")
            cfg.d = detail::parse_int<int>(value);
        else if (key == "k_list")
            cfg.k_list = parse_list<int>(value, detail::parse_int<int>);
        else if (key == "flavor")
            cfg.flavor = parse_flavor(value);
        else if (key == "metric")
            cfg.metric = parse_metric(value);
        else if (key == "trials_per_n")
            cfg.trials_per_n = detail::parse_int<int>(value);
        else if (key == "root_seed")
            cfg.root_seed = detail::parse_int<std::uint64_t>(value);
        else if (key == "r_max_multiplier")
            cfg.r_max_multiplier = detail::parse_double(value);
        else if (key == "max_dim")
            cfg.max_dim = value.empty() ? std::nullopt : std::optional<int>(detail::parse_int<int>(value));
        else if (key == "output_path")
            cfg.output_path = std::string(value);
        else if (key == "workers")
            cfg.workers = detail::parse_int<int>(value);
        else if (key == "max_retries")
            cfg.max_retries = detail::parse_int<int>(value);
        else if (key == "record_wall_time")
            cfg.record_wall_time = parse_bool(value);
        else
            throw InvalidInput("config line " + std::to_string(lineno) + ": unknown key '" + std::string(key) + "'");
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError(path, "cannot open config");
    return parse_config(in);
}

std::string to_config_text(const ExperimentConfig& cfg)
{
    std::ostringstream out;
    out << "n_grid =";
    for (std::size_t i = 0; i < cfg.n_grid.size(); ++i)
        out << (i ? ", " : " ") << detail::format_double(cfg.n_grid[i]);
    out << "\nd = " << cfg.d << "\nk_list =";
    for (std::size_t i = 0; i < cfg.k_list.size(); ++i)
        out << (i ? ", " : " ") << cfg.k_list[i];
    out << "\nflavor = " << to_string(cfg.flavor) << "\nmetric = " << to_string(cfg.metric)
        << "\ntrials_per_n = " << cfg.trials_per_n << "\nroot_seed = " << cfg.root_seed
        << "\nr_max_multiplier = " << detail::format_double(cfg.r_max_multiplier) << '\n';
    if (cfg.max_dim)
        out << "max_dim = " << *cfg.max_dim << '\n';
    if (!cfg.output_path.empty())
        out << "output_path = " << cfg.output_path << '\n';
    out << "workers = " << cfg.workers << "\nmax_retries = " << cfg.max_retries
        << "\nrecord_wall_time = " << (cfg.record_wall_time ? "true" : "false") << '\n';
    return out.str();
}

std::uint64_t trial_substream(std::size_t n_index, std::size_t trial)
{
    return splitmix64((static_cast<std::uint64_t>(n_index) << 32) ^ static_cast<std::uint64_t>(trial));
}

// ---------------------------------------------------------------------------
// Records CSV

namespace {

std::string opt(const std::optional<double>& v)
{
    return v ? detail::format_double(*v) : std::string();
}

std::optional<double> parse_opt(std::string_view s)
{
    if (s.empty())
        return std::nullopt;
    return detail::parse_double(s);
}

std::string sanitize(std::string s)
{
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

}  // namespace

std::string format_record(const TrialRecord& r)
{
    std::ostringstream out;
    out << detail::format_double(r.n) << ',' << r.d << ',' << r.k << ',' << to_string(r.flavor) << ','
        << to_string(r.metric) << ',' << r.substream << ',' << r.point_count << ',' << opt(r.pi_max) << ','
        << opt(r.birth) << ',' << opt(r.death) << ',' << detail::format_double(r.delta_k) << ','
        << opt(r.ratio) << ',' << (r.truncated ? 1 : 0) << ',' << opt(r.wall_ms) << ',' << sanitize(r.error);
    return out.str();
}

TrialRecord parse_record(const std::string& line)
{
    auto f = detail::split(line, ',');
    if (f.size() != 15)
        throw InvalidInput("record row needs 15 fields: '" + line + "'");
    TrialRecord r;
    r.n = detail::parse_double(f[0]);
    r.d = detail::parse_int<int>(f[1]);
    r.k = detail::parse_int<int>(f[2]);
    r.flavor = parse_flavor(f[3]);
    r.metric = parse_metric(f[4]);
    r.substream = detail::parse_int<std::uint64_t>(f[5]);
    r.point_count = detail::parse_int<std::size_t>(f[6]);
    r.pi_max = parse_opt(f[7]);
    r.birth = parse_opt(f[8]);
    r.death = parse_opt(f[9]);
    r.delta_k = detail::parse_double(f[10]);
    r.ratio = parse_opt(f[11]);
    r.truncated = detail::parse_int<int>(f[12]) != 0;
    r.wall_ms = parse_opt(f[13]);
    r.error = std::string(f[14]);
    return r;
}

void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records)
{
    out << kRecordsHeader << '\n';
    for (const auto& r : records)
        out << format_record(r) << '\n';
}

void write_records_csv(const std::string& path, const std::vector<TrialRecord>& records)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out)
            throw IoError(tmp, "cannot open for writing");
        write_records_csv(out, records);
        out.flush();
        if (!out)
            throw IoError(tmp, "write failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw IoError(path, "cannot replace file: " + ec.message());
}

std::vector<TrialRecord> read_records_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line))
        return {};
    if (detail::trim(line) != kRecordsHeader)
        throw InvalidInput("unexpected records header '" + line + "'");
    std::vector<TrialRecord> out;
    while (std::getline(in, line)) {
        if (!detail::trim(line).empty())
            out.push_back(parse_record(line));
    }
    return out;
}

std::vector<TrialRecord> read_records_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError(path, "cannot open for reading");
    return read_records_csv(in);
}

// ---------------------------------------------------------------------------
// Trials

namespace {

std::vector<TrialRecord> evaluate_cloud(const ExperimentConfig& cfg, const PointCloud& cloud, double n,
                                        std::uint64_t substream)
{
    const auto t0 = std::chrono::steady_clock::now();
    const Metric metric = cloud.metric();
    std::vector<TrialRecord> out;
    auto base = [&](int k) {
        TrialRecord r;
        r.n = n;
        r.d = cfg.d;
        r.k = k;
        r.flavor = cfg.flavor;
        r.metric = metric;
        r.substream = substream;
        r.point_count = cloud.size();
        r.delta_k = delta_k(n, k);
        return r;
    };

    double r_max = default_rmax(n, cfg.d, cfg.r_max_multiplier, metric);
    const int max_dim = cfg.effective_max_dim();
    for (int attempt = 0;; ++attempt) {
        auto fc = build_filtration(cloud, cfg.flavor, r_max, max_dim);
        auto diag = compute_persistence(fc);
        const bool truncated = std::any_of(cfg.k_list.begin(), cfg.k_list.end(),
                                           [&](int k) { return truncation_check(diag, k); });
        double next = r_max * 2.0;
        if (metric == Metric::FlatTorus)
            next = std::min(next, kTorusMaxRadius);
        if (truncated && attempt < cfg.max_retries && next > r_max) {
            r_max = next;
            continue;
        }
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        for (int k : cfg.k_list) {
            auto rec = base(k);
            auto report = max_persistence(diag, k, n);
            rec.truncated = report.truncated;
            rec.essential_count = report.essential_count;
            rec.r_max_used = r_max;
            if (cfg.record_wall_time)
                rec.wall_ms = ms;
            if (truncated) {
                rec.truncated = true;
                rec.error = "truncation exhausted at r_max " + detail::format_double(r_max);
            } else if (report.pi_max) {
                rec.pi_max = report.pi_max;
                rec.birth = report.argmax_pair->birth;
                rec.death = report.argmax_pair->death;
                rec.ratio = report.ratio;
            }
            out.push_back(std::move(rec));
        }
        return out;
    }
}

std::vector<TrialRecord> error_records(const ExperimentConfig& cfg, double n, std::uint64_t substream,
                                       Metric metric, const std::string& what)
{
    std::vector<TrialRecord> out;
    for (int k : cfg.k_list) {
        TrialRecord r;
        r.n = n;
        r.d = cfg.d;
        r.k = k;
        r.flavor = cfg.flavor;
        r.metric = metric;
        r.substream = substream;
        r.delta_k = delta_k(n, k);
        r.error = what;
        out.push_back(std::move(r));
    }
    return out;
}

// Runs fn(i) for i in [0, count) on `workers` threads.
template <class F>
void parallel_for(std::size_t count, int workers, F&& fn)
{
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const auto n_threads = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
    for (std::size_t w = 0; w < n_threads; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++)
                fn(i);
        });
    }
    for (auto& t : pool)
        t.join();
}

using RecordKey = std::tuple<double, std::uint64_t, int>;

RecordKey key_of(const TrialRecord& r)
{
    return {r.n, r.substream, r.k};
}

}  // namespace

std::vector<TrialRecord> run_trial(const ExperimentConfig& cfg, double n, std::uint64_t substream, Metric metric)
{
    auto cloud = sample_poisson(n, cfg.d, metric, {cfg.root_seed, substream});
    try {
        return evaluate_cloud(cfg, cloud, n, substream);
    } catch (const Error& e) {
        auto recs = error_records(cfg, n, substream, metric, e.what());
        for (auto& r : recs)
            r.point_count = cloud.size();
        return recs;
    }
}

std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg)
{
    cfg.validate();
    struct Task {
        std::size_t n_index;
        std::size_t trial;
    };
    std::vector<Task> grid;
    for (std::size_t i = 0; i < cfg.n_grid.size(); ++i) {
        for (std::size_t t = 0; t < static_cast<std::size_t>(cfg.trials_per_n); ++t)
            grid.push_back({i, t});
    }

    std::map<RecordKey, TrialRecord> done;
    const bool persist = !cfg.output_path.empty();
    auto ordered = [&] {
        std::vector<TrialRecord> out;
        for (const auto& task : grid) {
            const auto sub = trial_substream(task.n_index, task.trial);
            for (int k : cfg.k_list) {
                auto it = done.find({cfg.n_grid[task.n_index], sub, k});
                if (it != done.end())
                    out.push_back(it->second);
            }
        }
        return out;
    };

    if (persist && std::filesystem::exists(cfg.output_path)) {
        std::ifstream in(cfg.output_path);
        if (!in)
            throw IoError(cfg.output_path, "cannot open for reading");
        std::string line;
        std::getline(in, line);
        if (!line.empty() && detail::trim(line) != kRecordsHeader)
            throw IoError(cfg.output_path, "existing file is not a records CSV");
        while (std::getline(in, line)) {
            // A row cut short by an interrupted run has too few fields.
            try {
                auto r = parse_record(line);
                if (r.d == cfg.d && r.flavor == cfg.flavor && r.metric == cfg.metric)
                    done.emplace(key_of(r), std::move(r));
            } catch (const InvalidInput&) {
            }
        }
    }

    std::vector<Task> todo;
    for (const auto& task : grid) {
        const auto sub = trial_substream(task.n_index, task.trial);
        bool complete = std::all_of(cfg.k_list.begin(), cfg.k_list.end(), [&](int k) {
            return done.count({cfg.n_grid[task.n_index], sub, k}) > 0;
        });
        if (!complete)
            todo.push_back(task);
    }

    std::ofstream checkpoint;
    if (persist) {
        write_records_csv(cfg.output_path, ordered());
        checkpoint.open(cfg.output_path, std::ios::app);
        if (!checkpoint)
            throw IoError(cfg.output_path, "cannot open for appending");
    }

    std::mutex mu;
    parallel_for(todo.size(), cfg.workers, [&](std::size_t i) {
        const auto& task = todo[i];
        const double n = cfg.n_grid[task.n_index];
        auto recs = run_trial(cfg, n, trial_substream(task.n_index, task.trial), cfg.metric);
        std::lock_guard lock(mu);
        for (auto& r : recs) {
            if (persist)
                checkpoint << format_record(r) << '\n';
            done.insert_or_assign(key_of(r), std::move(r));
        }
        if (persist)
            checkpoint.flush();
    });

    auto records = ordered();
    if (persist) {
        checkpoint.close();
        write_records_csv(cfg.output_path, records);
    }
    return records;
}

// ---------------------------------------------------------------------------
// Cube versus flat torus

TorusComparison run_torus_comparison(const ExperimentConfig& cfg_in)
{
    ExperimentConfig cfg = cfg_in;
    cfg.validate();
    cfg.k_list = {cfg.k_list.front()};

    struct Task {
        std::size_t n_index;
        std::size_t trial;
    };
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < cfg.n_grid.size(); ++i) {
        for (std::size_t t = 0; t < static_cast<std::size_t>(cfg.trials_per_n); ++t)
            tasks.push_back({i, t});
    }

    TorusComparison cmp;
    cmp.pairs.resize(tasks.size());
    parallel_for(tasks.size(), cfg.workers, [&](std::size_t i) {
        const double n = cfg.n_grid[tasks[i].n_index];
        const auto sub = trial_substream(tasks[i].n_index, tasks[i].trial);
        auto cube = sample_poisson(n, cfg.d, Metric::CubeEuclidean, {cfg.root_seed, sub});
        auto torus = cube.with_metric(Metric::FlatTorus);
        auto eval = [&](const PointCloud& cloud) {
            try {
                return evaluate_cloud(cfg, cloud, n, sub).front();
            } catch (const Error& e) {
                auto r = error_records(cfg, n, sub, cloud.metric(), e.what()).front();
                r.point_count = cloud.size();
                return r;
            }
        };
        cmp.pairs[i] = {eval(cube), eval(torus)};
    });

    for (std::size_t ni = 0; ni < cfg.n_grid.size(); ++ni) {
        std::vector<double> pc;
        std::vector<double> pt;
        TorusSummary s;
        s.n = cfg.n_grid[ni];
        s.min_torus_essential = static_cast<std::size_t>(-1);
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            if (tasks[i].n_index != ni)
                continue;
            const auto& pair = cmp.pairs[i];
            s.min_torus_essential = std::min(s.min_torus_essential, pair.torus.essential_count);
            s.max_torus_essential = std::max(s.max_torus_essential, pair.torus.essential_count);
            if (pair.cube.pi_max && pair.torus.pi_max) {
                pc.push_back(*pair.cube.pi_max);
                pt.push_back(*pair.torus.pi_max);
            }
        }
        auto sc = summary_stats(pc);
        auto st = summary_stats(pt);
        s.count = pc.size();
        s.mean_cube = sc.mean;
        s.std_cube = sc.stddev;
        s.mean_torus = st.mean;
        s.std_torus = st.stddev;
        s.pooled_std = std::sqrt(0.5 * (sc.stddev * sc.stddev + st.stddev * st.stddev));
        s.overlap = std::abs(s.mean_cube - s.mean_torus) <= s.pooled_std;
        cmp.per_n.push_back(s);
    }
    return cmp;
}

void write_torus_summary_csv(std::ostream& out, const TorusComparison& cmp)
{
    out << "n,count,mean_cube,std_cube,mean_torus,std_torus,pooled_std,overlap,min_torus_essential,"
           "max_torus_essential\n";
    for (const auto& s : cmp.per_n) {
        out << detail::format_double(s.n) << ',' << s.count << ',' << detail::format_double(s.mean_cube) << ','
            << detail::format_double(s.std_cube) << ',' << detail::format_double(s.mean_torus) << ','
            << detail::format_double(s.std_torus) << ',' << detail::format_double(s.pooled_std) << ','
            << (s.overlap ? 1 : 0) << ',' << s.min_torus_essential << ',' << s.max_torus_essential << '\n';
    }
}

// ---------------------------------------------------------------------------
// Summaries

ExperimentSummary summarize(const std::vector<TrialRecord>& records)
{
    ExperimentSummary s;
    std::map<std::pair<int, double>, std::vector<const TrialRecord*>> groups;
    for (const auto& r : records)
        groups[{r.k, r.n}].push_back(&r);

    std::map<int, std::pair<std::vector<double>, std::vector<double>>> scatter;
    for (const auto& [key, rows] : groups) {
        NSummary ns;
        ns.k = key.first;
        ns.n = key.second;
        ns.trials = rows.size();
        ns.delta_k = delta_k(ns.n, ns.k);
        std::vector<double> pis;
        std::vector<double> ratios;
        for (const auto* r : rows) {
            if (!r->error.empty()) {
                ++ns.errors;
                continue;
            }
            if (!r->pi_max) {
                ++ns.missing;
                continue;
            }
            pis.push_back(*r->pi_max);
            ratios.push_back(*r->ratio);
            scatter[ns.k].first.push_back(r->delta_k);
            scatter[ns.k].second.push_back(*r->pi_max);
        }
        ns.pi = summary_stats(pis);
        ns.ratio = summary_stats(ratios);
        s.per_n.push_back(ns);
    }
    for (const auto& [k, xy] : scatter) {
        std::optional<FitResult> fit;
        try {
            fit = linear_fit(xy.first, xy.second);
        } catch (const InvalidInput&) {
        }
        s.fits.emplace_back(k, fit);
    }
    return s;
}

void write_summary_csv(std::ostream& out, const ExperimentSummary& s)
{
    out << "n,k,trials,missing,errors,delta_k,mean_pi,std_pi,mean_ratio,std_ratio,min_ratio,max_ratio\n";
    for (const auto& ns : s.per_n) {
        out << detail::format_double(ns.n) << ',' << ns.k << ',' << ns.trials << ',' << ns.missing << ','
            << ns.errors << ',' << detail::format_double(ns.delta_k);
        if (ns.ratio.count > 0) {
            out << ',' << detail::format_double(ns.pi.mean) << ',' << detail::format_double(ns.pi.stddev) << ','
                << detail::format_double(ns.ratio.mean) << ',' << detail::format_double(ns.ratio.stddev) << ','
                << detail::format_double(ns.ratio.min) << ',' << detail::format_double(ns.ratio.max);
        } else {
            out << ",,,,,,";
        }
        out << '\n';
    }
}

void write_fit_csv(std::ostream& out, const ExperimentSummary& s)
{
    out << "k,slope,intercept,residual_rms,n_samples\n";
    for (const auto& [k, fit] : s.fits) {
        if (!fit)
            continue;
        out << k << ',' << detail::format_double(fit->slope) << ',' << detail::format_double(fit->intercept) << ','
            << detail::format_double(fit->residual_rms) << ',' << fit->n_samples << '\n';
    }
}

void write_svg_plot(std::ostream& out, const std::vector<TrialRecord>& records, const ExperimentSummary& s)
{
    constexpr double W = 640, H = 480, left = 70, right = 20, top = 30, bottom = 60;
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : records) {
        if (r.pi_max && r.error.empty())
            pts.emplace_back(r.delta_k, *r.pi_max);
    }
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (!pts.empty()) {
        x0 = x1 = pts[0].first;
        y0 = y1 = pts[0].second;
        for (auto [x, y] : pts) {
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
        double px = std::max(0.05 * (x1 - x0), 1e-3);
        double py = std::max(0.05 * (y1 - y0), 1e-3);
        x0 -= px;
        x1 += px;
        y0 = std::max(0.0, y0 - py);
        y1 += py;
    }
    auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * (W - left - right); };
    auto sy = [&](double y) { return H - bottom - (y - y0) / (y1 - y0) * (H - top - bottom); };
    auto f = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return std::string(buf);
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" "
        << "font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << H - bottom << "\" x2=\"" << W - right << "\" y2=\"" << H - bottom
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << H - bottom
        << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 5; ++t) {
        double xv = x0 + (x1 - x0) * t / 5.0;
        double yv = y0 + (y1 - y0) * t / 5.0;
        out << "<text x=\"" << f(sx(xv)) << "\" y=\"" << H - bottom + 18 << "\" text-anchor=\"middle\">" << f(xv)
            << "</text>\n";
        out << "<text x=\"" << left - 8 << "\" y=\"" << f(sy(yv) + 4) << "\" text-anchor=\"end\">" << f(yv)
            << "</text>\n";
    }
    out << "<text x=\"" << (left + W - right) / 2 << "\" y=\"" << H - 15
        << "\" text-anchor=\"middle\">Delta_k(n) = (log n / log log n)^(1/k)</text>\n";
    out << "<text x=\"18\" y=\"" << (top + H - bottom) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << (top + H - bottom) / 2 << ")\">max persistence Pi_k</text>\n";
    for (auto [x, y] : pts)
        out << "<circle cx=\"" << f(sx(x)) << "\" cy=\"" << f(sy(y)) << "\" r=\"2.5\" fill=\"steelblue\" "
            << "fill-opacity=\"0.6\"/>\n";
    for (const auto& [k, fit] : s.fits) {
        if (!fit)
            continue;
        out << "<line x1=\"" << f(sx(x0)) << "\" y1=\"" << f(sy(fit->slope * x0 + fit->intercept)) << "\" x2=\""
            << f(sx(x1)) << "\" y2=\"" << f(sy(fit->slope * x1 + fit->intercept))
            << "\" stroke=\"crimson\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << left + 10 << "\" y=\"" << top + 14 * k << "\" fill=\"crimson\">k=" << k
            << ": slope " << f(fit->slope) << ", intercept " << f(fit->intercept) << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace mpers
