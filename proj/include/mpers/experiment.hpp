#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mpers/filtration.hpp"
#include "mpers/statistics.hpp"

namespace mpers {

/// One trial grid. Text form is `key = value` per line with exactly these
/// field names; lists are comma separated and `#` starts a comment.
struct ExperimentConfig {
    std::vector<double> n_grid{100, 200, 400, 800, 1600, 3200, 6400, 12800};
    int d = 2;
    std::vector<int> k_list{1};
    Flavor flavor = Flavor::Cech;
    Metric metric = Metric::CubeEuclidean;
    int trials_per_n = 20;
    std::uint64_t root_seed = 1;
    double r_max_multiplier = 0.75;
    std::optional<int> max_dim;
    std::string output_path;
    int workers = 1;
    int max_retries = 3;
    bool record_wall_time = false;

    void validate() const;
    int effective_max_dim() const;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);
std::string to_config_text(const ExperimentConfig& cfg);

/// Substream of trial `trial` at grid position `n_index`.
std::uint64_t trial_substream(std::size_t n_index, std::size_t trial);

struct TrialRecord {
    double n = 0.0;
    int d = 2;
    int k = 1;
    Flavor flavor = Flavor::Cech;
    Metric metric = Metric::CubeEuclidean;
    std::uint64_t substream = 0;
    std::size_t point_count = 0;
    std::optional<double> pi_max;
    std::optional<double> birth;
    std::optional<double> death;
    double delta_k = 0.0;
    std::optional<double> ratio;
    bool truncated = false;
    std::optional<double> wall_ms;
    std::string error;

    /// Not part of the CSV; filled for freshly computed trials.
    std::size_t essential_count = 0;
    double r_max_used = 0.0;
};

inline constexpr const char* kRecordsHeader =
    "n,d,k,flavor,metric,substream,N,pi_max,birth,death,delta_k,ratio,truncated,wall_ms,error";

std::string format_record(const TrialRecord& r);
TrialRecord parse_record(const std::string& line);
void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records);
void write_records_csv(const std::string& path, const std::vector<TrialRecord>& records);
std::vector<TrialRecord> read_records_csv(std::istream& in);
std::vector<TrialRecord> read_records_csv(const std::string& path);

/// Samples one Poisson cloud and evaluates it for every k in `cfg.k_list`,
/// doubling the radius cap while a requested degree is truncated. Returns
/// one record per k; exhausted retries yield error records.
std::vector<TrialRecord> run_trial(const ExperimentConfig& cfg, double n, std::uint64_t substream,
                                   Metric metric);

/// Runs the whole grid. With a non-empty `output_path`, rows are appended to
/// that file as trials finish, rows already present are not recomputed,
/// and the file is rewritten in grid order at the end.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg);

struct TorusPair {
    TrialRecord cube;
    TrialRecord torus;
};

struct TorusSummary {
    double n = 0.0;
    std::size_t count = 0;
    double mean_cube = 0.0;
    double std_cube = 0.0;
    double mean_torus = 0.0;
    double std_torus = 0.0;
    double pooled_std = 0.0;
    bool overlap = false;  ///< |mean_cube - mean_torus| <= pooled_std
    std::size_t min_torus_essential = 0;
    std::size_t max_torus_essential = 0;
};

struct TorusComparison {
    std::vector<TorusPair> pairs;
    std::vector<TorusSummary> per_n;
};

/// Evaluates each trial's point set under both metrics (first k of k_list).
TorusComparison run_torus_comparison(const ExperimentConfig& cfg);
void write_torus_summary_csv(std::ostream& out, const TorusComparison& cmp);

struct NSummary {
    double n = 0.0;
    int k = 1;
    std::size_t trials = 0;
    std::size_t missing = 0;
    std::size_t errors = 0;
    double delta_k = 0.0;
    SummaryStats pi;
    SummaryStats ratio;
};

struct ExperimentSummary {
    std::vector<NSummary> per_n;
    /// OLS of pi_max on delta_k per degree; absent when x does not vary.
    std::vector<std::pair<int, std::optional<FitResult>>> fits;
};

ExperimentSummary summarize(const std::vector<TrialRecord>& records);
void write_summary_csv(std::ostream& out, const ExperimentSummary& s);
void write_fit_csv(std::ostream& out, const ExperimentSummary& s);
/// Scatter of pi_max against delta_k with the fitted line.
void write_svg_plot(std::ostream& out, const std::vector<TrialRecord>& records, const ExperimentSummary& s);

}  // namespace mpers
