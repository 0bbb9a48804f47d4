#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mpers/persistence.hpp"

namespace mpers {

/// death / birth of a finite pair with positive birth.
double multiplicative_persistence(const PersistencePair& pair);

struct MaxPersistenceReport {
    int k = 1;
    std::optional<double> pi_max;          ///< absent when no finite degree-k bar exists
    std::optional<PersistencePair> argmax_pair;
    std::size_t essential_count = 0;       ///< essential degree-k classes (never in pi_max)
    double n_intensity = 0.0;
    double delta_k = 0.0;
    std::optional<double> ratio;           ///< pi_max / delta_k
    bool truncated = false;
};

/// Largest death/birth ratio over finite, non-zero-length degree-k bars.
///
/// With `exclude_essential == false` an essential degree-k class counts as
/// unbounded persistence and makes pi_max infinite.
MaxPersistenceReport max_persistence(const PersistenceDiagram& diag, int k, double n,
                                     bool exclude_essential = true);

/// (log n / log log n)^(1/k), natural logarithms; requires n > e.
double delta_k(double n, int k);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
    std::size_t n_samples = 0;
};

/// Ordinary least squares y = slope * x + intercept.
FitResult linear_fit(std::span<const double> xs, std::span<const double> ys);

struct HistogramBin {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;
};

/// Equal-width bins over [min, max]; bins are half-open except the last.
std::vector<HistogramBin> histogram(std::span<const double> values, int bins);

struct SummaryStats {
    std::size_t count = 0;
    double mean = 0.0;
    double stddev = 0.0;  ///< sample standard deviation (n - 1)
    double min = 0.0;
    double max = 0.0;
};

SummaryStats summary_stats(std::span<const double> values);

}  // namespace mpers
