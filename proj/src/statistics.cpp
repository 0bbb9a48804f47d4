#include "mpers/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mpers/errors.hpp"

namespace mpers {

double multiplicative_persistence(const PersistencePair& pair)
{
    if (pair.essential())
        throw InvalidInput("essential classes have no finite persistence");
    if (!(pair.birth > 0.0))
        throw InvalidInput("multiplicative persistence needs a positive birth radius");
    return pair.death / pair.birth;
}

MaxPersistenceReport max_persistence(const PersistenceDiagram& diag, int k, double n, bool exclude_essential)
{
    if (k < 1)
        throw InvalidInput("maximal persistence is defined for degree k >= 1");
    MaxPersistenceReport report;
    report.k = k;
    report.n_intensity = n;
    report.delta_k = delta_k(n, k);
    report.truncated = truncation_check(diag, k);
    for (const auto& p : diag.degree(k)) {
        if (p.essential()) {
            ++report.essential_count;
            if (!exclude_essential && !(report.pi_max && *report.pi_max == kInfinity)) {
                report.pi_max = kInfinity;
                report.argmax_pair = p;
            }
            continue;
        }
        if (p.zero_length() || !(p.birth > 0.0))
            continue;
        double pi = multiplicative_persistence(p);
        if (!report.pi_max || pi > *report.pi_max) {
            report.pi_max = pi;
            report.argmax_pair = p;
        }
    }
    if (report.pi_max)
        report.ratio = *report.pi_max / report.delta_k;
    return report;
}

double delta_k(double n, int k)
{
    if (!(n > std::numbers::e))
        throw InvalidInput("the scaling term needs n > e");
    if (k < 1)
        throw InvalidInput("the scaling term needs k >= 1");
    double ln = std::log(n);
    return std::pow(ln / std::log(ln), 1.0 / k);
}

FitResult linear_fit(std::span<const double> xs, std::span<const double> ys)
{
    if (xs.size() != ys.size())
        throw InvalidInput("fit inputs differ in length");
    if (xs.size() < 2)
        throw InvalidInput("fit needs at least two samples");
    const auto n = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (!(sxx > 0.0))
        throw InvalidInput("fit needs at least two distinct x values");
    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / n);
    fit.n_samples = xs.size();
    return fit;
}

std::vector<HistogramBin> histogram(std::span<const double> values, int bins)
{
    if (bins < 1)
        throw InvalidInput("histogram needs at least one bin");
    if (values.empty())
        throw InvalidInput("histogram of an empty sample");
    auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    const double width = (hi - lo) / bins;
    std::vector<HistogramBin> out(static_cast<std::size_t>(bins));
    for (int b = 0; b < bins; ++b) {
        out[static_cast<std::size_t>(b)].lo = lo + width * b;
        out[static_cast<std::size_t>(b)].hi = b + 1 == bins ? hi : lo + width * (b + 1);
    }
    for (double v : values) {
        std::size_t b = 0;
        if (width > 0.0)
            b = std::min(static_cast<std::size_t>((v - lo) / width), static_cast<std::size_t>(bins - 1));
        ++out[b].count;
    }
    return out;
}

SummaryStats summary_stats(std::span<const double> values)
{
    SummaryStats s;
    s.count = values.size();
    if (values.empty())
        return s;
    double sum = 0.0;
    s.min = values[0];
    s.max = values[0];
    for (double v : values) {
        sum += v;
        s.min = std::min(s.min, v);
        s.max = std::max(s.max, v);
    }
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values)
            ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return s;
}

}  // namespace mpers
