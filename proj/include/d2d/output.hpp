#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "d2d/experiment.hpp"

namespace d2d {

class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mean with a normal-approximation 95% interval (mean +/- 1.96 sd / sqrt(n)).
struct MeanCi {
    double mean = 0.0;
    double half_width = 0.0;
    std::size_t count = 0;

    double low() const { return mean - half_width; }
    double high() const { return mean + half_width; }
};

MeanCi mean_ci(const std::vector<double>& values);

struct AggregateRow {
    std::string algorithm;
    double cluster_radius = 0.0;
    double cell_radius = 0.0;
    std::size_t n_cues = 0;
    MeanCi sum_rate;
    MeanCi admitted;
};

/// Grouped by (algorithm, cluster radius, cell radius, N), sorted by
/// algorithm name, cell radius, N, cluster radius.
std::vector<AggregateRow> aggregate(const std::vector<TrialRecord>& records);

/// RFC 4180 (CRLF rows, header). Wall times are excluded so reruns compare byte-for-byte.
void write_raw_csv(const std::vector<TrialRecord>& records, std::ostream& out);
void write_aggregate_csv(const std::vector<AggregateRow>& rows, std::ostream& out);
void write_timing_csv(const std::vector<TrialRecord>& records, std::ostream& out);

struct EmittedFiles {
    std::filesystem::path raw_csv;
    std::filesystem::path aggregate_csv;
    std::filesystem::path timing_csv;
    std::vector<std::filesystem::path> plot_data;
};

/// Writes raw.csv, aggregate.csv, timing.csv and one plain-text data file per
/// figure (sum-rate and admitted pairs vs cluster radius, admitted pairs per
/// CUE count) into `out_dir`, creating it if needed. Throws OutputError with
/// the offending path on failure or when `records` is empty.
EmittedFiles emit_results(const std::vector<TrialRecord>& records, const std::filesystem::path& out_dir);

/// Quotes a CSV field when it contains a comma, quote, CR or LF.
std::string csv_field(const std::string& field);

}  // namespace d2d
