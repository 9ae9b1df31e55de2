#include "d2d/output.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <tuple>
#include <algorithm>

#include "d2d/format.hpp"

namespace d2d {

MeanCi mean_ci(const std::vector<double>& values) {
    MeanCi ci;
    ci.count = values.size();
    if (values.empty()) return ci;
    double sum = 0.0;
    for (double v : values) sum += v;
    ci.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - ci.mean) * (v - ci.mean);
        const double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
        ci.half_width = 1.96 * sd / std::sqrt(static_cast<double>(values.size()));
    }
    return ci;
}

std::vector<AggregateRow> aggregate(const std::vector<TrialRecord>& records) {
    using Key = std::tuple<std::string, double, std::size_t, double>;  // algorithm, R, N, r
    std::map<Key, std::pair<std::vector<double>, std::vector<double>>> groups;
    for (const auto& r : records) {
        auto& g = groups[{to_string(r.algorithm), r.cell_radius, r.n_cues, r.cluster_radius}];
        g.first.push_back(r.sum_rate);
        g.second.push_back(static_cast<double>(r.admitted));
    }
    std::vector<AggregateRow> rows;
    rows.reserve(groups.size());
    for (const auto& [key, values] : groups) {
        AggregateRow row;
        row.algorithm = std::get<0>(key);
        row.cell_radius = std::get<1>(key);
        row.n_cues = std::get<2>(key);
        row.cluster_radius = std::get<3>(key);
        row.sum_rate = mean_ci(values.first);
        row.admitted = mean_ci(values.second);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string csv_field(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_raw_csv(const std::vector<TrialRecord>& records, std::ostream& out) {
    out << "trial,seed,algorithm,n_cues,n_d2d,cell_radius,cluster_radius,sum_rate,admitted,"
           "matching_states,signaling_gains,predicted_states,predicted_signaling\r\n";
    for (const auto& r : records) {
        out << r.trial << ',' << r.seed << ',' << csv_field(to_string(r.algorithm)) << ',' << r.n_cues << ','
            << r.n_d2d << ',' << format_double(r.cell_radius) << ',' << format_double(r.cluster_radius) << ','
            << format_double(r.sum_rate) << ',' << r.admitted << ',' << r.counters.matching_states << ','
            << r.counters.signaling_gains << ',' << r.predicted.matching_states << ','
            << r.predicted.signaling_gains << "\r\n";
    }
}

void write_aggregate_csv(const std::vector<AggregateRow>& rows, std::ostream& out) {
    out << "algorithm,cluster_radius,cell_radius,n_cues,trials,sum_rate_mean,sum_rate_ci_low,sum_rate_ci_high,"
           "admitted_mean,admitted_ci_low,admitted_ci_high\r\n";
    for (const auto& r : rows) {
        out << csv_field(r.algorithm) << ',' << format_double(r.cluster_radius) << ',' << format_double(r.cell_radius)
            << ',' << r.n_cues << ',' << r.sum_rate.count << ',' << format_double(r.sum_rate.mean) << ','
            << format_double(r.sum_rate.low()) << ',' << format_double(r.sum_rate.high()) << ','
            << format_double(r.admitted.mean) << ',' << format_double(r.admitted.low()) << ','
            << format_double(r.admitted.high()) << "\r\n";
    }
}

void write_timing_csv(const std::vector<TrialRecord>& records, std::ostream& out) {
    out << "trial,algorithm,cell_radius,cluster_radius,n_cues,wall_seconds\r\n";
    for (const auto& r : records) {
        out << r.trial << ',' << csv_field(to_string(r.algorithm)) << ',' << format_double(r.cell_radius) << ','
            << format_double(r.cluster_radius) << ',' << r.n_cues << ',' << format_double(r.wall_seconds) << "\r\n";
    }
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw OutputError("cannot open '" + path.string() + "' for writing");
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw OutputError("write failed for '" + path.string() + "'");
}

// gnuplot-style blocks, one per series, separated by two blank lines.
template <typename Label, typename Metric>
void write_series(const std::vector<AggregateRow>& rows, std::ostream& out, const std::string& title, Label label,
                  Metric metric) {
    out << "# " << title << "\n# columns: cluster_radius mean ci_low ci_high trials\n";
    std::string current;
    for (const auto& r : rows) {
        const std::string series = label(r);
        if (series != current) {
            if (!current.empty()) out << "\n\n";
            out << "# " << series << '\n';
            current = series;
        }
        const MeanCi& m = metric(r);
        out << format_double(r.cluster_radius) << ' ' << format_double(m.mean) << ' ' << format_double(m.low()) << ' '
            << format_double(m.high()) << ' ' << m.count << '\n';
    }
}

}  // namespace

EmittedFiles emit_results(const std::vector<TrialRecord>& records, const std::filesystem::path& out_dir) {
    if (records.empty()) throw OutputError("emit_results: no records to write");
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw OutputError("cannot create '" + out_dir.string() + "': " + ec.message());

    EmittedFiles files;
    files.raw_csv = out_dir / "raw.csv";
    files.aggregate_csv = out_dir / "aggregate.csv";
    files.timing_csv = out_dir / "timing.csv";

    const auto rows = aggregate(records);
    {
        auto out = open_for_write(files.raw_csv);
        write_raw_csv(records, out);
        finish(out, files.raw_csv);
    }
    {
        auto out = open_for_write(files.aggregate_csv);
        write_aggregate_csv(rows, out);
        finish(out, files.aggregate_csv);
    }
    {
        auto out = open_for_write(files.timing_csv);
        write_timing_csv(records, out);
        finish(out, files.timing_csv);
    }

    auto by_cell = [](const AggregateRow& r) {
        return "algorithm=" + r.algorithm + " cell_radius=" + format_double(r.cell_radius) +
               " n_cues=" + std::to_string(r.n_cues);
    };
    // Same rows, grouped by N first for the CUE-count figure.
    auto rows_by_n = rows;
    std::stable_sort(rows_by_n.begin(), rows_by_n.end(), [](const AggregateRow& a, const AggregateRow& b) {
        return std::tie(a.algorithm, a.n_cues, a.cell_radius) < std::tie(b.algorithm, b.n_cues, b.cell_radius);
    });

    const std::vector<std::tuple<std::string, std::string, const std::vector<AggregateRow>*, bool>> figures{
        {"fig2_sum_rate.dat", "sum-rate (bits/s/Hz) vs D2D cluster radius (m)", &rows, true},
        {"fig3_admitted.dat", "admitted D2D pairs vs D2D cluster radius (m)", &rows, false},
        {"fig4_admitted_vs_cues.dat", "admitted D2D pairs vs D2D cluster radius (m), per CUE count", &rows_by_n, false},
    };
    for (const auto& [name, title, data, rate] : figures) {
        const auto path = out_dir / name;
        auto out = open_for_write(path);
        if (rate) {
            write_series(*data, out, title, by_cell, [](const AggregateRow& r) -> const MeanCi& { return r.sum_rate; });
        } else {
            write_series(*data, out, title, by_cell, [](const AggregateRow& r) -> const MeanCi& { return r.admitted; });
        }
        finish(out, path);
        files.plot_data.push_back(path);
    }
    return files;
}

}  // namespace d2d
