#pragma once

#include "vmdlinear/io.hpp"
#include "vmdlinear/pipeline.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vmdl {

/// Root mean squared error. Throws EmptyInput / LengthMismatch / NonFinite.
double rmse(std::span<const double> pred, std::span<const double> truth);

// "path" or "path:col1,col2". The dataset name is the file stem.
struct DatasetSpec {
    std::string name;
    std::filesystem::path path;
    std::vector<std::string> columns;
};
DatasetSpec parse_dataset_spec(std::string_view spec);

// In-memory dataset: the effective rows (already trimmed) of each channel.
struct Dataset {
    std::string name;
    std::vector<TimeSeries> channels;
};

struct BenchmarkGrid {
    std::vector<ModelKind> kinds{ModelKind::Linear, ModelKind::DLinear, ModelKind::NLinear};
    bool without_vmd = true;
    bool with_vmd = true;
};

// Rolling-origin forecasts for one channel, kept for plotting.
struct ForecastTrace {
    std::string channel;
    std::vector<std::size_t> t;                      // row index in the dataset
    std::vector<double> truth;
    std::vector<double> forecast;
    std::vector<std::vector<double>> mode_forecasts; // per model, standardised units
};

struct EvalResult {
    std::string dataset;
    ModelKind model_kind = ModelKind::Linear;
    bool use_vmd = false;
    bool ok = true;
    std::string failure;
    double rmse = 0.0;          // original units
    double rmse_scaled = 0.0;   // standardised with the training statistics
    std::size_t n_predictions = 0;
    std::int64_t runtime_ms = 0;
    std::vector<ForecastTrace> traces;
};

struct ModelAverage {
    ModelKind kind = ModelKind::Linear;
    bool use_vmd = false;
    double rmse = 0.0;
    double rmse_scaled = 0.0;
    std::size_t count = 0;   // successful cells averaged
    std::size_t failed = 0;  // excluded cells
};

struct BenchmarkReport {
    std::vector<EvalResult> rows;

    /// Arithmetic mean per (model, arm) over successful cells, in grid order.
    std::vector<ModelAverage> averages() const;
    bool any_failed() const;
};

/// Fits on the first split.train_rows samples and scores non-overlapping
/// H-step forecasts over the rest. Errors propagate to the caller.
EvalResult evaluate(const Dataset& data, const SplitResult& split, const PipelineConfig& cfg);

/// Splits per split_dataset and evaluates every (dataset, model, arm) cell.
/// Failures are recorded in the row instead of aborting the run.
BenchmarkReport run_benchmark(std::span<const Dataset> datasets, const BenchmarkGrid& grid,
                              const PipelineConfig& defaults);
BenchmarkReport run_benchmark(std::span<const DatasetSpec> datasets, const BenchmarkGrid& grid,
                              const PipelineConfig& defaults);

struct RenderedReport {
    std::string table;                                        // report.txt
    std::string csv;                                          // report.csv
    std::vector<std::pair<std::string, std::string>> plots;   // file name -> CSV
};

RenderedReport render_report(const BenchmarkReport& report);

}  // namespace vmdl
