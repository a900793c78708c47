#include "vmdlinear/series.hpp"

#include "vmdlinear/error.hpp"

#include <cmath>
#include <string>

namespace vmdl {

TimeSeries::TimeSeries(std::vector<double> values, std::string name, int channel_id)
    : values_(std::move(values)), name_(std::move(name)), channel_id_(channel_id) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw Error(Errc::NonFinite, "TimeSeries '" + name_ + "': non-finite value at index " +
                                             std::to_string(i));
        }
    }
}

TimeSeries TimeSeries::slice(std::size_t first, std::size_t count) const {
    if (first + count > values_.size()) {
        throw Error(Errc::DimensionMismatch, "TimeSeries::slice out of range");
    }
    auto begin = values_.begin() + static_cast<std::ptrdiff_t>(first);
    return TimeSeries({begin, begin + static_cast<std::ptrdiff_t>(count)}, name_, channel_id_);
}

ScalerParams fit_scaler(std::span<const double> train) {
    if (train.size() < 2) {
        throw Error(Errc::TooShort, "fit_scaler: need at least 2 samples");
    }
    const double n = static_cast<double>(train.size());
    double sum = 0.0;
    for (double v : train) sum += v;
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : train) ss += (v - mean) * (v - mean);
    const double std = std::sqrt(ss / n);
    if (!(std > 0.0)) {
        throw Error(Errc::ConstantSeries, "fit_scaler: series has zero variance");
    }
    return {mean, std};
}

ScalerParams fit_scaler(const TimeSeries& train) { return fit_scaler(train.values()); }

std::vector<double> apply_scaler(std::span<const double> values, const ScalerParams& params,
                                 ScaleDirection direction) {
    if (!(params.std > 0.0)) {
        throw Error(Errc::InvalidConfig, "apply_scaler: std must be positive");
    }
    std::vector<double> out(values.size());
    if (direction == ScaleDirection::Forward) {
        for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - params.mean) / params.std;
    } else {
        for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i] * params.std + params.mean;
    }
    return out;
}

TimeSeries apply_scaler(const TimeSeries& series, const ScalerParams& params,
                        ScaleDirection direction) {
    return TimeSeries(apply_scaler(series.values(), params, direction), series.name(),
                      series.channel_id());
}

SplitResult split_dataset(std::size_t row_count) {
    if (row_count < 10) {
        throw Error(Errc::TooFewRows,
                    "split_dataset: need at least 10 rows, got " + std::to_string(row_count));
    }
    SplitResult out;
    std::size_t effective = row_count;
    // Integer arithmetic keeps the floor exact: 90% = 9/10, 80% = 4/5.
    std::size_t num = 4;
    std::size_t den = 5;
    if (row_count < kSmallDatasetRows) {
        num = 9;
        den = 10;
    } else if (row_count > kTrimRows) {
        effective = kTrimRows;
        out.trimmed = true;
    }
    out.train_rows = effective * num / den;
    out.test_rows = effective - out.train_rows;
    return out;
}

std::size_t window_count(std::size_t n, std::size_t lookback, std::size_t horizon) {
    return n >= lookback + horizon ? n - lookback - horizon + 1 : 0;
}

WindowSet make_windows(std::span<const double> series, std::size_t lookback, std::size_t horizon) {
    if (lookback == 0 || horizon == 0) {
        throw Error(Errc::InvalidConfig, "make_windows: lookback and horizon must be >= 1");
    }
    if (series.size() < lookback + horizon) {
        throw Error(Errc::TooShort, "make_windows: series length " + std::to_string(series.size()) +
                                        " < lookback + horizon = " +
                                        std::to_string(lookback + horizon));
    }
    const std::size_t rows = window_count(series.size(), lookback, horizon);
    WindowSet w{Matrix(rows, lookback), Matrix(rows, horizon), lookback, horizon};
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < lookback; ++j) w.inputs(i, j) = series[i + j];
        for (std::size_t j = 0; j < horizon; ++j) w.targets(i, j) = series[i + lookback + j];
    }
    return w;
}

WindowSet make_windows(const TimeSeries& series, std::size_t lookback, std::size_t horizon) {
    return make_windows(series.values(), lookback, horizon);
}

}  // namespace vmdl
