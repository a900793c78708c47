#pragma once

#include "vmdlinear/linear_models.hpp"
#include "vmdlinear/series.hpp"
#include "vmdlinear/vmd.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace vmdl {

// Decompose-then-forecast pipeline. Each channel is standardised with its
// own training statistics, split into K modes, and forecast by one model per
// mode; the mode forecasts are summed and mapped back to original units.
// With use_vmd off a single model sees the standardised series directly.
struct PipelineConfig {
    VmdConfig vmd;
    ModelConfig model;
    bool use_vmd = true;
    // Trailing samples decomposed at prediction time; 0 means 4 * lookback.
    std::size_t context_length = 0;

    std::size_t effective_context() const {
        return context_length ? context_length : 4 * model.lookback;
    }
    void validate() const;

    friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

struct ChannelModels {
    std::string name;
    ScalerParams scaler;
    std::vector<double> omegas;          // centre frequencies of the training modes
    std::vector<ForecastModel> models;   // K with VMD, 1 without

    friend bool operator==(const ChannelModels&, const ChannelModels&) = default;
};

struct FittedPipeline {
    PipelineConfig config;
    std::vector<ChannelModels> channels;

    std::size_t model_count() const;

    friend bool operator==(const FittedPipeline&, const FittedPipeline&) = default;
};

/// Fits one pipeline over all channels. Errors from decomposition or
/// training are rethrown with the channel and mode prepended.
FittedPipeline fit(std::span<const TimeSeries> train, const PipelineConfig& cfg);

struct ChannelForecast {
    std::vector<double> forecast;                      // original units
    std::vector<std::vector<double>> mode_forecasts;   // standardised units, one per model
};

/// Forecast of the next H samples after the end of each `recent` series.
/// Needs at least the decomposition context (or lookback without VMD);
/// throws ContextTooShort otherwise.
std::vector<ChannelForecast> predict_detailed(const FittedPipeline& fitted,
                                              std::span<const TimeSeries> recent);
std::vector<std::vector<double>> predict(const FittedPipeline& fitted, std::span<const TimeSeries> recent);

}  // namespace vmdl
