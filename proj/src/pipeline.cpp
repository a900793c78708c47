#include "vmdlinear/pipeline.hpp"

#include "vmdlinear/error.hpp"

#include <exception>
#include <string>

namespace vmdl {

namespace {

std::string context(const std::string& channel, std::size_t mode, bool with_mode) {
    std::string s = "channel '" + channel + "'";
    if (with_mode) s += " mode " + std::to_string(mode + 1);
    return s + ": ";
}

// Runs task(i) for i in [0, n) in parallel and rethrows the lowest-index
// failure, so the reported error does not depend on scheduling.
template <typename Task>
void run_tasks(std::size_t n, Task&& task) {
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic) if (n > 1)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            task(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

// Constant channels have no spread to divide by; they are centred only, so
// an all-zero channel stays all-zero end to end.
ScalerParams channel_scaler(const TimeSeries& series) {
    try {
        return fit_scaler(series);
    } catch (const Error& e) {
        if (e.code() != Errc::ConstantSeries) throw;
        return {series[0], 1.0};
    }
}

}  // namespace

void PipelineConfig::validate() const {
    vmd.validate();
    model.validate();
    if (use_vmd && effective_context() < model.lookback) {
        throw Error(Errc::InvalidConfig, "PipelineConfig: context shorter than lookback");
    }
}

std::size_t FittedPipeline::model_count() const {
    std::size_t n = 0;
    for (const auto& c : channels) n += c.models.size();
    return n;
}

FittedPipeline fit(std::span<const TimeSeries> train, const PipelineConfig& cfg) {
    cfg.validate();
    if (train.empty()) throw Error(Errc::EmptyInput, "fit: no channels");
    const std::size_t channel_count = train.size();
    const std::size_t per_channel = cfg.use_vmd ? cfg.vmd.modes : 1;

    FittedPipeline fitted;
    fitted.config = cfg;
    fitted.channels.resize(channel_count);

    // Stage 1: scale and decompose each channel.
    std::vector<std::vector<std::vector<double>>> components(channel_count);
    run_tasks(channel_count, [&](std::size_t c) {
        const TimeSeries& series = train[c];
        auto& ch = fitted.channels[c];
        ch.name = series.name().empty() ? "ch" + std::to_string(c) : series.name();
        try {
            ch.scaler = channel_scaler(series);
            auto scaled = apply_scaler(series.values(), ch.scaler, ScaleDirection::Forward);
            if (cfg.use_vmd) {
                ModeSet modes = decompose(scaled, cfg.vmd);
                ch.omegas = modes.omegas;
                components[c] = std::move(modes.modes);
            } else {
                components[c].push_back(std::move(scaled));
            }
            ch.models.resize(per_channel);
        } catch (const Error& e) {
            throw Error(e.code(), context(ch.name, 0, false) + e.what());
        }
    });

    // Stage 2: one model per (channel, mode).
    run_tasks(channel_count * per_channel, [&](std::size_t task) {
        const std::size_t c = task / per_channel;
        const std::size_t k = task % per_channel;
        auto& ch = fitted.channels[c];
        try {
            const WindowSet windows = make_windows(components[c][k], cfg.model.lookback, cfg.model.horizon);
            TrainResult r = vmdl::train(cfg.model, windows);
            r.model.scaler_id = ch.name;
            ch.models[k] = std::move(r.model);
        } catch (const Error& e) {
            throw Error(e.code(), context(ch.name, k, cfg.use_vmd) + e.what());
        }
    });
    return fitted;
}

std::vector<ChannelForecast> predict_detailed(const FittedPipeline& fitted,
                                              std::span<const TimeSeries> recent) {
    const auto& cfg = fitted.config;
    if (recent.size() != fitted.channels.size()) {
        throw Error(Errc::DimensionMismatch, "predict: expected " + std::to_string(fitted.channels.size()) +
                                                 " channels, got " + std::to_string(recent.size()));
    }
    const std::size_t L = cfg.model.lookback;
    const std::size_t H = cfg.model.horizon;
    const std::size_t needed = cfg.use_vmd ? cfg.effective_context() : L;

    std::vector<ChannelForecast> out(recent.size());
    run_tasks(recent.size(), [&](std::size_t c) {
        const auto& ch = fitted.channels[c];
        const auto values = recent[c].values();
        if (values.size() < needed) {
            throw Error(Errc::ContextTooShort, context(ch.name, 0, false) + "need " + std::to_string(needed) +
                                                   " samples, got " + std::to_string(values.size()));
        }
        const auto tail = values.subspan(values.size() - needed);
        const auto scaled = apply_scaler(tail, ch.scaler, ScaleDirection::Forward);

        std::vector<std::vector<double>> inputs;
        if (cfg.use_vmd) {
            ModeSet modes;
            try {
                modes = decompose(scaled, cfg.vmd);
            } catch (const Error& e) {
                throw Error(e.code(), context(ch.name, 0, false) + e.what());
            }
            inputs = std::move(modes.modes);
        } else {
            inputs.push_back(scaled);
        }
        if (inputs.size() != ch.models.size()) {
            throw Error(Errc::DimensionMismatch, context(ch.name, 0, false) + "mode count does not match models");
        }

        ChannelForecast& fc = out[c];
        std::vector<double> total(H, 0.0);
        for (std::size_t k = 0; k < inputs.size(); ++k) {
            const std::span<const double> component(inputs[k]);
            auto f = forward(ch.models[k], component.subspan(component.size() - L));
            for (std::size_t h = 0; h < H; ++h) total[h] += f[h];
            fc.mode_forecasts.push_back(std::move(f));
        }
        fc.forecast = apply_scaler(total, ch.scaler, ScaleDirection::Inverse);
    });
    return out;
}

std::vector<std::vector<double>> predict(const FittedPipeline& fitted, std::span<const TimeSeries> recent) {
    auto detailed = predict_detailed(fitted, recent);
    std::vector<std::vector<double>> out;
    out.reserve(detailed.size());
    for (auto& d : detailed) out.push_back(std::move(d.forecast));
    return out;
}

}  // namespace vmdl
