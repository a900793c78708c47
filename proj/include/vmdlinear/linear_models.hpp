#pragma once

#include "vmdlinear/matrix.hpp"
#include "vmdlinear/series.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vmdl {

enum class ModelKind { Linear, NLinear, DLinear };

std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view s);

struct ModelConfig {
    ModelKind kind = ModelKind::Linear;
    std::size_t lookback = 96;
    std::size_t horizon = 24;
    std::size_t channels = 1;
    std::size_t ma_kernel = 25;     // DLinear only; odd
    double learning_rate = 0.01;
    double l1_weight = 1e-4;
    std::size_t epochs = 100;
    std::size_t batch_size = 32;
    std::uint64_t seed = 0;         // batch shuffling

    void validate() const;

    friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

// One H x L weight matrix and its H-vector bias.
struct DenseLayer {
    Matrix weight;
    std::vector<double> bias;

    friend bool operator==(const DenseLayer&, const DenseLayer&) = default;
};

// Trained forecaster. Linear and NLinear hold one layer; DLinear holds the
// trend layer followed by the seasonal layer.
struct ForecastModel {
    ModelKind kind = ModelKind::Linear;
    std::size_t lookback = 0;
    std::size_t horizon = 0;
    std::size_t channels = 1;
    std::size_t ma_kernel = 25;
    std::vector<DenseLayer> layers;
    std::string scaler_id;

    friend bool operator==(const ForecastModel&, const ForecastModel&) = default;
};

/// Zero-initialised model shaped by cfg.
ForecastModel init_model(const ModelConfig& cfg);

/// Centered moving average with replicate edge padding of (kernel-1)/2 on
/// each side, and the residual. trend + seasonal == window exactly.
std::pair<std::vector<double>, std::vector<double>> moving_average_split(std::span<const double> window,
                                                                         std::size_t kernel);

std::vector<double> forward(const ForecastModel& model, std::span<const double> window);

/// Forecasts for every row of `inputs` (rows x L) -> rows x H.
Matrix forward_batch(const ForecastModel& model, const Matrix& inputs);

/// Mean squared error over all outputs plus l1_weight * sum |W| (biases excluded).
double loss(const ForecastModel& model, const WindowSet& batch, double l1_weight);

// Gradient shaped like the model's layers.
struct ModelGradient {
    std::vector<DenseLayer> layers;
};

/// Analytic gradient of `loss`. The L1 term contributes l1_weight * sign(W)
/// with sign(0) = 0.
ModelGradient loss_gradient(const ForecastModel& model, const WindowSet& batch, double l1_weight);

struct TrainResult {
    ForecastModel model;
    std::vector<double> epoch_loss;  // full-set loss after each epoch
};

/// Mini-batch gradient descent from zero weights for cfg.epochs epochs.
/// Deterministic for a given seed. Throws NonFiniteLoss on divergence.
TrainResult train(const ModelConfig& cfg, const WindowSet& windows);

/// Continues training `model` for `epochs` more epochs (0 leaves it unchanged).
TrainResult train_from(ForecastModel model, const ModelConfig& cfg, const WindowSet& windows,
                       std::size_t epochs);

}  // namespace vmdl
