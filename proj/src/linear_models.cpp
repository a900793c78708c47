#include "vmdlinear/linear_models.hpp"

#include "vmdlinear/error.hpp"
#include "vmdlinear/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace vmdl {

std::string_view to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::Linear: return "linear";
        case ModelKind::NLinear: return "nlinear";
        case ModelKind::DLinear: return "dlinear";
    }
    return "linear";
}

ModelKind parse_model_kind(std::string_view s) {
    if (s == "linear" || s == "Linear") return ModelKind::Linear;
    if (s == "nlinear" || s == "NLinear") return ModelKind::NLinear;
    if (s == "dlinear" || s == "DLinear") return ModelKind::DLinear;
    throw Error(Errc::InvalidConfig, "unknown model kind '" + std::string(s) + "'");
}

void ModelConfig::validate() const {
    auto fail = [](const std::string& what) { throw Error(Errc::InvalidConfig, "ModelConfig: " + what); };
    if (lookback < 1) fail("lookback must be >= 1");
    if (horizon < 1) fail("horizon must be >= 1");
    if (channels < 1) fail("channels must be >= 1");
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) fail("learning_rate must be > 0");
    if (!(l1_weight >= 0.0) || !std::isfinite(l1_weight)) fail("l1_weight must be >= 0");
    if (epochs < 1) fail("epochs must be >= 1");
    if (batch_size < 1) fail("batch_size must be >= 1");
    if (kind == ModelKind::DLinear) {
        if (ma_kernel < 3) fail("ma_kernel must be >= 3");
        if (ma_kernel % 2 == 0) throw Error(Errc::KernelEven, "ModelConfig: ma_kernel must be odd");
        if (ma_kernel > lookback) {
            throw Error(Errc::KernelTooLarge, "ModelConfig: ma_kernel exceeds lookback");
        }
    }
}

ForecastModel init_model(const ModelConfig& cfg) {
    cfg.validate();
    ForecastModel m;
    m.kind = cfg.kind;
    m.lookback = cfg.lookback;
    m.horizon = cfg.horizon;
    m.channels = cfg.channels;
    m.ma_kernel = cfg.ma_kernel;
    const std::size_t n_layers = cfg.kind == ModelKind::DLinear ? 2 : 1;
    for (std::size_t i = 0; i < n_layers; ++i) {
        m.layers.push_back({Matrix(cfg.horizon, cfg.lookback), std::vector<double>(cfg.horizon, 0.0)});
    }
    return m;
}

std::pair<std::vector<double>, std::vector<double>> moving_average_split(std::span<const double> window,
                                                                         std::size_t kernel) {
    if (kernel % 2 == 0) throw Error(Errc::KernelEven, "moving_average_split: kernel must be odd");
    if (kernel > window.size()) {
        throw Error(Errc::KernelTooLarge, "moving_average_split: kernel exceeds window length");
    }
    const std::size_t n = window.size();
    const auto pad = static_cast<std::ptrdiff_t>((kernel - 1) / 2);
    auto at = [&](std::ptrdiff_t i) {
        return window[static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(n) - 1))];
    };
    std::vector<double> trend(n), seasonal(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        const auto c = static_cast<std::ptrdiff_t>(i);
        for (std::ptrdiff_t d = -pad; d <= pad; ++d) acc += at(c + d);
        trend[i] = acc / static_cast<double>(kernel);
        seasonal[i] = window[i] - trend[i];
    }
    return {std::move(trend), std::move(seasonal)};
}

namespace {

// Layer inputs derived from raw windows, plus the additive output offset
// (NLinear's last value, zero otherwise).
struct Features {
    std::vector<Matrix> layers;
    std::vector<double> offset;
};

void check_model(const ForecastModel& model, std::size_t cols) {
    const std::size_t expect = model.kind == ModelKind::DLinear ? 2 : 1;
    if (model.layers.size() != expect) {
        throw Error(Errc::DimensionMismatch, "model has wrong number of layers");
    }
    if (cols != model.lookback) {
        throw Error(Errc::DimensionMismatch, "window length " + std::to_string(cols) +
                                                 " != lookback " + std::to_string(model.lookback));
    }
    for (const auto& layer : model.layers) {
        if (layer.weight.rows() != model.horizon || layer.weight.cols() != model.lookback ||
            layer.bias.size() != model.horizon) {
            throw Error(Errc::DimensionMismatch, "layer shape does not match model header");
        }
    }
}

Features make_features(const ForecastModel& model, const Matrix& inputs) {
    check_model(model, inputs.cols());
    const std::size_t rows = inputs.rows();
    const std::size_t L = inputs.cols();
    Features f;
    f.offset.assign(rows, 0.0);
    switch (model.kind) {
        case ModelKind::Linear:
            f.layers.push_back(inputs);
            break;
        case ModelKind::NLinear: {
            Matrix centred(rows, L);
            for (std::size_t r = 0; r < rows; ++r) {
                const double last = inputs(r, L - 1);
                f.offset[r] = last;
                for (std::size_t l = 0; l < L; ++l) centred(r, l) = inputs(r, l) - last;
            }
            f.layers.push_back(std::move(centred));
            break;
        }
        case ModelKind::DLinear: {
            Matrix trend(rows, L), seasonal(rows, L);
            for (std::size_t r = 0; r < rows; ++r) {
                auto [t, s] = moving_average_split(inputs.row(r), model.ma_kernel);
                std::copy(t.begin(), t.end(), trend.row(r).begin());
                std::copy(s.begin(), s.end(), seasonal.row(r).begin());
            }
            f.layers.push_back(std::move(trend));
            f.layers.push_back(std::move(seasonal));
            break;
        }
    }
    return f;
}

Matrix predict(const ForecastModel& model, const Features& f) {
    const std::size_t rows = f.offset.size();
    Matrix out(rows, model.horizon);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t h = 0; h < model.horizon; ++h) out(r, h) = f.offset[r];
    }
    // Offset first, then layers in order; forward() relies on the same order.
    for (std::size_t i = 0; i < model.layers.size(); ++i) {
        kernels::dense_forward_parallel(f.layers[i], model.layers[i].weight, model.layers[i].bias, out);
    }
    return out;
}

Features gather(const Features& f, std::span<const std::size_t> idx) {
    Features b;
    b.offset.reserve(idx.size());
    for (const auto& layer : f.layers) {
        Matrix m(idx.size(), layer.cols());
        for (std::size_t r = 0; r < idx.size(); ++r) {
            const auto src = layer.row(idx[r]);
            std::copy(src.begin(), src.end(), m.row(r).begin());
        }
        b.layers.push_back(std::move(m));
    }
    for (std::size_t i : idx) b.offset.push_back(f.offset[i]);
    return b;
}

Matrix gather_rows(const Matrix& m, std::span<const std::size_t> idx) {
    Matrix out(idx.size(), m.cols());
    for (std::size_t r = 0; r < idx.size(); ++r) {
        const auto src = m.row(idx[r]);
        std::copy(src.begin(), src.end(), out.row(r).begin());
    }
    return out;
}

double l1_norm(const ForecastModel& model) {
    double s = 0.0;
    for (const auto& layer : model.layers) {
        for (double w : layer.weight.flat()) s += std::abs(w);
    }
    return s;
}

// Mean squared error; overwrites `pred` with the scaled residual 2(y - t)/(rows*H)
// when `residual_out` is set.
double mse(Matrix& pred, const Matrix& targets, bool residual_out) {
    const double denom = static_cast<double>(pred.size());
    double s = 0.0;
    auto p = pred.flat();
    const auto t = targets.flat();
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double e = p[i] - t[i];
        s += e * e;
        if (residual_out) p[i] = 2.0 * e / denom;
    }
    return s / denom;
}

ModelGradient gradient_from_residual(const ForecastModel& model, const Features& f, const Matrix& g,
                                     double l1_weight) {
    ModelGradient grad;
    for (std::size_t i = 0; i < model.layers.size(); ++i) {
        DenseLayer d{Matrix(model.horizon, model.lookback), std::vector<double>(model.horizon, 0.0)};
        kernels::dense_gradient_parallel(g, f.layers[i], d.weight, d.bias);
        if (l1_weight > 0.0) {
            const auto w = model.layers[i].weight.flat();
            auto dw = d.weight.flat();
            for (std::size_t j = 0; j < w.size(); ++j) {
                dw[j] += l1_weight * static_cast<double>((w[j] > 0.0) - (w[j] < 0.0));
            }
        }
        grad.layers.push_back(std::move(d));
    }
    return grad;
}

void check_batch(const ForecastModel& model, const WindowSet& batch) {
    if (batch.rows() == 0) throw Error(Errc::EmptyBatch, "empty batch");
    if (batch.targets.cols() != model.horizon || batch.targets.rows() != batch.inputs.rows()) {
        throw Error(Errc::DimensionMismatch, "target shape does not match model horizon");
    }
}

bool params_finite(const ForecastModel& model) {
    for (const auto& layer : model.layers) {
        for (double w : layer.weight.flat()) {
            if (!std::isfinite(w)) return false;
        }
        for (double b : layer.bias) {
            if (!std::isfinite(b)) return false;
        }
    }
    return true;
}

}  // namespace

std::vector<double> forward(const ForecastModel& model, std::span<const double> window) {
    check_model(model, window.size());
    for (double v : window) {
        if (!std::isfinite(v)) throw Error(Errc::NonFinite, "forward: non-finite input");
    }
    Matrix x(1, window.size());
    std::copy(window.begin(), window.end(), x.row(0).begin());
    const Matrix y = predict(model, make_features(model, x));
    return {y.row(0).begin(), y.row(0).end()};
}

Matrix forward_batch(const ForecastModel& model, const Matrix& inputs) {
    return predict(model, make_features(model, inputs));
}

double loss(const ForecastModel& model, const WindowSet& batch, double l1_weight) {
    check_batch(model, batch);
    Matrix pred = forward_batch(model, batch.inputs);
    return mse(pred, batch.targets, false) + l1_weight * l1_norm(model);
}

ModelGradient loss_gradient(const ForecastModel& model, const WindowSet& batch, double l1_weight) {
    check_batch(model, batch);
    const Features f = make_features(model, batch.inputs);
    Matrix g = predict(model, f);
    mse(g, batch.targets, true);
    return gradient_from_residual(model, f, g, l1_weight);
}

TrainResult train(const ModelConfig& cfg, const WindowSet& windows) {
    return train_from(init_model(cfg), cfg, windows, cfg.epochs);
}

TrainResult train_from(ForecastModel model, const ModelConfig& cfg, const WindowSet& windows,
                       std::size_t epochs) {
    cfg.validate();
    check_batch(model, windows);
    const Features all = make_features(model, windows.inputs);
    const std::size_t n = windows.rows();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(cfg.seed);

    TrainResult result;
    for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t start = 0; start < n; start += cfg.batch_size) {
            const std::size_t len = std::min(cfg.batch_size, n - start);
            const std::span<const std::size_t> idx(order.data() + start, len);
            const Features f = gather(all, idx);
            const Matrix t = gather_rows(windows.targets, idx);
            Matrix g = predict(model, f);
            const double batch_loss = mse(g, t, true);
            if (!std::isfinite(batch_loss)) {
                throw Error(Errc::NonFiniteLoss, "train: loss diverged in epoch " + std::to_string(epoch + 1) +
                                                     " (learning rate too high?)");
            }
            const ModelGradient grad = gradient_from_residual(model, f, g, cfg.l1_weight);
            for (std::size_t i = 0; i < model.layers.size(); ++i) {
                auto w = model.layers[i].weight.flat();
                const auto dw = grad.layers[i].weight.flat();
                for (std::size_t j = 0; j < w.size(); ++j) w[j] -= cfg.learning_rate * dw[j];
                auto& b = model.layers[i].bias;
                for (std::size_t j = 0; j < b.size(); ++j) b[j] -= cfg.learning_rate * grad.layers[i].bias[j];
            }
        }
        Matrix pred = predict(model, all);
        const double epoch_loss = mse(pred, windows.targets, false) + cfg.l1_weight * l1_norm(model);
        if (!std::isfinite(epoch_loss) || !params_finite(model)) {
            throw Error(Errc::NonFiniteLoss, "train: loss diverged in epoch " + std::to_string(epoch + 1) +
                                                 " (learning rate too high?)");
        }
        result.epoch_loss.push_back(epoch_loss);
    }
    result.model = std::move(model);
    return result;
}

}  // namespace vmdl
