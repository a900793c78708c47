#include "vmdlinear/serialize.hpp"

#include "vmdlinear/error.hpp"
#include "vmdlinear/io.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <sstream>

namespace vmdl::io {

namespace {

constexpr std::string_view kModelMagic = "vmdlinear-model 1";

std::string join(std::span<const double> values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ' ';
        s += format_double(values[i]);
    }
    return s;
}

std::size_t parse_size(std::string_view s) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw Error(Errc::Parse, "bad integer '" + std::string(s) + "'");
    }
    return v;
}

bool parse_bool(std::string_view s) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw Error(Errc::Parse, "bad boolean '" + std::string(s) + "'");
}

// Sequential reader over whitespace-separated lines.
class LineReader {
public:
    explicit LineReader(std::string_view text) : in_{std::string(text)} {}

    // Next line split into the leading keyword and the remainder.
    std::pair<std::string, std::string> next() {
        std::string line;
        do {
            if (!std::getline(in_, line)) throw Error(Errc::Parse, "model dump truncated");
            if (!line.empty() && line.back() == '\r') line.pop_back();
        } while (line.empty());
        const auto sp = line.find(' ');
        if (sp == std::string::npos) return {line, {}};
        return {line.substr(0, sp), line.substr(sp + 1)};
    }

    std::string expect(std::string_view key) {
        auto [k, rest] = next();
        if (k != key) throw Error(Errc::Parse, "expected '" + std::string(key) + "', found '" + k + "'");
        return rest;
    }

private:
    std::istringstream in_;
};

std::vector<double> parse_values(const std::string& rest, std::size_t expected) {
    std::vector<double> out;
    std::istringstream ss(rest);
    std::string tok;
    while (ss >> tok) out.push_back(parse_double(tok));
    if (out.size() != expected) {
        throw Error(Errc::Parse, "expected " + std::to_string(expected) + " values, found " +
                                     std::to_string(out.size()));
    }
    return out;
}

std::vector<std::string> layer_names(ModelKind kind) {
    if (kind == ModelKind::DLinear) return {"trend", "seasonal"};
    return {"main"};
}

const std::string& require(const std::map<std::string, std::string>& kv, const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw Error(Errc::Parse, "missing key '" + key + "'");
    return it->second;
}

}  // namespace

std::string model_to_text(const ForecastModel& model) {
    std::ostringstream out;
    out << kModelMagic << '\n'
        << "kind " << to_string(model.kind) << '\n'
        << "lookback " << model.lookback << '\n'
        << "horizon " << model.horizon << '\n'
        << "channels " << model.channels << '\n'
        << "ma_kernel " << model.ma_kernel << '\n'
        << "layers " << model.layers.size() << '\n';
    const auto names = layer_names(model.kind);
    for (std::size_t i = 0; i < model.layers.size(); ++i) {
        const auto& layer = model.layers[i];
        out << "layer " << (i < names.size() ? names[i] : "extra") << '\n';
        for (std::size_t h = 0; h < layer.weight.rows(); ++h) out << "w " << join(layer.weight.row(h)) << '\n';
        out << "b " << join(layer.bias) << '\n';
    }
    out << "scaler " << model.scaler_id << '\n' << "end\n";
    return out.str();
}

ForecastModel model_from_text(std::string_view text) {
    LineReader r(text);
    {
        auto [k, rest] = r.next();
        if (k + " " + rest != kModelMagic) throw Error(Errc::Parse, "not a vmdlinear model dump");
    }
    ForecastModel m;
    m.kind = parse_model_kind(r.expect("kind"));
    m.lookback = parse_size(r.expect("lookback"));
    m.horizon = parse_size(r.expect("horizon"));
    m.channels = parse_size(r.expect("channels"));
    m.ma_kernel = parse_size(r.expect("ma_kernel"));
    const std::size_t n_layers = parse_size(r.expect("layers"));
    if (n_layers != layer_names(m.kind).size()) {
        throw Error(Errc::Parse, "layer count does not match model kind");
    }
    for (std::size_t i = 0; i < n_layers; ++i) {
        r.expect("layer");
        DenseLayer layer{Matrix(m.horizon, m.lookback), {}};
        for (std::size_t h = 0; h < m.horizon; ++h) {
            const auto row = parse_values(r.expect("w"), m.lookback);
            std::copy(row.begin(), row.end(), layer.weight.row(h).begin());
        }
        layer.bias = parse_values(r.expect("b"), m.horizon);
        m.layers.push_back(std::move(layer));
    }
    m.scaler_id = r.expect("scaler");
    r.expect("end");
    return m;
}

std::map<std::string, std::string> parse_key_values(std::string_view text) {
    std::map<std::string, std::string> kv;
    for (auto line : split(text, '\n')) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        kv[strip(line.substr(0, eq))] = strip(line.substr(eq + 1));
    }
    return kv;
}

std::string pipeline_config_to_text(const PipelineConfig& cfg) {
    std::ostringstream out;
    const auto& v = cfg.vmd;
    const auto& m = cfg.model;
    out << "use-vmd = " << (cfg.use_vmd ? "true" : "false") << '\n'
        << "context = " << cfg.context_length << '\n'
        << "k = " << v.modes << '\n'
        << "alpha = " << format_double(v.alpha) << '\n'
        << "tau = " << format_double(v.tau) << '\n'
        << "epsilon = " << format_double(v.epsilon) << '\n'
        << "max-iters = " << v.max_iters << '\n'
        << "omega-init = " << to_string(v.omega_init) << '\n'
        << "vmd-seed = " << v.seed << '\n'
        << "boundary = " << to_string(v.boundary) << '\n'
        << "dc-mode = " << (v.dc_mode ? "true" : "false") << '\n'
        << "model = " << to_string(m.kind) << '\n'
        << "lookback = " << m.lookback << '\n'
        << "horizon = " << m.horizon << '\n'
        << "channels = " << m.channels << '\n'
        << "ma-kernel = " << m.ma_kernel << '\n'
        << "lr = " << format_double(m.learning_rate) << '\n'
        << "l1 = " << format_double(m.l1_weight) << '\n'
        << "epochs = " << m.epochs << '\n'
        << "batch-size = " << m.batch_size << '\n'
        << "seed = " << m.seed << '\n';
    return out.str();
}

PipelineConfig pipeline_config_from_text(std::string_view text) {
    const auto kv = parse_key_values(text);
    PipelineConfig cfg;
    cfg.use_vmd = parse_bool(require(kv, "use-vmd"));
    cfg.context_length = parse_size(require(kv, "context"));
    cfg.vmd.modes = parse_size(require(kv, "k"));
    cfg.vmd.alpha = parse_double(require(kv, "alpha"));
    cfg.vmd.tau = parse_double(require(kv, "tau"));
    cfg.vmd.epsilon = parse_double(require(kv, "epsilon"));
    cfg.vmd.max_iters = parse_size(require(kv, "max-iters"));
    cfg.vmd.omega_init = parse_omega_init(require(kv, "omega-init"));
    cfg.vmd.seed = parse_size(require(kv, "vmd-seed"));
    cfg.vmd.boundary = parse_boundary(require(kv, "boundary"));
    cfg.vmd.dc_mode = parse_bool(require(kv, "dc-mode"));
    cfg.model.kind = parse_model_kind(require(kv, "model"));
    cfg.model.lookback = parse_size(require(kv, "lookback"));
    cfg.model.horizon = parse_size(require(kv, "horizon"));
    cfg.model.channels = parse_size(require(kv, "channels"));
    cfg.model.ma_kernel = parse_size(require(kv, "ma-kernel"));
    cfg.model.learning_rate = parse_double(require(kv, "lr"));
    cfg.model.l1_weight = parse_double(require(kv, "l1"));
    cfg.model.epochs = parse_size(require(kv, "epochs"));
    cfg.model.batch_size = parse_size(require(kv, "batch-size"));
    cfg.model.seed = parse_size(require(kv, "seed"));
    return cfg;
}

void save_bundle(const std::filesystem::path& dir, const FittedPipeline& fitted) {
    std::filesystem::create_directories(dir);
    std::string conf = pipeline_config_to_text(fitted.config);
    conf += "channel-count = " + std::to_string(fitted.channels.size()) + '\n';
    write_file_atomic(dir / "pipeline.conf", conf);
    for (std::size_t c = 0; c < fitted.channels.size(); ++c) {
        const auto& ch = fitted.channels[c];
        std::string s = "name = " + ch.name + '\n' + "mean = " + format_double(ch.scaler.mean) + '\n' +
                        "std = " + format_double(ch.scaler.std) + '\n' + "omegas = " + join(ch.omegas) + '\n' +
                        "models = " + std::to_string(ch.models.size()) + '\n';
        write_file_atomic(dir / ("channel_" + std::to_string(c) + ".scaler"), s);
        for (std::size_t k = 0; k < ch.models.size(); ++k) {
            write_file_atomic(dir / ("channel_" + std::to_string(c) + "_model_" + std::to_string(k) + ".txt"),
                              model_to_text(ch.models[k]));
        }
    }
}

FittedPipeline load_bundle(const std::filesystem::path& dir) {
    const std::string conf = read_file(dir / "pipeline.conf");
    FittedPipeline fitted;
    fitted.config = pipeline_config_from_text(conf);
    const std::size_t channels = parse_size(require(parse_key_values(conf), "channel-count"));
    for (std::size_t c = 0; c < channels; ++c) {
        const auto kv = parse_key_values(read_file(dir / ("channel_" + std::to_string(c) + ".scaler")));
        ChannelModels ch;
        ch.name = require(kv, "name");
        ch.scaler = {parse_double(require(kv, "mean")), parse_double(require(kv, "std"))};
        std::istringstream om(require(kv, "omegas"));
        for (std::string tok; om >> tok;) ch.omegas.push_back(parse_double(tok));
        const std::size_t models = parse_size(require(kv, "models"));
        for (std::size_t k = 0; k < models; ++k) {
            ch.models.push_back(model_from_text(
                read_file(dir / ("channel_" + std::to_string(c) + "_model_" + std::to_string(k) + ".txt"))));
        }
        fitted.channels.push_back(std::move(ch));
    }
    return fitted;
}

std::string modes_to_csv(const ModeSet& modes, const std::vector<std::string>& timestamps) {
    std::ostringstream out;
    out << 't';
    for (std::size_t k = 0; k < modes.mode_count(); ++k) out << ",mode_" << (k + 1);
    out << '\n';
    const std::size_t n = modes.modes.empty() ? 0 : modes.modes.front().size();
    const bool labelled = timestamps.size() == n;
    for (std::size_t i = 0; i < n; ++i) {
        if (labelled) {
            out << timestamps[i];
        } else {
            out << i;
        }
        for (const auto& m : modes.modes) out << ',' << format_double(m[i]);
        out << '\n';
    }
    return out.str();
}

std::string modes_metadata_json(const ModeSet& modes, const VmdConfig& cfg) {
    nlohmann::ordered_json j;
    j["omegas"] = modes.omegas;
    j["iterations"] = modes.iterations;
    j["converged"] = modes.converged;
    j["final_delta"] = modes.final_delta;
    j["reconstruction_error"] = modes.reconstruction_error;
    j["config"] = {
        {"k", cfg.modes},
        {"alpha", cfg.alpha},
        {"tau", cfg.tau},
        {"epsilon", cfg.epsilon},
        {"max_iters", cfg.max_iters},
        {"omega_init", std::string(to_string(cfg.omega_init))},
        {"seed", cfg.seed},
        {"boundary", std::string(to_string(cfg.boundary))},
        {"dc_mode", cfg.dc_mode},
        {"frequency_unit", "cycles/sample"},
    };
    return j.dump(2) + '\n';
}

}  // namespace vmdl::io
