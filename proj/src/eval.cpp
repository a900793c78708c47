#include "vmdlinear/eval.hpp"

#include "vmdlinear/error.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

namespace vmdl {

double rmse(std::span<const double> pred, std::span<const double> truth) {
    if (pred.empty() || truth.empty()) throw Error(Errc::EmptyInput, "rmse: empty input");
    if (pred.size() != truth.size()) {
        throw Error(Errc::LengthMismatch, "rmse: lengths " + std::to_string(pred.size()) + " and " +
                                              std::to_string(truth.size()) + " differ");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (!std::isfinite(pred[i]) || !std::isfinite(truth[i])) {
            throw Error(Errc::NonFinite, "rmse: non-finite value");
        }
        const double e = pred[i] - truth[i];
        s += e * e;
    }
    return std::sqrt(s / static_cast<double>(pred.size()));
}

DatasetSpec parse_dataset_spec(std::string_view spec) {
    DatasetSpec d;
    std::string_view path = spec;
    // A colon followed by a column list; ignore drive-letter style "C:\".
    if (const auto colon = spec.rfind(':'); colon != std::string_view::npos && colon > 1) {
        path = spec.substr(0, colon);
        for (auto& c : io::split(spec.substr(colon + 1), ',')) {
            if (!c.empty()) d.columns.push_back(c);
        }
    }
    d.path = std::filesystem::path(path);
    d.name = d.path.stem().string();
    return d;
}

std::vector<ModelAverage> BenchmarkReport::averages() const {
    std::vector<ModelAverage> out;
    for (const auto& r : rows) {
        auto it = std::find_if(out.begin(), out.end(), [&](const ModelAverage& a) {
            return a.kind == r.model_kind && a.use_vmd == r.use_vmd;
        });
        if (it == out.end()) {
            out.push_back({r.model_kind, r.use_vmd, 0.0, 0.0, 0, 0});
            it = out.end() - 1;
        }
        if (r.ok) {
            it->rmse += r.rmse;
            it->rmse_scaled += r.rmse_scaled;
            ++it->count;
        } else {
            ++it->failed;
        }
    }
    for (auto& a : out) {
        if (a.count) {
            a.rmse /= static_cast<double>(a.count);
            a.rmse_scaled /= static_cast<double>(a.count);
        }
    }
    return out;
}

bool BenchmarkReport::any_failed() const {
    return std::any_of(rows.begin(), rows.end(), [](const EvalResult& r) { return !r.ok; });
}

EvalResult evaluate(const Dataset& data, const SplitResult& split, const PipelineConfig& cfg) {
    const auto started = std::chrono::steady_clock::now();
    EvalResult res;
    res.dataset = data.name;
    res.model_kind = cfg.model.kind;
    res.use_vmd = cfg.use_vmd;

    const std::size_t total = split.train_rows + split.test_rows;
    const std::size_t H = cfg.model.horizon;
    std::vector<TimeSeries> train;
    for (const auto& ch : data.channels) {
        if (ch.size() < total) throw Error(Errc::TooShort, "evaluate: channel shorter than split");
        train.push_back(ch.slice(0, split.train_rows));
    }
    if (split.test_rows < H) {
        throw Error(Errc::TooShort, "evaluate: test partition (" + std::to_string(split.test_rows) +
                                        " rows) shorter than horizon " + std::to_string(H));
    }

    const FittedPipeline fitted = fit(train, cfg);
    const std::size_t needed = cfg.use_vmd ? cfg.effective_context() : cfg.model.lookback;
    if (split.train_rows < needed) {
        throw Error(Errc::ContextTooShort, "evaluate: train partition shorter than the forecast context");
    }

    res.traces.resize(data.channels.size());
    for (std::size_t c = 0; c < data.channels.size(); ++c) res.traces[c].channel = fitted.channels[c].name;

    std::vector<double> pred, truth, pred_scaled, truth_scaled;
    for (std::size_t origin = split.train_rows; origin + H <= total; origin += H) {
        std::vector<TimeSeries> recent;
        for (const auto& ch : data.channels) recent.push_back(ch.slice(origin - needed, needed));
        const auto forecasts = predict_detailed(fitted, recent);
        for (std::size_t c = 0; c < data.channels.size(); ++c) {
            const auto& scaler = fitted.channels[c].scaler;
            auto& trace = res.traces[c];
            trace.mode_forecasts.resize(forecasts[c].mode_forecasts.size());
            for (std::size_t h = 0; h < H; ++h) {
                const double p = forecasts[c].forecast[h];
                const double t = data.channels[c][origin + h];
                pred.push_back(p);
                truth.push_back(t);
                pred_scaled.push_back((p - scaler.mean) / scaler.std);
                truth_scaled.push_back((t - scaler.mean) / scaler.std);
                trace.t.push_back(origin + h);
                trace.truth.push_back(t);
                trace.forecast.push_back(p);
                for (std::size_t k = 0; k < forecasts[c].mode_forecasts.size(); ++k) {
                    trace.mode_forecasts[k].push_back(forecasts[c].mode_forecasts[k][h]);
                }
            }
        }
    }
    res.rmse = rmse(pred, truth);
    res.rmse_scaled = rmse(pred_scaled, truth_scaled);
    res.n_predictions = pred.size();
    res.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                           started)
                         .count();
    return res;
}

namespace {

struct Cell {
    std::size_t dataset;
    ModelKind kind;
    bool use_vmd;
};

EvalResult failed_cell(const std::string& dataset, ModelKind kind, bool use_vmd, std::string reason) {
    EvalResult r;
    r.dataset = dataset;
    r.model_kind = kind;
    r.use_vmd = use_vmd;
    r.ok = false;
    r.failure = std::move(reason);
    return r;
}

std::string describe(const std::exception& e) {
    if (const auto* err = dynamic_cast<const Error*>(&e)) {
        return std::string(to_string(err->code())) + ": " + err->what();
    }
    return e.what();
}

}  // namespace

BenchmarkReport run_benchmark(std::span<const Dataset> datasets, const BenchmarkGrid& grid,
                              const PipelineConfig& defaults) {
    std::vector<Cell> cells;
    for (std::size_t d = 0; d < datasets.size(); ++d) {
        for (ModelKind kind : grid.kinds) {
            if (grid.without_vmd) cells.push_back({d, kind, false});
            if (grid.with_vmd) cells.push_back({d, kind, true});
        }
    }

    BenchmarkReport report;
    report.rows.resize(cells.size());
    const auto n = static_cast<std::ptrdiff_t>(cells.size());
#pragma omp parallel for schedule(dynamic) if (cells.size() > 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const Cell& cell = cells[static_cast<std::size_t>(i)];
        const Dataset& data = datasets[cell.dataset];
        try {
            if (data.channels.empty()) throw Error(Errc::EmptyInput, "dataset has no channels");
            const SplitResult split = split_dataset(data.channels.front().size());
            PipelineConfig cfg = defaults;
            cfg.model.kind = cell.kind;
            cfg.use_vmd = cell.use_vmd;
            report.rows[static_cast<std::size_t>(i)] = evaluate(data, split, cfg);
        } catch (const std::exception& e) {
            report.rows[static_cast<std::size_t>(i)] = failed_cell(data.name, cell.kind, cell.use_vmd, describe(e));
        }
    }
    return report;
}

BenchmarkReport run_benchmark(std::span<const DatasetSpec> datasets, const BenchmarkGrid& grid,
                              const PipelineConfig& defaults) {
    std::vector<Dataset> loaded;
    std::vector<std::optional<std::string>> load_errors;
    for (const auto& spec : datasets) {
        Dataset d;
        d.name = spec.name;
        try {
            const auto table = io::read_csv(spec.path, spec.columns);
            const std::size_t rows = std::min(table.rows(), kTrimRows);
            d.channels = table.series(0, rows);
            load_errors.emplace_back();
        } catch (const std::exception& e) {
            load_errors.emplace_back(describe(e));
        }
        loaded.push_back(std::move(d));
    }
    BenchmarkReport report = run_benchmark(loaded, grid, defaults);
    for (auto& row : report.rows) {
        for (std::size_t d = 0; d < loaded.size(); ++d) {
            if (row.dataset == loaded[d].name && load_errors[d]) {
                row = failed_cell(row.dataset, row.model_kind, row.use_vmd, *load_errors[d]);
            }
        }
    }
    return report;
}

namespace {

std::string fixed(double v, int digits = 4) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
}

std::string pad(const std::string& s, std::size_t width, bool left = false) {
    if (s.size() >= width) return s;
    return left ? s + std::string(width - s.size(), ' ') : std::string(width - s.size(), ' ') + s;
}

std::string model_title(ModelKind k) {
    switch (k) {
        case ModelKind::Linear: return "Linear";
        case ModelKind::NLinear: return "NLinear";
        case ModelKind::DLinear: return "DLinear";
    }
    return "?";
}

// Cell text for one metric of one row.
std::string cell_text(const EvalResult* r, bool scaled) {
    if (!r) return "-";
    if (!r->ok) return "FAIL";
    return fixed(scaled ? r->rmse_scaled : r->rmse);
}

void render_table(std::ostringstream& out, const BenchmarkReport& report, bool scaled,
                  const std::vector<std::string>& datasets, const std::vector<ModelKind>& kinds) {
    constexpr std::size_t kName = 18;
    constexpr std::size_t kCol = 10;
    auto find = [&](const std::string& d, ModelKind k, bool vmd) -> const EvalResult* {
        for (const auto& r : report.rows) {
            if (r.dataset == d && r.model_kind == k && r.use_vmd == vmd) return &r;
        }
        return nullptr;
    };

    out << (scaled ? "RMSE (standardised units)\n" : "RMSE (original units)\n");
    std::string head1 = pad("Dataset", kName, true);
    std::string head2 = std::string(kName, ' ');
    for (ModelKind k : kinds) {
        const std::string t = model_title(k);
        const std::size_t w = 2 * kCol + 1;
        const std::size_t left = (w - t.size()) / 2;
        head1 += " |" + std::string(left, ' ') + t + std::string(w - t.size() - left, ' ');
        head2 += " |" + pad("No VMD", kCol) + " " + pad("VMD", kCol);
    }
    std::string rule(kName, '-');
    for (std::size_t i = 0; i < kinds.size(); ++i) rule += "-+" + std::string(2 * kCol + 1, '-');
    out << head1 << '\n' << head2 << '\n' << rule << '\n';
    for (const auto& d : datasets) {
        std::string line = pad(d, kName, true);
        for (ModelKind k : kinds) {
            line += " |" + pad(cell_text(find(d, k, false), scaled), kCol) + " " +
                    pad(cell_text(find(d, k, true), scaled), kCol);
        }
        out << line << '\n';
    }
    out << rule << '\n';
    const auto avgs = report.averages();
    std::string line = pad("Average", kName, true);
    for (ModelKind k : kinds) {
        line += " |";
        for (bool vmd : {false, true}) {
            std::string text = "-";
            for (const auto& a : avgs) {
                if (a.kind == k && a.use_vmd == vmd && a.count) text = fixed(scaled ? a.rmse_scaled : a.rmse);
            }
            line += pad(text, kCol) + (vmd ? "" : " ");
        }
    }
    out << line << "\n\n";
}

}  // namespace

RenderedReport render_report(const BenchmarkReport& report) {
    RenderedReport out;

    std::vector<std::string> datasets;
    std::vector<ModelKind> kinds;
    for (const auto& r : report.rows) {
        if (std::find(datasets.begin(), datasets.end(), r.dataset) == datasets.end()) datasets.push_back(r.dataset);
        if (std::find(kinds.begin(), kinds.end(), r.model_kind) == kinds.end()) kinds.push_back(r.model_kind);
    }

    std::ostringstream table;
    render_table(table, report, false, datasets, kinds);
    render_table(table, report, true, datasets, kinds);
    bool footer = false;
    for (const auto& r : report.rows) {
        if (r.ok) continue;
        if (!footer) {
            table << "Failed cells (excluded from averages):\n";
            footer = true;
        }
        table << "  " << r.dataset << " / " << model_title(r.model_kind) << " / "
              << (r.use_vmd ? "VMD" : "No VMD") << ": FAIL(" << r.failure << ")\n";
    }
    out.table = table.str();

    std::ostringstream csv;
    csv << "dataset,model,use_vmd,status,rmse,rmse_scaled,n_predictions,runtime_ms\n";
    auto quote = [](std::string s) {
        std::replace(s.begin(), s.end(), '"', '\'');
        return "\"" + s + "\"";
    };
    for (const auto& r : report.rows) {
        csv << r.dataset << ',' << to_string(r.model_kind) << ',' << (r.use_vmd ? "true" : "false") << ','
            << (r.ok ? std::string("ok") : quote("FAIL(" + r.failure + ")")) << ','
            << (r.ok ? io::format_double(r.rmse) : "") << ',' << (r.ok ? io::format_double(r.rmse_scaled) : "")
            << ',' << r.n_predictions << ',' << r.runtime_ms << '\n';
    }
    for (const auto& a : report.averages()) {
        csv << "Average," << to_string(a.kind) << ',' << (a.use_vmd ? "true" : "false") << ','
            << (a.failed ? "partial" : "ok") << ',' << (a.count ? io::format_double(a.rmse) : "") << ','
            << (a.count ? io::format_double(a.rmse_scaled) : "") << ',' << a.count << ",\n";
    }
    out.csv = csv.str();

    // Plot data: both arms of each (dataset, model) side by side.
    for (const auto& d : datasets) {
        for (ModelKind k : kinds) {
            const EvalResult* arms[2] = {nullptr, nullptr};
            for (const auto& r : report.rows) {
                if (r.dataset == d && r.model_kind == k && r.ok) arms[r.use_vmd ? 1 : 0] = &r;
            }
            const EvalResult* base = arms[0] ? arms[0] : arms[1];
            if (!base) continue;
            std::size_t modes = 0;
            if (arms[1]) {
                for (const auto& tr : arms[1]->traces) modes = std::max(modes, tr.mode_forecasts.size());
            }
            std::ostringstream p;
            p << "t,channel,truth,forecast_no_vmd,forecast_vmd";
            for (std::size_t m = 0; m < modes; ++m) p << ",mode_" << (m + 1) << "_scaled";
            p << '\n';
            for (std::size_t c = 0; c < base->traces.size(); ++c) {
                const auto& tr = base->traces[c];
                for (std::size_t i = 0; i < tr.t.size(); ++i) {
                    p << tr.t[i] << ',' << tr.channel << ',' << io::format_double(tr.truth[i]) << ',';
                    if (arms[0]) p << io::format_double(arms[0]->traces[c].forecast[i]);
                    p << ',';
                    if (arms[1]) p << io::format_double(arms[1]->traces[c].forecast[i]);
                    for (std::size_t m = 0; m < modes; ++m) {
                        p << ',';
                        if (arms[1] && m < arms[1]->traces[c].mode_forecasts.size()) {
                            p << io::format_double(arms[1]->traces[c].mode_forecasts[m][i]);
                        }
                    }
                    p << '\n';
                }
            }
            out.plots.emplace_back(d + "_" + std::string(to_string(k)) + ".csv", p.str());
        }
    }
    return out;
}

}  // namespace vmdl
