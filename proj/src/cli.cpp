#include "vmdlinear/cli.hpp"

#include "vmdlinear/error.hpp"
#include "vmdlinear/eval.hpp"
#include "vmdlinear/io.hpp"
#include "vmdlinear/kernels.hpp"
#include "vmdlinear/serialize.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>

namespace vmdl::cli {

namespace {

// Enum-valued flags are parsed as text and converted after parsing.
struct TextFlags {
    std::string model = "linear";
    std::string omega_init = "uniform";
    std::string boundary = "mirror";
    bool no_vmd = false;
};

struct Parser {
    CLI::App app{"vmdlinear: variational mode decomposition + linear forecasting toolkit", "vmdlinear"};
    RunConfig cfg;
    TextFlags text;
    CLI::App* decompose = nullptr;
    CLI::App* train = nullptr;
    CLI::App* predict = nullptr;
    CLI::App* bench = nullptr;

    Parser() {
        auto& v = cfg.pipeline.vmd;
        auto& m = cfg.pipeline.model;
        app.set_config("--config", "", "Flat key = value file; keys are flag names without dashes");
        app.fallthrough();
        app.require_subcommand(1);

        app.add_option("--k", v.modes, "Number of modes K")->capture_default_str();
        app.add_option("--alpha", v.alpha, "Bandwidth penalty alpha")->capture_default_str();
        app.add_option("--tau", v.tau, "Dual ascent step tau (0 disables)")->capture_default_str();
        app.add_option("--epsilon", v.epsilon, "Convergence threshold")->capture_default_str();
        app.add_option("--max-iters", v.max_iters, "VMD iteration cap")->capture_default_str();
        app.add_option("--omega-init", text.omega_init, "uniform | zero | random")
            ->check(CLI::IsMember({"uniform", "zero", "random"}))
            ->capture_default_str();
        app.add_option("--boundary", text.boundary, "mirror | none")
            ->check(CLI::IsMember({"mirror", "none"}))
            ->capture_default_str();
        app.add_flag("--dc-mode", v.dc_mode, "Pin the first centre frequency to 0");
        app.add_option("--context", cfg.pipeline.context_length,
                       "Samples decomposed at prediction time (0 = 4 x lookback)")
            ->capture_default_str();

        app.add_option("--lookback", m.lookback, "Lookback window L")->capture_default_str();
        app.add_option("--horizon", m.horizon, "Forecast horizon H")->capture_default_str();
        app.add_option("--model", text.model, "linear | nlinear | dlinear")
            ->check(CLI::IsMember({"linear", "nlinear", "dlinear"}))
            ->capture_default_str();
        app.add_option("--ma-kernel", m.ma_kernel, "DLinear moving-average kernel (odd)")->capture_default_str();
        app.add_option("--lr", m.learning_rate, "Learning rate")->capture_default_str();
        app.add_option("--l1", m.l1_weight, "L1 (LASSO) weight")->capture_default_str();
        app.add_option("--epochs", m.epochs, "Training epochs")->capture_default_str();
        app.add_option("--batch-size", m.batch_size, "Mini-batch size")->capture_default_str();
        app.add_flag("--no-vmd", text.no_vmd, "Train on the raw series (ablation)");

        app.add_option("--seed", cfg.seed, "Global seed")->capture_default_str();
        app.add_option("--jobs", cfg.jobs, "Worker threads (0 = all cores)")->capture_default_str();
        app.add_option("--out", cfg.out, "Output directory")->capture_default_str();

        decompose = app.add_subcommand("decompose", "Split one column into K modes");
        decompose->add_option("input", cfg.input, "Input CSV")->required();
        decompose->add_option("--column", cfg.column, "Column to decompose")->required();
        decompose->add_flag("--strict", cfg.strict, "Exit 3 if VMD does not converge");

        train = app.add_subcommand("train", "Fit a pipeline and write a bundle to --out");
        train->add_option("input", cfg.input, "Input CSV")->required();
        train->add_option("--columns", cfg.columns, "Value columns (default: all)")->delimiter(',');
        train->add_flag("--all-rows", cfg.all_rows, "Fit on every row instead of the train split");

        predict = app.add_subcommand("predict", "Forecast H steps with a saved bundle");
        predict->add_option("bundle", cfg.bundle, "Bundle directory written by train")->required();
        predict->add_option("input", cfg.input, "CSV holding the recent history")->required();
        predict->add_option("--origin", cfg.origin, "Forecast after the first N rows (default: all)");

        bench = app.add_subcommand("bench", "Run the with/without-VMD benchmark grid");
        bench->add_option("datasets", cfg.datasets, "CSV paths, optionally path:col1,col2")->required();
        bench->add_option("--models", cfg.models, "Model kinds in the grid")->delimiter(',');
        auto* only_raw = bench->add_flag("--no-vmd-only", cfg.no_vmd_only, "Run only the no-VMD half");
        bench->add_flag("--vmd-only", cfg.vmd_only, "Run only the VMD half")->excludes(only_raw);
    }

    void finish() {
        for (auto* sub : {decompose, train, predict, bench}) {
            if (sub->parsed()) cfg.command = sub->get_name();
        }
        cfg.pipeline.model.kind = parse_model_kind(text.model);
        cfg.pipeline.vmd.omega_init = parse_omega_init(text.omega_init);
        cfg.pipeline.vmd.boundary = parse_boundary(text.boundary);
        cfg.pipeline.use_vmd = !text.no_vmd;
        cfg.pipeline.vmd.seed = cfg.seed;
        cfg.pipeline.model.seed = cfg.seed;
        if (auto* opt = app.get_config_ptr(); opt && opt->count()) cfg.config_path = opt->as<std::string>();
    }
};

std::vector<const char*> argv_of(const std::vector<std::string>& args, std::vector<std::string>& storage) {
    storage.clear();
    storage.push_back("vmdlinear");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : storage) argv.push_back(s.c_str());
    return argv;
}

void write_manifest(const RunConfig& cfg, const std::vector<std::string>& args) {
    std::string text = "# vmdlinear run manifest\n# command: vmdlinear";
    for (const auto& a : args) text += " " + a;
    text += "\n# replay: vmdlinear " + cfg.command + " --config <this file> <positional arguments>\n";
    text += to_config_text(cfg);
    io::write_file_atomic(cfg.out / "manifest.conf", text);
}

void report_dropped(const io::CsvTable& table, const std::string& input, std::ostream& err) {
    if (table.dropped_rows) {
        err << "warning: " << input << ": dropped " << table.dropped_rows << " row(s) with non-finite values\n";
    }
}

int cmd_decompose(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const std::vector<std::string> cols{cfg.column};
    const auto table = io::read_csv(cfg.input, cols);
    report_dropped(table, cfg.input, err);
    const ModeSet modes = decompose(table.series().front(), cfg.pipeline.vmd);

    io::write_file_atomic(cfg.out / "modes.csv", io::modes_to_csv(modes, table.timestamps));
    io::write_file_atomic(cfg.out / "modes.json", io::modes_metadata_json(modes, cfg.pipeline.vmd));

    out << "omegas (cycles/sample):";
    for (double w : modes.omegas) out << ' ' << io::format_double(w);
    out << "\niterations: " << modes.iterations << (modes.converged ? " (converged)" : " (not converged)")
        << "\nreconstruction error: " << io::format_double(modes.reconstruction_error) << '\n';
    if (cfg.strict && !modes.converged) {
        err << "error: VMD did not converge within " << cfg.pipeline.vmd.max_iters << " iterations\n";
        return kNumericError;
    }
    return kOk;
}

int cmd_train(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto table = io::read_csv(cfg.input, cfg.columns);
    report_dropped(table, cfg.input, err);
    const std::size_t rows = std::min(table.rows(), kTrimRows);
    const std::size_t train_rows = cfg.all_rows ? rows : split_dataset(table.rows()).train_rows;
    const auto fitted = fit(table.series(0, train_rows), cfg.pipeline);
    io::save_bundle(cfg.out, fitted);
    out << "trained " << fitted.model_count() << " model(s) on " << train_rows << " rows x "
        << fitted.channels.size() << " channel(s); bundle written to " << cfg.out.string() << '\n';
    return kOk;
}

int cmd_predict(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto fitted = io::load_bundle(cfg.bundle);
    std::vector<std::string> names;
    for (const auto& ch : fitted.channels) names.push_back(ch.name);
    const auto table = io::read_csv(cfg.input, names);
    report_dropped(table, cfg.input, err);
    const std::size_t origin = cfg.origin.value_or(table.rows());
    if (origin > table.rows()) {
        throw Error(Errc::InvalidConfig, "--origin " + std::to_string(origin) + " exceeds " +
                                             std::to_string(table.rows()) + " rows");
    }
    const auto forecasts = vmdl::predict(fitted, table.series(0, origin));

    std::ostringstream csv;
    csv << "step,t";
    for (const auto& n : names) csv << ',' << n;
    csv << '\n';
    for (std::size_t h = 0; h < fitted.config.model.horizon; ++h) {
        csv << (h + 1) << ',';
        if (origin + h < table.rows()) csv << table.timestamps[origin + h];
        for (const auto& f : forecasts) csv << ',' << io::format_double(f[h]);
        csv << '\n';
    }
    io::write_file_atomic(cfg.out / "forecast.csv", csv.str());
    out << csv.str();
    return kOk;
}

int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    std::vector<DatasetSpec> specs;
    for (const auto& d : cfg.datasets) specs.push_back(parse_dataset_spec(d));
    BenchmarkGrid grid;
    grid.kinds.clear();
    for (const auto& m : cfg.models) grid.kinds.push_back(parse_model_kind(m));
    grid.without_vmd = !cfg.vmd_only;
    grid.with_vmd = !cfg.no_vmd_only;

    const BenchmarkReport report = run_benchmark(specs, grid, cfg.pipeline);
    const RenderedReport rendered = render_report(report);
    io::write_file_atomic(cfg.out / "report.txt", rendered.table);
    io::write_file_atomic(cfg.out / "report.csv", rendered.csv);
    for (const auto& [name, body] : rendered.plots) io::write_file_atomic(cfg.out / "plots" / name, body);
    out << rendered.table;
    return report.any_failed() ? kPartialFailure : kOk;
}

}  // namespace

RunConfig resolve(const std::vector<std::string>& args) {
    Parser p;
    std::vector<std::string> storage;
    auto argv = argv_of(args, storage);
    p.app.parse(static_cast<int>(argv.size()), argv.data());
    p.finish();
    return p.cfg;
}

std::string to_config_text(const RunConfig& cfg) {
    const auto& v = cfg.pipeline.vmd;
    const auto& m = cfg.pipeline.model;
    std::ostringstream s;
    s << "k = " << v.modes << '\n'
      << "alpha = " << io::format_double(v.alpha) << '\n'
      << "tau = " << io::format_double(v.tau) << '\n'
      << "epsilon = " << io::format_double(v.epsilon) << '\n'
      << "max-iters = " << v.max_iters << '\n'
      << "omega-init = " << to_string(v.omega_init) << '\n'
      << "boundary = " << to_string(v.boundary) << '\n'
      << "dc-mode = " << (v.dc_mode ? "true" : "false") << '\n'
      << "context = " << cfg.pipeline.context_length << '\n'
      << "lookback = " << m.lookback << '\n'
      << "horizon = " << m.horizon << '\n'
      << "model = " << to_string(m.kind) << '\n'
      << "ma-kernel = " << m.ma_kernel << '\n'
      << "lr = " << io::format_double(m.learning_rate) << '\n'
      << "l1 = " << io::format_double(m.l1_weight) << '\n'
      << "epochs = " << m.epochs << '\n'
      << "batch-size = " << m.batch_size << '\n'
      << "no-vmd = " << (cfg.pipeline.use_vmd ? "false" : "true") << '\n'
      << "seed = " << cfg.seed << '\n'
      << "jobs = " << cfg.jobs << '\n'
      << "out = " << cfg.out.string() << '\n';
    return s.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Parser p;
    std::vector<std::string> storage;
    auto argv = argv_of(args, storage);
    try {
        p.app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = p.app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        p.finish();
        const RunConfig& cfg = p.cfg;
        kernels::set_threads(cfg.jobs);
        cfg.pipeline.validate();
        std::filesystem::create_directories(cfg.out);
        write_manifest(cfg, args);
        if (cfg.command == "decompose") return cmd_decompose(cfg, out, err);
        if (cfg.command == "train") return cmd_train(cfg, out, err);
        if (cfg.command == "predict") return cmd_predict(cfg, out, err);
        if (cfg.command == "bench") return cmd_bench(cfg, out, err);
        err << "error: no subcommand\n";
        return kInputError;
    } catch (const Error& e) {
        err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        return is_numeric(e.code()) ? kNumericError : kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
}

}  // namespace vmdl::cli
