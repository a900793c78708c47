#pragma once

#include "vmdlinear/pipeline.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace vmdl::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 2;
inline constexpr int kNumericError = 3;
inline constexpr int kPartialFailure = 4;

// Fully resolved settings for one invocation. Precedence is
// defaults < --config file < command-line flags.
struct RunConfig {
    std::string command;  // decompose | train | predict | bench

    PipelineConfig pipeline;
    std::uint64_t seed = 0;
    int jobs = 0;  // 0 = all available cores
    std::filesystem::path out = "out";
    std::string config_path;

    // decompose
    std::string input;
    std::string column;
    bool strict = false;

    // train / predict
    std::vector<std::string> columns;
    bool all_rows = false;
    std::string bundle;
    std::optional<std::size_t> origin;

    // bench
    std::vector<std::string> datasets;
    std::vector<std::string> models{"linear", "dlinear", "nlinear"};
    bool no_vmd_only = false;
    bool vmd_only = false;
};

/// Parses arguments (without the program name) into a RunConfig without
/// running anything. Throws CLI11 parse errors.
RunConfig resolve(const std::vector<std::string>& args);

/// Flat key = value text accepted by --config, echoing every resolved field.
std::string to_config_text(const RunConfig& cfg);

/// Entry point used by main(); returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vmdl::cli
