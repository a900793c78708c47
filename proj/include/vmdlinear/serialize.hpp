#pragma once

// Text formats for trained state.
//
// Model dump (one file per model):
//
//   vmdlinear-model 1
//   kind <linear|nlinear|dlinear>
//   lookback <L>
//   horizon <H>
//   channels <C>
//   ma_kernel <k>
//   layers <n>
//   layer <name>            name is "main", or "trend" / "seasonal" for DLinear
//   w <L values>            repeated H times, one weight row per line
//   b <H values>
//   ...                     next layer
//   scaler <id>             rest of line, may contain spaces
//   end
//
// Numbers use the shortest decimal form that round-trips, so a reload is
// bit-exact.
//
// Pipeline bundle (a directory):
//   pipeline.conf                key = value, resolved pipeline config
//   channel_<c>.scaler           name / mean / std / omegas
//   channel_<c>_model_<k>.txt    model dump per mode

#include "vmdlinear/linear_models.hpp"
#include "vmdlinear/pipeline.hpp"
#include "vmdlinear/vmd.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace vmdl::io {

std::string model_to_text(const ForecastModel& model);
ForecastModel model_from_text(std::string_view text);

/// Flat key = value rendering of a pipeline config; keys mirror CLI flag names.
std::string pipeline_config_to_text(const PipelineConfig& cfg);
PipelineConfig pipeline_config_from_text(std::string_view text);

/// key = value lines; '#' starts a comment.
std::map<std::string, std::string> parse_key_values(std::string_view text);

void save_bundle(const std::filesystem::path& dir, const FittedPipeline& fitted);
FittedPipeline load_bundle(const std::filesystem::path& dir);

/// CSV with columns t, mode_1..mode_K. `timestamps` labels the rows when it
/// has one entry per sample; otherwise rows are numbered from 0.
std::string modes_to_csv(const ModeSet& modes, const std::vector<std::string>& timestamps = {});

/// JSON sidecar: omegas, iterations, converged, final delta,
/// reconstruction error and the VMD config used.
std::string modes_metadata_json(const ModeSet& modes, const VmdConfig& cfg);

}  // namespace vmdl::io
