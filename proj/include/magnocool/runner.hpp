#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace magnocool {
namespace cli {

using nlohmann::json;

/// Each run_* validates its config, executes, writes every output plus a
/// manifest.json into out_dir, and returns the summary it also wrote as
/// summary.json. `schedule_file` feeds simulate's "file" schedule mode.
json run_simulate(const json& config, const std::string& out_dir,
                  const std::string& schedule_file = "");

json run_baseline(const json& config, const std::string& out_dir,
                  int workers = 1);

json run_train(const json& config, const std::string& out_dir,
               const std::string& teacher_checkpoint = "");

json run_evaluate(const json& config, const std::string& out_dir,
                  const std::string& checkpoint_path, bool force = false);

/// Converts traces/tables/curves into plot-ready files. With merge=true,
/// CSV inputs are stacked into one long-format table keyed by a source
/// column.
json run_export(const std::vector<std::string>& inputs, const std::string& format,
                const std::string& out_dir, bool merge = false);

/// Re-executes the run a manifest describes; outputs land in out_dir and
/// must be byte-identical to the original's.
json rerun_from_manifest(const std::string& manifest_path,
                         const std::string& out_dir);

}  // namespace cli
}  // namespace magnocool
