#pragma once

#include <string>
#include <vector>

#include "magnocool/schedule.hpp"
#include "magnocool/system.hpp"
#include "magnocool/trace.hpp"
#include "magnocool/trainer.hpp"

namespace magnocool {
namespace io {

/// 17 significant digits: enough for binary64 round-trip through text.
std::string format_g17(double v);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Generic numeric CSV with one header row. Parse errors carry line and
/// field context.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  int column(const std::string& name) const;  // -1 when absent
};

CsvTable parse_csv(const std::string& text);
std::string write_csv(const CsvTable& table);

/// Trace columns: t_periods, occ_<mode>..., quot_<mode>..., control values
/// (complex slots as <slot>_re,<slot>_im; real slots as <slot>), reward.
/// One row per control step.
std::string write_trace_csv(const EpisodeTrace& trace, const SystemSpec& sys);

/// Schedule columns: t_periods (interval start) then the control columns.
std::string write_schedule_csv(const ControlSchedule& schedule,
                               const SystemSpec& sys);
ControlSchedule parse_schedule_csv(const std::string& text, const SystemSpec& sys);

/// Learning-curve log: episode, net_reward, mean_reward, mean_quotient,
/// eval_score, alpha, q1_loss, q2_loss, actor_loss.
std::string write_curve_csv(const std::vector<rl::CurvePoint>& curve);

}  // namespace io
}  // namespace magnocool
