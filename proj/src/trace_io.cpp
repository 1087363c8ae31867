#include "magnocool/trace_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace magnocool {
namespace io {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for write: " + path);
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int CsvTable::column(const std::string& name) const {
  for (size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  return -1;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.push_back("");
    if (line_no == 1) {
      table.columns = fields;
      continue;
    }
    if (fields.size() != table.columns.size())
      throw std::runtime_error("csv parse: line " + std::to_string(line_no) +
                               " has " + std::to_string(fields.size()) +
                               " fields, header has " +
                               std::to_string(table.columns.size()));
    std::vector<double> row;
    row.reserve(fields.size());
    for (size_t i = 0; i < fields.size(); ++i) {
      char* end = nullptr;
      const double v = std::strtod(fields[i].c_str(), &end);
      if (end == fields[i].c_str() || *end != '\0')
        throw std::runtime_error("csv parse: line " + std::to_string(line_no) +
                                 ", field '" + table.columns[i] +
                                 "': not a number: '" + fields[i] + "'");
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  if (table.columns.empty()) throw std::runtime_error("csv parse: empty file");
  return table;
}

std::string write_csv(const CsvTable& table) {
  std::ostringstream out;
  for (size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ',';
    out << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_g17(row[i]);
    }
    out << '\n';
  }
  return out.str();
}

namespace {

std::vector<std::string> control_columns(const SystemSpec& sys) {
  std::vector<std::string> cols;
  for (int s = 0; s < sys.n_control_slots; ++s) {
    const std::string label =
        sys.slot_labels.empty() ? "u" + std::to_string(s) : sys.slot_labels[s];
    if (sys.slot_is_complex(s)) {
      cols.push_back(label + "_re");
      cols.push_back(label + "_im");
    } else {
      cols.push_back(label);
    }
  }
  return cols;
}

}  // namespace

std::string write_trace_csv(const EpisodeTrace& trace, const SystemSpec& sys) {
  std::ostringstream out;
  out << "t_periods";
  for (const auto& m : sys.modes) out << ",occ_" << m.label;
  for (const auto& m : sys.modes) out << ",quot_" << m.label;
  for (const auto& c : control_columns(sys)) out << ',' << c;
  out << ",reward\n";

  for (const auto& step : trace.steps) {
    out << format_g17(time_to_periods(step.time));
    for (int j = 0; j < sys.n_modes(); ++j)
      out << ',' << format_g17(step.occupancies(j));
    for (int j = 0; j < sys.n_modes(); ++j)
      out << ',' << format_g17(step.occupancies(j) / trace.n_thermal);
    for (int s = 0; s < sys.n_control_slots; ++s) {
      out << ',' << format_g17(step.controls(s).real());
      if (sys.slot_is_complex(s))
        out << ',' << format_g17(step.controls(s).imag());
    }
    out << ',' << format_g17(step.reward) << '\n';
  }
  return out.str();
}

std::string write_schedule_csv(const ControlSchedule& schedule,
                               const SystemSpec& sys) {
  std::ostringstream out;
  out << "t_periods";
  for (const auto& c : control_columns(sys)) out << ',' << c;
  out << '\n';
  for (int k = 0; k < schedule.n_steps(); ++k) {
    out << format_g17(time_to_periods(k * schedule.dt));
    for (int s = 0; s < sys.n_control_slots; ++s) {
      out << ',' << format_g17(schedule.values(s, k).real());
      if (sys.slot_is_complex(s))
        out << ',' << format_g17(schedule.values(s, k).imag());
    }
    out << '\n';
  }
  return out.str();
}

ControlSchedule parse_schedule_csv(const std::string& text, const SystemSpec& sys) {
  const CsvTable table = parse_csv(text);
  const auto expect = control_columns(sys);
  if (table.columns.size() != expect.size() + 1 || table.columns[0] != "t_periods")
    throw std::runtime_error("schedule parse: column mismatch for this system");
  for (size_t i = 0; i < expect.size(); ++i) {
    if (table.columns[i + 1] != expect[i])
      throw std::runtime_error("schedule parse: expected column '" + expect[i] +
                               "', found '" + table.columns[i + 1] + "'");
  }
  if (table.rows.size() < 2)
    throw std::runtime_error("schedule parse: need at least two rows to fix dt");

  const int n_steps = static_cast<int>(table.rows.size());
  const double dt0 = periods_to_time(table.rows[1][0] - table.rows[0][0]);
  ControlSchedule schedule;
  schedule.dt = dt0;
  schedule.values.resize(sys.n_control_slots, n_steps);
  for (int k = 0; k < n_steps; ++k) {
    if (k > 0) {
      const double dt =
          periods_to_time(table.rows[k][0] - table.rows[k - 1][0]);
      if (std::abs(dt - dt0) > 1e-9 * std::max(1.0, std::abs(dt0)))
        throw std::runtime_error("schedule parse: non-uniform time grid at row " +
                                 std::to_string(k + 2));
    }
    int col = 1;
    for (int s = 0; s < sys.n_control_slots; ++s) {
      const double re = table.rows[k][col++];
      const double im = sys.slot_is_complex(s) ? table.rows[k][col++] : 0.0;
      schedule.values(s, k) = Complex(re, im);
    }
  }
  schedule.validate();
  return schedule;
}

std::string write_curve_csv(const std::vector<rl::CurvePoint>& curve) {
  std::ostringstream out;
  out << "episode,net_reward,mean_reward,mean_quotient,eval_score,alpha,"
         "q1_loss,q2_loss,actor_loss\n";
  for (const auto& p : curve) {
    out << p.episode << ',' << format_g17(p.net_reward) << ','
        << format_g17(p.mean_reward) << ',' << format_g17(p.mean_quotient) << ','
        << format_g17(p.eval_score) << ',' << format_g17(p.alpha) << ','
        << format_g17(p.q1_loss) << ',' << format_g17(p.q2_loss) << ','
        << format_g17(p.actor_loss) << '\n';
  }
  return out.str();
}

}  // namespace io
}  // namespace magnocool
