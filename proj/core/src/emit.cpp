#include <charconv>
#include <fstream>
#include <system_error>

#include <json.hpp>

#include "spinbatt/runner.hpp"

namespace spinbatt {

const char* engine_version() {
#ifdef SPINBATT_VERSION
  return SPINBATT_VERSION;
#else
  return "unknown";
#endif
}

namespace {

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 10);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

}  // namespace

std::string format_csv(const ResultTable& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_double(row[c]);
    }
    out += '\n';
  }
  return out;
}

void emit_results(const ScenarioRun& run, const ScenarioConfig& cfg,
                  const std::filesystem::path& out_dir, double wall_seconds,
                  int workers) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory '" +
                             out_dir.string() + "': " + ec.message());
  }

  const auto csv_path = out_dir / "results.csv";
  {
    std::ofstream csv(csv_path, std::ios::binary | std::ios::trunc);
    csv << format_csv(run.table);
    if (!csv.good()) {
      throw std::runtime_error("cannot write '" + csv_path.string() + "'");
    }
  }

  nlohmann::ordered_json manifest;
  manifest["engine"] = {{"name", "spinbatt"}, {"version", engine_version()}};
  if (!cfg.preset_name.empty()) manifest["preset"] = cfg.preset_name;
  manifest["seed"] = cfg.seed;
  manifest["workers"] = workers;
  manifest["wall_time_seconds"] = wall_seconds;
  manifest["columns"] = run.table.columns;
  manifest["row_count"] = run.table.rows.size();
  manifest["warnings"] = run.warnings;
  nlohmann::ordered_json config;
  for (const auto& [key, value] : scenario_echo(cfg)) config[key] = value;
  manifest["config"] = config;

  const auto manifest_path = out_dir / "manifest.json";
  std::ofstream mf(manifest_path, std::ios::binary | std::ios::trunc);
  mf << manifest.dump(2) << '\n';
  if (!mf.good()) {
    throw std::runtime_error("cannot write '" + manifest_path.string() + "'");
  }
}

}  // namespace spinbatt
