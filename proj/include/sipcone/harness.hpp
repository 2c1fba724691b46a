#pragma once

#include "sipcone/body_io.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sipcone {

inline constexpr const char* kReportSchema = "sipcone.report/1";
inline constexpr const char* kCsvSchema = "sipcone.residuals/1";

enum class ScenarioKind { theorem1, theorem2, sip, hammer, kakutani, reflect, explore };

std::string to_string(ScenarioKind kind);
/// Throws InvalidArgument for unknown names.
ScenarioKind scenario_from_string(const std::string& name);
bool is_exploratory(ScenarioKind kind);

/// One scenario. Optional fields keep their absence so that a config
/// saves back to the document it was loaded from.
struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::theorem1;
    std::uint64_t seed = 0;
    std::optional<int> samples;
    std::optional<int> planes;
    std::optional<double> tolerance;
    std::optional<std::string> report_path;
    std::optional<std::string> csv_path;
    /// Scenario-specific fields (body descriptors, grids), validated.
    Json parameters = Json::object();
    /// Directory that string (file) descriptors are resolved against; not saved.
    std::string base_dir;

    int effective_samples() const;
    int effective_planes() const;
    double effective_tolerance() const;
};

/// Validates a parsed document; errors name the offending field.
ScenarioConfig parse_config(const Json& doc, const std::string& base_dir = "");
/// Reads and validates a file; JSON syntax errors carry the byte position.
ScenarioConfig load_config(const std::string& path);
Json config_to_json(const ScenarioConfig& config);
void save_config(const ScenarioConfig& config, const std::string& path);

struct CsvRow {
    std::string case_id;
    int sample;
    std::string kind;
    double value;
};

struct RunReport {
    ScenarioKind kind;
    Json body;
    std::vector<CsvRow> rows;
    bool verdict;
};

RunReport run(const ScenarioConfig& config);

/// Pretty-printed report JSON with a trailing newline.
std::string render_report(const RunReport& report);
void emit_report(const RunReport& report, const std::string& path);
std::string render_csv(const RunReport& report);
void write_csv(const RunReport& report, const std::string& path);

/// 0 for a true verdict or an exploratory scenario, 1 otherwise.
int exit_code(const RunReport& report);

}  // namespace sipcone
