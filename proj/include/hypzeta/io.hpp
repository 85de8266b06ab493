#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypzeta/homcount.hpp"
#include "hypzeta/resonances.hpp"

namespace hypzeta {

inline constexpr const char* kArtifactVersion = "0.1.0";

/// Group from its JSON text:
/// { "rank": r, "generators": [[a,b,c,d], ...], "discs": [{"center": x, "radius": rho}, ...] }.
/// Throws ParseError on malformed input or shape mismatch. Geometry is not
/// checked here; see validate().
SchottkyGroup parse_group(const std::string& text);
SchottkyGroup load_group(const std::filesystem::path& path);
nlohmann::json group_to_json(const SchottkyGroup& group);

/// Named builders: three_funnel(l1, l2[, outer_center]), cylinder(l).
SchottkyGroup make_builder(const std::string& name, const std::vector<double>& params);

/// Shortest round-trip decimal form.
std::string format_number(double x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write(const std::filesystem::path& path) const;
  std::string str() const;
};

CsvTable classes_csv(const PrimitiveTable& table, int rank);

struct ZetaGridPoint {
  ThetaPoint theta;
  cplx s;
  ZetaValue value;
};
CsvTable zeta_grid_csv(const std::vector<ZetaGridPoint>& grid);

CsvTable resonances_csv(const std::vector<Resonance>& zeros, int rank, int order);
CsvTable homcount_csv(const std::vector<HomologyCountTable>& tables);
CsvTable histogram_csv(const Histogram& h);

/// Writes `<csv>.manifest.json` next to a CSV file.
void write_manifest(const std::filesystem::path& csv, const std::string& command,
                    const nlohmann::json& parameters);
void write_json(const std::filesystem::path& path, const nlohmann::json& value);

}  // namespace hypzeta
