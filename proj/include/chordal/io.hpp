#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "chordal/chordal_metric.hpp"
#include "chordal/plant.hpp"
#include "chordal/robustness.hpp"

namespace chordal::io {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

/// Series file: {"version": 1, "nvars": n, "terms": [{"exp": [...], "re": x, "im": y}, ...]}.
/// `where` prefixes diagnostics (e.g. "num"). Duplicate exponents are an error.
Series series_from_json(const Json& j, const std::string& where = "");
Json series_to_json(const Series& s);

/// Unvalidated contents of a plant file.
struct PlantData {
    Series num;
    Series den;
    std::optional<BezoutWitness> witnesses;
};

/// {"version": 1, "num": <series>, "den": <series>, "bezout": {"x": <series>, "y": <series>}}.
PlantData plant_from_json(const Json& j);
Json plant_to_json(const Series& num, const Series& den, const std::optional<BezoutWitness>& witnesses);
Json plant_to_json(const CoprimePlant& plant);

/// Reads and parses a JSON document; ParseError carries file name and position.
Json read_json_file(const std::filesystem::path& path);
Series read_series_file(const std::filesystem::path& path);
PlantData read_plant_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

Json to_json(const CertifiedBound& b);
Json to_json(const PolydiscPoint& p);
Json to_json(const KappaEstimate& k);
Json grid_json(const PolydiscGrid& grid);
Json grid_json(const GridSpec& spec, double delta);
Json to_json(const MarginReport& m);
Json to_json(const SweepRow& row);
Json to_json(const TheoremReport& r);

}  // namespace chordal::io
