#pragma once

// JSON documents: instances ("mfs-instance/1"), experiment grids
// ("mfs-grid/1"), set descriptions and solver reports.

#include <string>

#include "json.hpp"

#include "mfs/bench.hpp"
#include "mfs/eas.hpp"
#include "mfs/sets.hpp"
#include "mfs/spg.hpp"

namespace mfs {

using Json = nlohmann::json;

inline constexpr const char* kInstanceFormat = "mfs-instance/1";
inline constexpr const char* kGridFormat = "mfs-grid/1";

Json instance_to_json(const GeneratedInstance& instance);
GeneratedInstance instance_from_json(const Json& doc);

void save_instance(const GeneratedInstance& instance, const std::string& path);
GeneratedInstance load_instance(const std::string& path);

Json set_to_json(const SetOracle& set);
SetPtr set_from_json(const Json& doc);

GridSpec grid_from_json(const Json& doc);
GridSpec load_grid(const std::string& path);

Json report_to_json(const SolveReport& report);
Json eas_report_to_json(const EasReport& report);

/// A JSON array of numbers.
Vec load_vector(const std::string& path);

Json read_json_file(const std::string& path);

} // namespace mfs
