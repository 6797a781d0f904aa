#pragma once

#include <filesystem>
#include <string>

#include "avrp/model.hpp"
#include "avrp/solver.hpp"

namespace avrp {

// Versioned solution document:
// { "version": 1, "instance": ..., "seed": ..., "feasible": ..., "objective": ...,
//   "vehicleNumber": ..., "routes": [{"vehicle", "seq", "arrivals", "completion",
//   "cumDemand"}], "stats": {...} }
std::string solution_to_json(const Instance& inst, const SolveResult& result,
                             const std::string& instance_name, uint64_t seed);

// Rebuilds a Solution from the document; arrivals are recomputed from seq and
// cross-checked against the stored objective (schema mismatch otherwise).
Solution solution_from_json(const Instance& inst, const std::string& text);

std::string params_to_json(const SolverParams& params);
SolverParams params_from_json(const std::string& text, const SolverParams& base = {});

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace avrp
