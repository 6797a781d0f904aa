#include "avrp/solution_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace avrp {

using nlohmann::json;

std::string solution_to_json(const Instance& inst, const SolveResult& result,
                             const std::string& instance_name, uint64_t seed) {
  json doc;
  doc["version"] = 1;
  doc["instance"] = instance_name;
  doc["seed"] = seed;
  doc["feasible"] = result.feasible;
  doc["objective"] = result.objective;
  doc["vehicleNumber"] = result.best.vehicle_number();
  doc["runtimeSec"] = result.runtime_sec;

  json routes = json::array();
  for (const Route& r : result.best.routes) {
    json route;
    route["vehicle"] = r.vehicle;
    route["seq"] = r.seq;
    route["arrivals"] = r.arrivals;
    route["completion"] = r.completion;
    route["cumDemand"] = r.cum_demand;
    routes.push_back(std::move(route));
  }
  doc["routes"] = std::move(routes);
  if (!result.best.stack.empty()) doc["stack"] = result.best.stack;

  json stats;
  stats["outerIterations"] = result.stats.outer_iterations;
  stats["localSearchIterations"] = result.stats.local_search_iterations;
  stats["saAccepts"] = result.stats.sa_accepts;
  stats["reinsertions"] = result.stats.reinsertions;
  stats["newVehicles"] = result.stats.new_vehicles;
  json neighborhoods = json::array();
  for (const NeighborhoodStats& ns : result.stats.neighborhoods) {
    neighborhoods.push_back({{"tried", ns.tried},
                             {"accepted", ns.accepted},
                             {"rejected", ns.rejected},
                             {"infeasible", ns.infeasible},
                             {"skipped", ns.skipped}});
  }
  stats["neighborhoods"] = std::move(neighborhoods);
  doc["stats"] = std::move(stats);

  (void)inst;
  return doc.dump(2) + "\n";
}

Solution solution_from_json(const Instance& inst, const std::string& text) {
  const json doc = json::parse(text);
  if (!doc.contains("version") || doc["version"].get<int>() != 1)
    throw std::runtime_error("solution document: unsupported version");

  Solution sol;
  for (const json& route : doc.at("routes")) {
    Route r;
    r.vehicle = static_cast<int>(sol.routes.size());
    for (const json& node : route.at("seq")) r.seq.push_back(node.get<int>());
    refresh_route(inst, r);
    sol.routes.push_back(std::move(r));
  }
  if (doc.contains("stack"))
    for (const json& node : doc["stack"]) sol.stack.push_back(node.get<int>());

  if (doc.contains("objective") && doc["feasible"].get<bool>()) {
    const double stored = doc["objective"].get<double>();
    if (std::abs(stored - objective(sol)) > 1e-6)
      throw std::runtime_error("solution document: stored objective disagrees with routes");
  }
  return sol;
}

std::string params_to_json(const SolverParams& params) {
  json doc;
  doc["maxIter"] = params.max_iter;
  doc["maxNotImp"] = params.max_not_imp;
  doc["temp0"] = params.temp0;
  doc["alpha"] = params.alpha;
  doc["timeLimitSec"] = params.time_limit_sec;
  doc["seed"] = params.seed;
  return doc.dump(2) + "\n";
}

SolverParams params_from_json(const std::string& text, const SolverParams& base) {
  const json doc = json::parse(text);
  SolverParams p = base;
  if (doc.contains("maxIter")) p.max_iter = doc["maxIter"].get<int>();
  if (doc.contains("maxNotImp")) p.max_not_imp = doc["maxNotImp"].get<int>();
  if (doc.contains("temp0")) p.temp0 = doc["temp0"].get<double>();
  if (doc.contains("alpha")) p.alpha = doc["alpha"].get<double>();
  if (doc.contains("timeLimitSec")) p.time_limit_sec = doc["timeLimitSec"].get<double>();
  if (doc.contains("seed")) p.seed = doc["seed"].get<uint64_t>();
  return p;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace avrp
