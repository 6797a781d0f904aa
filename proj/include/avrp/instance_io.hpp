#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "avrp/model.hpp"
#include "avrp/rng.hpp"

namespace avrp {

// ---- Solomon benchmark files ------------------------------------------------

struct SolomonCustomer {
  int id = 0;
  double x = 0.0, y = 0.0;
  double demand = 0.0;
  double ready = 0.0, due = 0.0;
  double service = 0.0;
};

struct SolomonData {
  std::string name;
  int vehicle_count = 0;
  double vehicle_capacity = 0.0;
  SolomonCustomer depot;                  // customer 0
  std::vector<SolomonCustomer> customers;  // 1..n in file order
  double horizon() const { return depot.due; }
};

// Parses the fixed-layout Solomon format (title line, VEHICLE block, CUSTOMER
// table). Errors carry the offending line number.
SolomonData parse_solomon(std::istream& in, const std::string& name_hint = "");
SolomonData load_solomon_file(const std::filesystem::path& path);

// Writes the 27 long-horizon source files (R201..R211, C201..C208,
// RC201..RC208) in Solomon layout, 100 customers each, synthesized
// deterministically from the seed: uniform coordinates for R2, clustered for
// C2, half/half for RC2. Drop-in replacements for the published files when
// those are available. Returns the file names written.
std::vector<std::string> synthesize_solomon_sources(const std::filesystem::path& dir,
                                                    uint64_t seed);

// ---- precedence generation ----------------------------------------------------

struct GeneratorConfig {
  double tau = 0.4;
  uint64_t seed = 0;
  int n_customers = 10;
  std::optional<double> capacity_override;
  std::optional<int> max_vehicles_override;
};

// Fleet sizing by instance size: 10 -> (100, 3), 20/30 -> (200, 4),
// 40/50 -> (300, 5); other sizes borrow the nearest listed size at or above.
std::pair<double, int> default_fleet(int n_customers);

// Builds a PrecedenceMatrix over customers that are already sorted by
// increasing latest arrival time: per column j >= 2, with probability tau the
// predecessor count is drawn uniformly from [0, j-1] and that many distinct
// predecessors are sampled from {1..j-1}, each typed AND with probability 1/2,
// OR otherwise.
PrecedenceMatrix generate_precedence(int n_customers, double tau, Rng& rng);

// Takes the first cfg.n_customers customers of the source, re-indexes them
// 1..n by increasing latest arrival (ties by original id), generates the
// precedence matrix and assembles the instance with Table-style fleet
// defaults.
Instance generate_instance(const SolomonData& source, const GeneratorConfig& cfg);

// ---- native .avrp format ------------------------------------------------------

std::string write_instance(const Instance& inst);
Instance read_instance(std::istream& in);
Instance read_instance_text(const std::string& text);
Instance load_instance_file(const std::filesystem::path& path);
void save_instance_file(const Instance& inst, const std::filesystem::path& path);

// ---- suite generation -----------------------------------------------------------

struct SuiteSpec {
  std::vector<int> sizes = {10, 20, 30, 40, 50};
  std::vector<double> taus = {0.4, 0.8};
  uint64_t seed = 1;
};

// File name for one generated instance, e.g. "C201-50-t04.avrp".
std::string instance_file_name(const std::string& source_name, int size, double tau);

// Generates size x tau instances for every source file in solomon_dir and
// writes them under out_dir; per-instance seeds derive from spec.seed and the
// instance name, so the suite regenerates bit-identically. Returns the files
// written, sorted.
std::vector<std::string> generate_suite(const std::filesystem::path& solomon_dir,
                                        const std::filesystem::path& out_dir,
                                        const SuiteSpec& spec);

}  // namespace avrp
