#include <algorithm>
#include <stdexcept>

#include "avrp/instance_io.hpp"

namespace avrp {

std::pair<double, int> default_fleet(int n_customers) {
  if (n_customers <= 10) return {100.0, 3};
  if (n_customers <= 30) return {200.0, 4};
  return {300.0, 5};
}

PrecedenceMatrix generate_precedence(int n_customers, double tau, Rng& rng) {
  std::vector<RelationTriple> triples;
  std::vector<int> pool;
  for (int j = 2; j <= n_customers; ++j) {
    if (rng.unit() > tau) continue;
    const int count = static_cast<int>(rng.uniform_int(0, j - 1));
    if (count == 0) continue;
    pool.clear();
    for (int i = 1; i < j; ++i) pool.push_back(i);
    // Partial Fisher-Yates: the first `count` entries become the sample.
    for (int s = 0; s < count; ++s) {
      const int swap_with =
          static_cast<int>(rng.uniform_int(s, static_cast<int64_t>(pool.size()) - 1));
      std::swap(pool[static_cast<size_t>(s)], pool[static_cast<size_t>(swap_with)]);
      const Relation rel = rng.unit() < 0.5 ? Relation::And : Relation::Or;
      triples.emplace_back(pool[static_cast<size_t>(s)], j, rel);
    }
  }
  return PrecedenceMatrix(n_customers, triples);
}

Instance generate_instance(const SolomonData& source, const GeneratorConfig& cfg) {
  if (cfg.n_customers < 1 ||
      cfg.n_customers > static_cast<int>(source.customers.size())) {
    throw std::invalid_argument("generator: source " + source.name + " has only " +
                                std::to_string(source.customers.size()) + " customers");
  }
  if (cfg.tau < 0.0 || cfg.tau > 1.0)
    throw std::invalid_argument("generator: tau must lie in [0, 1]");

  // First n customers of the source, re-indexed 1..n by increasing latest
  // arrival time; ties break by original id.
  std::vector<SolomonCustomer> chosen(source.customers.begin(),
                                      source.customers.begin() + cfg.n_customers);
  std::sort(chosen.begin(), chosen.end(), [](const SolomonCustomer& a, const SolomonCustomer& b) {
    return a.due != b.due ? a.due < b.due : a.id < b.id;
  });

  const double horizon = source.horizon();
  std::vector<Node> customers;
  customers.reserve(chosen.size());
  for (size_t i = 0; i < chosen.size(); ++i) {
    const SolomonCustomer& c = chosen[i];
    customers.push_back(Node{static_cast<int>(i) + 1, c.x, c.y, c.demand, c.service, c.ready,
                             std::min(c.due, horizon)});
  }

  Rng rng(cfg.seed);
  PrecedenceMatrix pm = generate_precedence(cfg.n_customers, cfg.tau, rng);

  const auto [default_capacity, default_vehicles] = default_fleet(cfg.n_customers);
  const double capacity = cfg.capacity_override.value_or(default_capacity);
  const int vehicles = cfg.max_vehicles_override.value_or(default_vehicles);

  Node depot{0, source.depot.x, source.depot.y, 0.0, 0.0, 0.0, horizon};

  std::string type = "R2";
  if (source.name.rfind("RC", 0) == 0)
    type = "RC2";
  else if (source.name.rfind("C", 0) == 0)
    type = "C2";

  InstanceMeta meta;
  meta.source_name = source.name;
  meta.type = type;
  meta.n = cfg.n_customers;
  meta.tau = cfg.tau;
  meta.seed = cfg.seed;

  return Instance::build(depot, std::move(customers), horizon, capacity, vehicles, std::move(pm),
                         std::move(meta));
}

std::string instance_file_name(const std::string& source_name, int size, double tau) {
  const int tau_tenths = static_cast<int>(tau * 10.0 + 0.5);
  return source_name + "-" + std::to_string(size) + "-t" + (tau_tenths < 10 ? "0" : "") +
         std::to_string(tau_tenths) + ".avrp";
}

std::vector<std::string> generate_suite(const std::filesystem::path& solomon_dir,
                                        const std::filesystem::path& out_dir,
                                        const SuiteSpec& spec) {
  std::vector<std::filesystem::path> sources;
  for (const auto& entry : std::filesystem::directory_iterator(solomon_dir)) {
    if (entry.path().extension() == ".txt") sources.push_back(entry.path());
  }
  std::sort(sources.begin(), sources.end());
  if (sources.empty())
    throw std::runtime_error("no .txt Solomon sources under " + solomon_dir.string());

  std::filesystem::create_directories(out_dir);
  std::vector<std::string> written;
  for (const auto& path : sources) {
    const SolomonData source = load_solomon_file(path);
    for (const int size : spec.sizes) {
      for (const double tau : spec.taus) {
        const std::string file_name = instance_file_name(source.name, size, tau);
        GeneratorConfig cfg;
        cfg.tau = tau;
        cfg.n_customers = size;
        cfg.seed = Rng::derive_seed(spec.seed, "pm/" + file_name);
        const Instance inst = generate_instance(source, cfg);
        save_instance_file(inst, out_dir / file_name);
        written.push_back(file_name);
      }
    }
  }
  std::sort(written.begin(), written.end());
  return written;
}

}  // namespace avrp
