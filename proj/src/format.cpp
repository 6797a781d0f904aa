#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "avrp/instance_io.hpp"

namespace avrp {

namespace {

constexpr int kFormatVersion = 1;

// %.17g round-trips every double bit-exactly.
std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

[[noreturn]] void read_fail(int line, const std::string& what) {
  throw std::runtime_error("avrp read error at line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::string write_instance(const Instance& inst) {
  std::ostringstream out;
  const InstanceMeta& meta = inst.meta();
  out << "avrp " << kFormatVersion << "\n";
  out << "name " << (meta.source_name.empty() ? "unnamed" : meta.source_name) << "\n";
  out << "type " << (meta.type.empty() ? "R2" : meta.type) << "\n";
  out << "tau " << fmt(meta.tau) << "\n";
  out << "seed " << meta.seed << "\n";
  out << "horizon " << fmt(inst.horizon()) << "\n";
  out << "capacity " << fmt(inst.capacity()) << "\n";
  out << "vehicles " << inst.max_vehicles() << "\n";
  out << "customers " << inst.customer_count() << "\n";
  const Node& depot = inst.node(inst.depot());
  out << "depot " << fmt(depot.x) << ' ' << fmt(depot.y) << "\n";
  for (int c = 1; c <= inst.customer_count(); ++c) {
    const Node& node = inst.node(c);
    out << "node " << c << ' ' << fmt(node.x) << ' ' << fmt(node.y) << ' ' << fmt(node.demand)
        << ' ' << fmt(node.service) << ' ' << fmt(node.early) << ' ' << fmt(node.late) << "\n";
  }
  const auto triples = inst.pm().triples();
  out << "precedence " << triples.size() << "\n";
  for (const auto& [i, j, rel] : triples)
    out << "rel " << i << ' ' << j << ' ' << (rel == Relation::And ? "AND" : "OR") << "\n";
  out << "end\n";
  return out.str();
}

Instance read_instance(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto next_line = [&](const char* expect_key) -> std::istringstream {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line[0] != '#') break;
    }
    if (!in && line.empty()) read_fail(line_no, std::string("expected ") + expect_key);
    std::istringstream row(line);
    std::string key;
    row >> key;
    if (key != expect_key)
      read_fail(line_no, "expected key '" + std::string(expect_key) + "', got '" + key + "'");
    return row;
  };

  {
    auto row = next_line("avrp");
    int version = -1;
    row >> version;
    if (version != kFormatVersion)
      read_fail(line_no, "version mismatch: file " + std::to_string(version) + ", reader " +
                             std::to_string(kFormatVersion));
  }
  InstanceMeta meta;
  next_line("name") >> meta.source_name;
  next_line("type") >> meta.type;
  next_line("tau") >> meta.tau;
  next_line("seed") >> meta.seed;
  double horizon = 0.0, capacity = 0.0;
  int vehicles = 0, n = 0;
  next_line("horizon") >> horizon;
  next_line("capacity") >> capacity;
  next_line("vehicles") >> vehicles;
  next_line("customers") >> n;
  if (n < 0) read_fail(line_no, "negative customer count");

  Node depot{};
  {
    auto row = next_line("depot");
    if (!(row >> depot.x >> depot.y)) read_fail(line_no, "malformed depot line");
  }
  std::vector<Node> customers;
  customers.reserve(static_cast<size_t>(n));
  for (int c = 1; c <= n; ++c) {
    auto row = next_line("node");
    Node node;
    if (!(row >> node.id >> node.x >> node.y >> node.demand >> node.service >> node.early >>
          node.late))
      read_fail(line_no, "malformed node line");
    if (node.id != c) read_fail(line_no, "node ids must run 1..n in order");
    customers.push_back(node);
  }

  size_t rel_count = 0;
  next_line("precedence") >> rel_count;
  std::vector<RelationTriple> triples;
  triples.reserve(rel_count);
  for (size_t r = 0; r < rel_count; ++r) {
    auto row = next_line("rel");
    int i = 0, j = 0;
    std::string kind;
    if (!(row >> i >> j >> kind)) read_fail(line_no, "malformed rel line");
    if (i < 1 || j <= i || j > n) read_fail(line_no, "relation not upper triangular");
    if (kind != "AND" && kind != "OR") read_fail(line_no, "relation type must be AND or OR");
    triples.emplace_back(i, j, kind == "AND" ? Relation::And : Relation::Or);
  }
  next_line("end");

  try {
    return Instance::build(depot, std::move(customers), horizon, capacity, vehicles,
                           PrecedenceMatrix(n, triples), std::move(meta));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error("avrp read error: " + std::string(e.what()));
  }
}

Instance read_instance_text(const std::string& text) {
  std::istringstream in(text);
  return read_instance(in);
}

Instance load_instance_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_instance(in);
}

void save_instance_file(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << write_instance(inst);
}

}  // namespace avrp
