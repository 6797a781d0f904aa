#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "avrp/instance_io.hpp"

namespace avrp {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw std::runtime_error("solomon parse error at line " + std::to_string(line) + ": " + what);
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

SolomonData parse_solomon(std::istream& in, const std::string& name_hint) {
  SolomonData data;
  data.name = name_hint;
  std::string line;
  int line_no = 0;
  int next_id = 0;
  enum class Section { Title, Vehicle, CustomerHeader, Rows } section = Section::Title;
  bool vehicle_numbers_read = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    switch (section) {
      case Section::Title: {
        std::istringstream row(line);
        std::string word;
        row >> word;
        data.name = word;
        section = Section::Vehicle;
        break;
      }
      case Section::Vehicle: {
        if (line.find("VEHICLE") != std::string::npos) break;
        if (line.find("NUMBER") != std::string::npos) break;
        std::istringstream row(line);
        if (!(row >> data.vehicle_count >> data.vehicle_capacity))
          parse_fail(line_no, "expected vehicle count and capacity");
        vehicle_numbers_read = true;
        section = Section::CustomerHeader;
        break;
      }
      case Section::CustomerHeader: {
        if (line.find("CUSTOMER") != std::string::npos) break;
        if (line.find("CUST") != std::string::npos) {
          section = Section::Rows;
          break;
        }
        parse_fail(line_no, "expected CUSTOMER table header");
        break;
      }
      case Section::Rows: {
        std::istringstream row(line);
        SolomonCustomer c;
        if (!(row >> c.id >> c.x >> c.y >> c.demand >> c.ready >> c.due >> c.service))
          parse_fail(line_no, "malformed customer row");
        if (c.id != next_id) parse_fail(line_no, "non-monotone customer id");
        ++next_id;
        if (c.id == 0)
          data.depot = c;
        else
          data.customers.push_back(c);
        break;
      }
    }
  }
  if (!vehicle_numbers_read) parse_fail(line_no, "missing VEHICLE block");
  if (next_id == 0) parse_fail(line_no, "no customer rows");
  if (data.customers.empty()) parse_fail(line_no, "missing customer rows after depot");
  return data;
}

SolomonData load_solomon_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_solomon(in, path.stem().string());
}

namespace {

struct SourceProfile {
  double horizon;
  double capacity;
  double service;
  bool clustered;
  bool mixed;
};

SourceProfile profile_for(const std::string& type) {
  if (type == "C2") return {3000.0, 700.0, 90.0, true, false};
  if (type == "RC2") return {960.0, 1000.0, 10.0, false, true};
  return {1000.0, 1000.0, 10.0, false, false};  // R2
}

void write_solomon_file(const std::filesystem::path& path, const std::string& name,
                        const SourceProfile& prof, Rng& rng) {
  constexpr int kCustomers = 100;
  const double T = prof.horizon;

  std::vector<std::array<double, 2>> coords;
  coords.reserve(kCustomers);
  if (prof.clustered || prof.mixed) {
    const int n_clusters = 8;
    std::vector<std::array<double, 2>> centers;
    for (int c = 0; c < n_clusters; ++c)
      centers.push_back({static_cast<double>(rng.uniform_int(10, 90)),
                         static_cast<double>(rng.uniform_int(10, 90))});
    const int clustered_count = prof.mixed ? kCustomers / 2 : kCustomers;
    for (int i = 0; i < clustered_count; ++i) {
      const auto& c = centers[static_cast<size_t>(rng.uniform_int(0, n_clusters - 1))];
      coords.push_back({std::clamp(c[0] + static_cast<double>(rng.uniform_int(-7, 7)), 0.0, 100.0),
                        std::clamp(c[1] + static_cast<double>(rng.uniform_int(-7, 7)), 0.0, 100.0)});
    }
  }
  while (coords.size() < kCustomers)
    coords.push_back({static_cast<double>(rng.uniform_int(0, 100)),
                      static_cast<double>(rng.uniform_int(0, 100))});

  const double dx0 = 40.0, dy0 = 50.0;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << name << "\n\nVEHICLE\nNUMBER     CAPACITY\n  25      " << static_cast<int>(prof.capacity)
      << "\n\nCUSTOMER\n"
      << "CUST NO.  XCOORD.    YCOORD.    DEMAND   READY TIME   DUE DATE   SERVICE TIME\n\n";

  auto row = [&out](int id, double x, double y, double q, double e, double l, double s) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%5d %10d %10d %10d %12d %12d %12d\n", id,
                  static_cast<int>(x), static_cast<int>(y), static_cast<int>(q),
                  static_cast<int>(e), static_cast<int>(l), static_cast<int>(s));
    out << buf;
  };
  row(0, dx0, dy0, 0, 0, T, 0);

  for (int i = 0; i < kCustomers; ++i) {
    const auto [x, y] = coords[static_cast<size_t>(i)];
    const double travel0 = std::sqrt((x - dx0) * (x - dx0) + (y - dy0) * (y - dy0));
    const double demand = prof.clustered
                              ? 10.0 * static_cast<double>(rng.uniform_int(1, 4))
                              : static_cast<double>(rng.uniform_int(1, 41));
    // Keep every window reachable from the depot and returnable within T.
    const double latest_ok = std::floor(T - prof.service - travel0 - 1.0);
    double e = 0.0, l = latest_ok;
    if (rng.unit() < 0.5) {
      const double lo = std::ceil(travel0);
      e = lo + std::floor(rng.unit() * std::max(1.0, (latest_ok - lo) * 0.6));
      const double width = 60.0 + std::floor(rng.unit() * (T * 0.25));
      l = std::min(latest_ok, e + width);
      if (l < e) l = e;
    }
    row(i + 1, x, y, demand, e, l, prof.service);
  }
}

}  // namespace

std::vector<std::string> synthesize_solomon_sources(const std::filesystem::path& dir,
                                                    uint64_t seed) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> names;
  auto emit = [&](const std::string& type, int count) {
    for (int i = 1; i <= count; ++i) {
      std::string name = type.substr(0, type.size() - 1) + "20" + std::to_string(i);
      if (i >= 10) name = type.substr(0, type.size() - 1) + "2" + std::to_string(i);
      Rng rng(Rng::derive_seed(seed, "source/" + name));
      write_solomon_file(dir / (name + ".txt"), name, profile_for(type), rng);
      names.push_back(name + ".txt");
    }
  };
  emit("R2", 11);
  emit("C2", 8);
  emit("RC2", 8);
  return names;
}

}  // namespace avrp
