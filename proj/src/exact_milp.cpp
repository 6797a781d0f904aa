#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "avrp/exact.hpp"

namespace avrp {

namespace {

// Rows with big-M terms cancel them exactly (binaries are 0/1), so the
// residual is pure time arithmetic; 1e-6 absorbs its accumulation while
// staying far below any genuine violation the fuzz suites produce.
constexpr double kMilpEps = 1e-6;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

uint8_t& MilpAssignment::yref(int i, int j, int v) {
  const size_t nn = static_cast<size_t>(n) + 2;
  return y[(static_cast<size_t>(i) * nn + static_cast<size_t>(j)) * static_cast<size_t>(k) +
           static_cast<size_t>(v)];
}

uint8_t MilpAssignment::yval(int i, int j, int v) const {
  const size_t nn = static_cast<size_t>(n) + 2;
  return y[(static_cast<size_t>(i) * nn + static_cast<size_t>(j)) * static_cast<size_t>(k) +
           static_cast<size_t>(v)];
}

uint8_t MilpAssignment::zval(int i, int v) const {
  return z[static_cast<size_t>(i) * static_cast<size_t>(k) + static_cast<size_t>(v)];
}

double MilpAssignment::aval(int i, int v) const {
  return a[static_cast<size_t>(i) * static_cast<size_t>(k) + static_cast<size_t>(v)];
}

double milp_big_m(const Instance& inst) {
  double max_service = 0.0;
  double max_travel = 0.0;
  for (int i = 0; i < inst.node_count(); ++i) {
    max_service = std::max(max_service, inst.service(i));
    for (int j = 0; j < inst.node_count(); ++j) max_travel = std::max(max_travel, inst.travel(i, j));
  }
  return inst.horizon() + max_service + max_travel;
}

MilpAssignment lift_assignment(const Instance& inst, const Solution& sol) {
  const int n = inst.customer_count();
  const int k = inst.max_vehicles();
  const int dummy = inst.dummy_depot();
  MilpAssignment m;
  m.n = n;
  m.k = k;
  const size_t nn = static_cast<size_t>(n) + 2;
  m.y.assign(nn * nn * static_cast<size_t>(k), 0);
  m.z.assign(nn * static_cast<size_t>(k), 0);
  m.u.assign(static_cast<size_t>(k), 0);
  m.a.assign(nn * static_cast<size_t>(k), 0.0);
  m.c.assign(static_cast<size_t>(k), 0.0);

  auto zset = [&](int i, int v) {
    m.z[static_cast<size_t>(i) * static_cast<size_t>(k) + static_cast<size_t>(v)] = 1;
  };
  auto aset = [&](int i, int v, double value) {
    m.a[static_cast<size_t>(i) * static_cast<size_t>(k) + static_cast<size_t>(v)] = value;
  };

  for (size_t r = 0; r < sol.routes.size() && static_cast<int>(r) < k; ++r) {
    const Route& route = sol.routes[r];
    const int v = static_cast<int>(r);
    if (route.seq.empty()) continue;
    m.u[r] = 1;
    zset(inst.depot(), v);
    zset(dummy, v);
    aset(inst.depot(), v, 0.0);
    aset(dummy, v, route.completion);
    m.c[r] = route.completion;

    // Depot precedes every visited node; the dummy depot follows them.
    for (size_t p = 0; p < route.seq.size(); ++p) {
      const int c = route.seq[p];
      zset(c, v);
      aset(c, v, route.arrivals[p]);
      m.yref(inst.depot(), c, v) = 1;
      m.yref(c, dummy, v) = 1;
      for (size_t q = p + 1; q < route.seq.size(); ++q) m.yref(c, route.seq[q], v) = 1;
    }
    m.yref(inst.depot(), dummy, v) = 1;
  }
  return m;
}

ConstraintReport evaluate_milp(const Instance& inst, const Solution& sol) {
  const int n = inst.customer_count();
  const int K = inst.max_vehicles();
  const int dummy = inst.dummy_depot();
  const double M = milp_big_m(inst);
  const MilpAssignment m = lift_assignment(inst, sol);

  ConstraintReport report;
  auto check = [&](const std::string& row, double lhs_minus_rhs_nonpositive) {
    // rows normalized to "expr <= 0"
    if (lhs_minus_rhs_nonpositive > kMilpEps)
      report.violations.push_back({row, lhs_minus_rhs_nonpositive});
  };
  auto name = [](const char* base, int a1, int a2 = -1, int a3 = -1) {
    std::ostringstream out;
    out << base << '_' << a1;
    if (a2 >= 0) out << '_' << a2;
    if (a3 >= 0) out << '_' << a3;
    return out.str();
  };

  // Each customer visited by exactly one vehicle.
  for (int i = 1; i <= n; ++i) {
    int sum = 0;
    for (int v = 0; v < K; ++v) sum += m.zval(i, v);
    check(name("assign_lo", i), 1.0 - sum);
    check(name("assign_hi", i), sum - 1.0);
  }
  // Capacity.
  for (int v = 0; v < K; ++v) {
    double load = 0.0;
    for (int i = 1; i <= n; ++i) load += inst.demand(i) * m.zval(i, v);
    check(name("cap", v + 1), load - inst.capacity() * m.u[static_cast<size_t>(v)]);
  }
  // Depot and dummy ride every used vehicle.
  for (int v = 0; v < K; ++v) {
    check(name("dlink0", v + 1), std::abs(m.zval(0, v) - m.u[static_cast<size_t>(v)]));
    check(name("dlinkE", v + 1), std::abs(m.zval(dummy, v) - m.u[static_cast<size_t>(v)]));
  }
  // Vehicle k opens only after k-1.
  for (int v = 1; v < K; ++v)
    check(name("order", v + 1), m.u[static_cast<size_t>(v)] - m.u[static_cast<size_t>(v - 1)]);
  // Depot arrival pinned at zero.
  for (int v = 0; v < K; ++v) check(name("start", v + 1), std::abs(m.aval(0, v)));
  // Arrival forced to zero off-vehicle.
  for (int i = 1; i <= n; ++i)
    for (int v = 0; v < K; ++v) check(name("mlink", i, v + 1), m.aval(i, v) - M * m.zval(i, v));
  // Completion dominates the dummy-depot arrival.
  for (int v = 0; v < K; ++v)
    check(name("comp", v + 1), m.aval(dummy, v) - m.c[static_cast<size_t>(v)]);
  // Time windows (depot excluded; the dummy depot carries [0, T]).
  for (int i = 1; i <= n + 1; ++i) {
    for (int v = 0; v < K; ++v) {
      check(name("twlb", i, v + 1), inst.early(i) * m.zval(i, v) - m.aval(i, v));
      check(name("twub", i, v + 1), m.aval(i, v) - inst.late(i) * m.zval(i, v));
    }
  }
  // Sequencing: a_j >= a_i + t_ij + s_i when i precedes j on vehicle v.
  for (int i = 0; i <= n + 1; ++i) {
    for (int j = 0; j <= n + 1; ++j) {
      if (i == j) continue;
      for (int v = 0; v < K; ++v) {
        const double lhs = m.aval(i, v) + inst.travel(i, j) + inst.service(i) -
                           M * (1 - m.yval(i, j, v)) - M * (1 - m.zval(i, v)) -
                           M * (1 - m.zval(j, v)) - m.aval(j, v);
        check(name("seq", i, j, v + 1), lhs);
      }
    }
  }
  // Pair linkage: co-assigned nodes are ordered one way or the other.
  for (int i = 0; i <= n + 1; ++i) {
    for (int j = 0; j <= n + 1; ++j) {
      if (i == j) continue;
      for (int v = 0; v < K; ++v) {
        const int yy = m.yval(i, j, v) + m.yval(j, i, v);
        check(name("pair1", i, j, v + 1),
              1.0 + M * (m.zval(i, v) + m.zval(j, v) - 2.0) - yy);
        check(name("pair2", i, j, v + 1), 2.0 * yy - m.zval(i, v) - m.zval(j, v));
      }
    }
  }
  // AND rows, as printed.
  for (int j = 1; j <= n; ++j) {
    for (const int i : inst.pm().and_predecessors(j)) {
      for (int v = 0; v < K; ++v) {
        check(name("and1", i, j, v + 1),
              m.yval(i, j, v) - 1.0 - M * (2.0 - m.zval(i, v) - m.zval(j, v)));
        check(name("and2", i, j, v + 1),
              1.0 - m.yval(i, j, v) - M * (2.0 - m.zval(i, v) - m.zval(j, v)));
      }
    }
  }
  // OR rows, only for customers with a non-empty OR set.
  for (int j = 1; j <= n; ++j) {
    const auto& ors = inst.pm().or_predecessors(j);
    if (ors.empty()) continue;
    for (int v = 0; v < K; ++v) {
      int sum = 0;
      for (const int i : ors) sum += m.yval(i, j, v);
      check(name("or", j, v + 1), 1.0 + M * (m.zval(j, v) - 1.0) - sum);
    }
  }
  return report;
}

std::string export_lp(const Instance& inst) {
  const int n = inst.customer_count();
  const int K = inst.max_vehicles();
  const int dummy = inst.dummy_depot();
  const double M = milp_big_m(inst);

  std::ostringstream lp;
  auto y = [](int i, int j, int v) {
    return "y_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(v + 1);
  };
  auto z = [](int i, int v) { return "z_" + std::to_string(i) + "_" + std::to_string(v + 1); };
  auto u = [](int v) { return "u_" + std::to_string(v + 1); };
  auto a = [](int i, int v) { return "a_" + std::to_string(i) + "_" + std::to_string(v + 1); };
  auto c = [](int v) { return "c_" + std::to_string(v + 1); };

  lp << "\\ vehicle routing with AND/OR precedence constraints and time windows\n";
  lp << "\\ nodes: 0 depot, 1.." << n << " customers, " << dummy << " dummy depot; M = " << fmt(M)
     << "\n";
  lp << "Minimize\n obj:";
  for (int v = 0; v < K; ++v) lp << (v == 0 ? " " : " + ") << c(v);
  lp << "\nSubject To\n";

  for (int i = 1; i <= n; ++i) {
    lp << " assign_" << i << ":";
    for (int v = 0; v < K; ++v) lp << (v == 0 ? " " : " + ") << z(i, v);
    lp << " = 1\n";
  }
  for (int v = 0; v < K; ++v) {
    lp << " cap_" << v + 1 << ":";
    bool first = true;
    for (int i = 1; i <= n; ++i) {
      if (inst.demand(i) == 0.0) continue;
      lp << (first ? " " : " + ") << fmt(inst.demand(i)) << ' ' << z(i, v);
      first = false;
    }
    if (first) lp << " 0 " << z(1, v);  // degenerate all-zero-demand instance
    lp << " - " << fmt(inst.capacity()) << ' ' << u(v) << " <= 0\n";
  }
  for (int v = 0; v < K; ++v) {
    lp << " dlink0_" << v + 1 << ": " << z(0, v) << " - " << u(v) << " = 0\n";
    lp << " dlinkE_" << v + 1 << ": " << z(dummy, v) << " - " << u(v) << " = 0\n";
  }
  for (int v = 1; v < K; ++v)
    lp << " order_" << v + 1 << ": " << u(v) << " - " << u(v - 1) << " <= 0\n";
  for (int v = 0; v < K; ++v) lp << " start_" << v + 1 << ": " << a(0, v) << " = 0\n";
  for (int i = 1; i <= n; ++i)
    for (int v = 0; v < K; ++v)
      lp << " mlink_" << i << '_' << v + 1 << ": " << a(i, v) << " - " << fmt(M) << ' ' << z(i, v)
         << " <= 0\n";
  for (int v = 0; v < K; ++v)
    lp << " comp_" << v + 1 << ": " << c(v) << " - " << a(dummy, v) << " >= 0\n";
  for (int i = 1; i <= n + 1; ++i) {
    for (int v = 0; v < K; ++v) {
      lp << " twlb_" << i << '_' << v + 1 << ": " << a(i, v) << " - " << fmt(inst.early(i)) << ' '
         << z(i, v) << " >= 0\n";
      lp << " twub_" << i << '_' << v + 1 << ": " << a(i, v) << " - " << fmt(inst.late(i)) << ' '
         << z(i, v) << " <= 0\n";
    }
  }
  // a_j + M(1-y_ij) >= a_i + t_ij + s_i - M(1-z_i) - M(1-z_j)
  for (int i = 0; i <= n + 1; ++i) {
    for (int j = 0; j <= n + 1; ++j) {
      if (i == j) continue;
      for (int v = 0; v < K; ++v) {
        lp << " seq_" << i << '_' << j << '_' << v + 1 << ": " << a(j, v) << " - " << a(i, v)
           << " + " << fmt(M) << ' ' << y(i, j, v) << " + " << fmt(M) << ' ' << z(i, v) << " + "
           << fmt(M) << ' ' << z(j, v) << " >= " << fmt(inst.travel(i, j) + inst.service(i) - 3.0 * M)
           << "\n";
      }
    }
  }
  for (int i = 0; i <= n + 1; ++i) {
    for (int j = 0; j <= n + 1; ++j) {
      if (i == j) continue;
      for (int v = 0; v < K; ++v) {
        lp << " pair1_" << i << '_' << j << '_' << v + 1 << ": " << fmt(M) << ' ' << z(i, v)
           << " + " << fmt(M) << ' ' << z(j, v) << " - " << y(i, j, v) << " - " << y(j, i, v)
           << " <= " << fmt(2.0 * M - 1.0) << "\n";
        lp << " pair2_" << i << '_' << j << '_' << v + 1 << ": " << z(i, v) << " + " << z(j, v)
           << " - 2 " << y(i, j, v) << " - 2 " << y(j, i, v) << " >= 0\n";
      }
    }
  }
  for (int j = 1; j <= n; ++j) {
    for (const int i : inst.pm().and_predecessors(j)) {
      for (int v = 0; v < K; ++v) {
        lp << " and1_" << i << '_' << j << '_' << v + 1 << ": " << y(i, j, v) << " + " << fmt(M)
           << ' ' << z(i, v) << " + " << fmt(M) << ' ' << z(j, v) << " <= " << fmt(2.0 * M + 1.0)
           << "\n";
        lp << " and2_" << i << '_' << j << '_' << v + 1 << ": " << fmt(M) << ' ' << z(i, v)
           << " + " << fmt(M) << ' ' << z(j, v) << " - " << y(i, j, v)
           << " <= " << fmt(2.0 * M - 1.0) << "\n";
      }
    }
  }
  for (int j = 1; j <= n; ++j) {
    const auto& ors = inst.pm().or_predecessors(j);
    if (ors.empty()) continue;
    for (int v = 0; v < K; ++v) {
      lp << " or_" << j << '_' << v + 1 << ":";
      for (size_t s = 0; s < ors.size(); ++s) lp << (s == 0 ? " " : " + ") << y(ors[s], j, v);
      lp << " - " << fmt(M) << ' ' << z(j, v) << " >= " << fmt(1.0 - M) << "\n";
    }
  }

  lp << "Bounds\n";
  for (int v = 0; v < K; ++v) {
    lp << " 0 <= " << c(v) << "\n";
    for (int i = 0; i <= n + 1; ++i) lp << " 0 <= " << a(i, v) << "\n";
  }
  lp << "Binaries\n";
  for (int v = 0; v < K; ++v) {
    lp << ' ' << u(v) << "\n";
    for (int i = 0; i <= n + 1; ++i) lp << ' ' << z(i, v) << "\n";
    for (int i = 0; i <= n + 1; ++i)
      for (int j = 0; j <= n + 1; ++j)
        if (i != j) lp << ' ' << y(i, j, v) << "\n";
  }
  lp << "End\n";
  return lp.str();
}

}  // namespace avrp
