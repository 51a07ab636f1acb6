// Serial vs OpenMP timings for the parallel kernels. Usage:
//   bench_kernels [repetitions]

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#include "toristack/chart.hpp"
#include "toristack/kernels.hpp"

using namespace toristack;
using kernels::Execution;

namespace {

template <class F>
double best_ms(int reps, F&& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void line(const std::string& name, double serial, double parallel, bool same) {
  std::cout << name << ": serial " << serial << " ms, parallel " << parallel << " ms, speedup "
            << (parallel > 0 ? serial / parallel : 0.0) << (same ? "" : "  OUTPUT MISMATCH") << "\n";
}

// Complete fan in Z^2 whose rays (1, k) and (-1, -k) wind around the origin.
StackyFan big_fan(int k) {
  std::vector<IntVector> rays;
  for (int i = -k; i <= k; ++i) rays.push_back(make_vector({1, i}));
  rays.push_back(make_vector({0, 1}));
  for (int i = k; i >= -k; --i) rays.push_back(make_vector({-1, i}));
  rays.push_back(make_vector({0, -1}));
  std::vector<RayIndexSet> cones;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    RayIndexSet c{i, (i + 1) % rays.size()};
    std::sort(c.begin(), c.end());
    cones.push_back(c);
  }
  std::vector<Integer> levels(rays.size());
  for (std::size_t i = 0; i < levels.size(); ++i) levels[i] = 1 + static_cast<long>(i % 4);
  return StackyFan(validate_fan(2, rays, cones), levels);
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
  std::cout << "threads: " << kernels::max_threads() << "\n";

  const IntegerMatrix t = IntegerMatrix::from_rows({{1, 0, 0}, {3, 97, 0}, {5, 11, 2003}});
  kernels::Parallelepiped ps, pp;
  const double s1 = best_ms(reps, [&] { ps = kernels::parallelepiped_points(t, Execution::serial); });
  const double p1 = best_ms(reps, [&] { pp = kernels::parallelepiped_points(t, Execution::parallel); });
  line("parallelepiped (" + ps.volume.get_str() + " points)", s1, p1, ps.points == pp.points);

  std::vector<std::size_t> is, ip;
  const double s2 = best_ms(reps, [&] { is = kernels::irreducible_indices(ps.coefficients, Execution::serial); });
  const double p2 = best_ms(reps, [&] { ip = kernels::irreducible_indices(ps.coefficients, Execution::parallel); });
  line("irreducible filter (" + std::to_string(is.size()) + " kept)", s2, p2, is == ip);

  const StackyFan sf = big_fan(40);
  const auto ids = sf.fan().maximal_cone_ids();
  std::vector<LocalChart> cs, cp;
  const double s3 = best_ms(reps, [&] { cs = local_charts(sf, ids, Execution::serial); });
  const double p3 = best_ms(reps, [&] { cp = local_charts(sf, ids, Execution::parallel); });
  bool same = cs.size() == cp.size();
  for (std::size_t i = 0; same && i < cs.size(); ++i)
    same = cs[i].group == cp[i].group && cs[i].action_weights == cp[i].action_weights;
  line("charts (" + std::to_string(ids.size()) + " cones)", s3, p3, same);
  return 0;
}
