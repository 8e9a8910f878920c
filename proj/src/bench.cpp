#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "nsdgt/dgt.hpp"
#include "nsdgt/flops.hpp"
#include "nsdgt/io.hpp"
#include "nsdgt/nonsep.hpp"

namespace nsdgt {

namespace {

template <class F>
double median_ns(F&& run, int repeats) {
  run();
  std::vector<double> t;
  for (int r = 0; r < repeats; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    run();
    auto t1 = std::chrono::steady_clock::now();
    t.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count());
  }
  std::sort(t.begin(), t.end());
  const std::size_t n = t.size();
  return n % 2 ? t[n / 2] : 0.5 * (t[n / 2 - 1] + t[n / 2]);
}

}  // namespace

std::vector<CrossoverRow> crossover_scan(Index a, Index M, const CrossoverOptions& opt) {
  std::vector<CrossoverRow> rows;
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> nd;
  for (Index l2 = 1; l2 <= opt.lambda2_max; ++l2) {
    const Index l1 = l2 == 1 ? 0 : 1;
    const Index L = lcm(a, M) * opt.L_factor * (opt.minimal_length ? l2 : 1);
    if (!is_feasible(L, a, M, l1, l2)) {
      if (opt.log)
        opt.log("skip lambda=" + std::to_string(l1) + "/" + std::to_string(l2) + ": L=" + std::to_string(L) +
                " is not a multiple of L_min=" + std::to_string(min_length(a, M, l1, l2)));
      continue;
    }
    const auto lat = GaborLattice::from_params(L, a, M, l1, l2);
    const auto sd = shearfind(lat);
    CVector f(static_cast<std::size_t>(L));
    for (auto& v : f) v = {nd(rng), nd(rng)};
    const Window g = pgauss(L, static_cast<double>(a * M) / static_cast<double>(L));

    struct Entry {
      const char* name;
      double flops;
      CoefGrid (*fn)(std::span<const Complex>, const Window&, const GaborLattice&);
    };
    const Entry entries[] = {
        {"multiwin", flops_table(lat, FlopAlgorithm::MwFull).flops, &dgtns_multiwin},
        {"shear", flops_shear(lat).flops, &dgtns_shear},
        {"snf", flops_table(lat, FlopAlgorithm::Snf).flops, &dgtns_snf},
    };
    for (const auto& e : entries) {
      double t = 0;
      if (opt.measure) t = median_ns([&] { (void)e.fn(f, g, lat); }, std::max(opt.repeats, 1));
      rows.push_back({l1, l2, L, a, M, e.name, e.flops, t, sd.freq_shear_needed(), sd.time_shear_needed()});
    }
    if (opt.log) opt.log("done lambda=" + std::to_string(l1) + "/" + std::to_string(l2) + " L=" + std::to_string(L));
  }
  return rows;
}

void write_crossover_csv(std::ostream& os, const std::vector<CrossoverRow>& rows, bool header) {
  if (header) os << kCrossoverHeader << '\n';
  for (const auto& r : rows) {
    os << r.lambda1 << ',' << r.lambda2 << ',' << r.L << ',' << r.a << ',' << r.M << ',' << r.algorithm << ','
       << format_double(r.flops_model) << ',' << format_double(std::round(r.time_ns_median)) << ','
       << (r.freq_shear ? 1 : 0) << ',' << (r.time_shear ? 1 : 0) << '\n';
  }
}

}  // namespace nsdgt
