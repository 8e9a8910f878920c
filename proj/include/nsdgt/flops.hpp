#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nsdgt/lattice.hpp"

namespace nsdgt {

enum class FlopAlgorithm {
  MwFir,
  MwFull,
  Snf,
  ShearNoFreq,
  ShearFreq,
  ShearOlaNoFreq,
  ShearOlaFreq,
  RectFull,
  RectFir
};
std::string to_string(FlopAlgorithm a);

struct FlopEstimate {
  FlopAlgorithm algorithm;
  double flops;
  Index L, a, M, lambda1, lambda2;
  std::optional<Index> Lg, Lb;
  StructureConstants base;     // c, d, p, q of (a, M)
  StructureConstants variant;  // constants of the rectangular lattice the algorithm runs on
  double rho = 1.0;
  int k_time = 0;
};

// L (8q + 4 log2 d) + 4 M N log2(L/p)
double flops_rect_full(Index L, Index a, Index M);
// 8Lq + 4L log2 d + 4MN log2 d + 4MN log2 M
double flops_rect_full_uncollected(Index L, Index a, Index M);
// 8 L Lg / a + 4 N M log2 M
double flops_rect_fir(Index L, Index a, Index M, Index Lg);

FlopEstimate flops_table(const GaborLattice& lat, FlopAlgorithm alg, std::optional<Index> Lg = std::nullopt,
                         std::optional<Index> Lb = std::nullopt);
// Row value from the stored parameters; flops_table fills them in and calls this.
double flops_evaluate(const FlopEstimate& e);
// Shear row selected by whether a frequency-side shear is needed.
FlopEstimate flops_shear(const GaborLattice& lat);

struct CrossoverRow {
  Index lambda1, lambda2, L, a, M;
  std::string algorithm;
  double flops_model;
  double time_ns_median;
  bool freq_shear;
  bool time_shear;
};

struct CrossoverOptions {
  Index lambda2_max = 30;
  Index L_factor = 2520;
  // false: L = lcm(a, M) * L_factor for every lambda2.
  // true:  L = lambda2 * lcm(a, M) * L_factor, the minimal length times the factor.
  bool minimal_length = false;
  int repeats = 5;
  unsigned seed = 0;
  bool measure = true;
  std::function<void(const std::string&)> log;
};

// Rows ordered by lambda2, then multiwin, shear, snf. Infeasible lambda2 are
// skipped and reported through opt.log.
std::vector<CrossoverRow> crossover_scan(Index a, Index M, const CrossoverOptions& opt);

inline constexpr const char* kCrossoverHeader =
    "lambda1,lambda2,L,a,M,algorithm,flops_model,time_ns_median,freq_shear,time_shear";
void write_crossover_csv(std::ostream& os, const std::vector<CrossoverRow>& rows, bool header = true);

}  // namespace nsdgt
