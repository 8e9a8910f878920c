#include "nsdgt/error.hpp"
#include "nsdgt/nonsep.hpp"

namespace nsdgt {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Auto: return "auto";
    case Algorithm::Naive: return "naive";
    case Algorithm::Separable: return "separable";
    case Algorithm::SeparableFir: return "separable-fir";
    case Algorithm::Shear: return "shear";
    case Algorithm::Multiwin: return "multiwin";
    case Algorithm::Snf: return "snf";
    case Algorithm::ShearOla: return "shear-ola";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& s) {
  for (auto a : {Algorithm::Auto, Algorithm::Naive, Algorithm::Separable, Algorithm::SeparableFir, Algorithm::Shear,
                 Algorithm::Multiwin, Algorithm::Snf, Algorithm::ShearOla})
    if (to_string(a) == s) return a;
  throw InvalidArgument("unknown algorithm '" + s + "'");
}

std::optional<Index> pick_block_length(const GaborLattice& lat, Index Lg) {
  const Index L = lat.L();
  const Index Lmin = min_length(lat.a(), lat.M(), lat.lambda1(), lat.lambda2());
  const Index Lgx = (Lg + Lmin - 1) / Lmin * Lmin;
  for (Index Lb = Lmin; Lb < L; Lb += Lmin) {
    if (L % Lb != 0 || Lb < 2 * Lgx) continue;
    return Lb;
  }
  return std::nullopt;
}

// Support rounded up so the extended block length stays feasible.
static Index padded_support(const GaborLattice& lat, Index Lg) {
  const Index Lmin = min_length(lat.a(), lat.M(), lat.lambda1(), lat.lambda2());
  return (Lg + Lmin - 1) / Lmin * Lmin;
}

Dispatch choose_algorithm(const GaborLattice& lat, const Window& g, const DispatchConfig& cfg) {
  if (lat.separable()) return {g.is_fir() ? Algorithm::SeparableFir : Algorithm::Separable, std::nullopt};
  const bool simple = lat.lambda2() <= cfg.multiwin_max_lambda2;
  const bool short_fir =
      g.is_fir() && static_cast<double>(g.support_length()) <= cfg.ola_max_support_ratio * static_cast<double>(lat.L());
  if (short_fir && !simple) {
    if (auto Lb = pick_block_length(lat, g.support_length())) return {Algorithm::ShearOla, Lb};
  }
  return {simple ? Algorithm::Multiwin : Algorithm::Shear, std::nullopt};
}

CoefGrid dgtns(std::span<const Complex> f, const Window& g, const GaborLattice& lat, Algorithm alg,
               const DispatchConfig& cfg) {
  std::optional<Index> Lb;
  if (alg == Algorithm::Auto) {
    auto d = choose_algorithm(lat, g, cfg);
    alg = d.algorithm;
    Lb = d.block_length;
  }
  switch (alg) {
    case Algorithm::Naive:
      return dgt_naive(f, g, lat);
    case Algorithm::Separable:
    case Algorithm::SeparableFir:
      if (!lat.separable()) throw InvalidArgument("separable algorithm requested for a nonseparable lattice");
      return alg == Algorithm::SeparableFir ? dgt_fir(f, g, lat.a(), lat.M()) : dgt_sep(f, g, lat.a(), lat.M());
    case Algorithm::Shear:
      return dgtns_shear(f, g, lat);
    case Algorithm::Multiwin:
      return dgtns_multiwin(f, g, lat);
    case Algorithm::Snf:
      return dgtns_snf(f, g, lat);
    case Algorithm::ShearOla: {
      if (!g.is_fir()) throw InvalidArgument("shear-OLA requires a FIR window");
      if (!Lb) Lb = pick_block_length(lat, g.support_length());
      if (!Lb) throw InvalidArgument("no admissible OLA block length for this window");
      return dgtns_ola(f, g, lat, OlaConfig(lat.L(), *Lb, padded_support(lat, g.support_length())));
    }
    case Algorithm::Auto:
      break;
  }
  throw InvalidArgument("unhandled algorithm");
}

}  // namespace nsdgt
