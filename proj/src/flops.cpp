#include "nsdgt/flops.hpp"

#include <cmath>

#include "nsdgt/error.hpp"

namespace nsdgt {

std::string to_string(FlopAlgorithm a) {
  switch (a) {
    case FlopAlgorithm::MwFir: return "mw_fir";
    case FlopAlgorithm::MwFull: return "mw_full";
    case FlopAlgorithm::Snf: return "snf";
    case FlopAlgorithm::ShearNoFreq: return "shear_no_freq";
    case FlopAlgorithm::ShearFreq: return "shear_freq";
    case FlopAlgorithm::ShearOlaNoFreq: return "shear_ola_no_freq";
    case FlopAlgorithm::ShearOlaFreq: return "shear_ola_freq";
    case FlopAlgorithm::RectFull: return "rect_full";
    case FlopAlgorithm::RectFir: return "rect_fir";
  }
  return "?";
}

namespace {

double lg(double x) { return std::log2(x); }
double D(Index x) { return static_cast<double>(x); }

}  // namespace

double flops_rect_full(Index L, Index a, Index M) {
  auto k = rect_constants(L, a, M);
  const double N = D(L / a);
  return D(L) * (8 * D(k.q) + 4 * lg(D(k.d))) + 4 * D(M) * N * lg(D(L) / D(k.p));
}

double flops_rect_full_uncollected(Index L, Index a, Index M) {
  auto k = rect_constants(L, a, M);
  const double N = D(L / a), MN = D(M) * N;
  return 8 * D(L) * D(k.q) + 4 * D(L) * lg(D(k.d)) + 4 * MN * lg(D(k.d)) + 4 * MN * lg(D(M));
}

double flops_rect_fir(Index L, Index a, Index M, Index Lg) {
  const double N = D(L / a);
  return 8 * D(L) * D(Lg) / D(a) + 4 * N * D(M) * lg(D(M));
}

double flops_evaluate(const FlopEstimate& e) {
  const Index L = e.L, a = e.a, M = e.M, l2 = e.lambda2;
  const auto [c, d, p, q] = e.base;
  (void)c;
  const double dL = D(L), MN = D(M) * D(L) / D(a), kt = e.k_time, r = e.rho;
  const auto& v = e.variant;
  auto need = [&](const std::optional<Index>& x, const char* what) {
    if (!x) throw InvalidArgument(to_string(e.algorithm) + " requires " + what);
    return D(*x);
  };
  switch (e.algorithm) {
    case FlopAlgorithm::RectFull:
      return dL * (8 * D(q) + 4 * lg(D(d))) + 4 * MN * lg(dL / D(p));
    case FlopAlgorithm::RectFir:
    case FlopAlgorithm::MwFir:
      return 8 * dL * need(e.Lg, "the window length L_g") / D(a) + 4 * MN * lg(D(M));
    case FlopAlgorithm::MwFull:
      return dL * D(l2) * (8 * D(v.q) + 4 * lg(D(v.d))) + MN * (4 * lg(dL / D(v.p)) + 6);
    case FlopAlgorithm::Snf:
      return dL * (8 * D(q) + 4 * lg(D(v.d)) + 8 * lg(dL) + 18) + MN * (4 * lg(dL / D(p)) + 6);
    case FlopAlgorithm::ShearNoFreq:
      return dL * (8 * D(q) + 4 * lg(D(d)) + 6 * kt) + MN * (4 * lg(dL / D(p)) + 6 * kt);
    case FlopAlgorithm::ShearFreq:
      return dL * (8 * D(q) + 4 * lg(dL * D(v.c)) + 6 + 6 * kt) + MN * (4 * lg(dL / D(p)) + 6);
    case FlopAlgorithm::ShearOlaNoFreq: {
      const double Lb = need(e.Lb, "the block length L_b");
      return r * dL * (8 * D(q) + 4 * lg(r * D(v.d)) + 6 * kt) + r * MN * (4 * lg(r * Lb / D(p)) + 6 * kt);
    }
    case FlopAlgorithm::ShearOlaFreq: {
      const double Lb = need(e.Lb, "the block length L_b");
      return r * dL * (8 * D(q) + 4 * lg(r * dL * D(v.c)) + 6 * kt + 6) + r * MN * (4 * lg(r * Lb / D(p)) + 6);
    }
  }
  return 0;
}

FlopEstimate flops_table(const GaborLattice& lat, FlopAlgorithm alg, std::optional<Index> Lg, std::optional<Index> Lb) {
  const Index L = lat.L(), a = lat.a(), M = lat.M(), l2 = lat.lambda2();
  FlopEstimate e{alg, 0, L, a, M, lat.lambda1(), l2, Lg, Lb, constants(lat), constants(lat), 1.0, 0};
  switch (alg) {
    case FlopAlgorithm::RectFull:
    case FlopAlgorithm::RectFir:
      break;
    case FlopAlgorithm::MwFir:
    case FlopAlgorithm::MwFull:
      e.variant = rect_constants(L, l2 * a, M);
      break;
    case FlopAlgorithm::Snf: {
      auto sm = smith2x2(IntMat2{a, 0, lat.s(), lat.b()}, L);
      e.variant = rect_constants(L, gcd(sm.d1, L), L / gcd(sm.d2, L));
      break;
    }
    case FlopAlgorithm::ShearNoFreq:
    case FlopAlgorithm::ShearFreq: {
      auto sd = shearfind(lat);
      e.k_time = sd.s1 != 0;
      e.variant = rect_constants(L, sd.a_r, sd.M_r);
      break;
    }
    case FlopAlgorithm::ShearOlaNoFreq:
    case FlopAlgorithm::ShearOlaFreq: {
      if (!Lg || !Lb) throw InvalidArgument(to_string(alg) + " requires the window length L_g and block length L_b");
      const Index Lx = *Lb + *Lg;
      auto sd = shearfind(Lx, a, M, lat.lambda1(), l2);
      e.k_time = sd.s1 != 0;
      e.variant = rect_constants(Lx, sd.a_r, sd.M_r);
      e.rho = D(*Lg + *Lb) / D(*Lb);
      break;
    }
  }
  e.flops = flops_evaluate(e);
  return e;
}

FlopEstimate flops_shear(const GaborLattice& lat) {
  auto sd = shearfind(lat);
  return flops_table(lat, sd.s0 != 0 ? FlopAlgorithm::ShearFreq : FlopAlgorithm::ShearNoFreq);
}

}  // namespace nsdgt
