#include "nsdgt/error.hpp"
#include "nsdgt/metaplectic.hpp"
#include "nsdgt/nonsep.hpp"

namespace nsdgt {

CoefGrid dgtns_snf(std::span<const Complex> f, const Window& g, const GaborLattice& lat) {
  const Index L = lat.L();
  if (static_cast<Index>(f.size()) != L || g.length() != L) throw InvalidArgument("signal/window length must equal L");
  const Index a = lat.a(), b = lat.b(), s = lat.s(), M = lat.M(), N = lat.N();
  const SmithDecomp sm = smith2x2(IntMat2{a, 0, s, b}, L);
  const WeilFactors W = weil_decompose(sm.P);
  const WeilFactors Wi = W.inverse();
  const Mat2L Pinv = sm.P.adjugate();

  const Index ap = gcd(sm.d1, L), bp = gcd(sm.d2, L);
  CVector ft = metaplectic_apply(Wi, f);
  Window gt(metaplectic_apply(Wi, g.values()));
  CoefGrid cs = dgt_sep(ft, gt, ap, L / bp);

  PhaseTable tab(L);
  CoefGrid c(M, N);
  for (Index n = 0; n < N; ++n) {
    for (Index m = 0; m < M; ++m) {
      const TfPoint z{a * n, m * b + lat.offset(n)};
      const TfPoint lam = Pinv * z;
      c(m, n) = tab(metaplectic_phase_exponent(W, lam)) * cs(lam.omega / bp, lam.x / ap);
    }
  }
  return c;
}

}  // namespace nsdgt
