#include "nsdgt/error.hpp"
#include "nsdgt/metaplectic.hpp"
#include "nsdgt/nonsep.hpp"

namespace nsdgt {

OlaConfig::OlaConfig(Index L, Index block_length, Index window_support)
    : L_(L), Lb_(block_length), Lg_(window_support) {
  if (Lb_ < 1 || L_ % Lb_ != 0) throw InvalidArgument("block length must divide L");
  if (Lg_ < 1) throw InvalidArgument("window support must be positive");
  if (Lb_ <= Lg_) throw InvalidArgument("block length must exceed window support");
}

CoefGrid dgtns_ola(std::span<const Complex> f, const Window& g, const GaborLattice& lat, const OlaConfig& cfg) {
  const Index L = lat.L();
  if (static_cast<Index>(f.size()) != L || g.length() != L) throw InvalidArgument("signal/window length must equal L");
  if (g.support_length() > cfg.window_support()) throw InvalidArgument("block length must exceed window support");
  if (cfg.blocks() == 1) return dgtns_shear(f, g, lat);

  const Index a = lat.a(), M = lat.M(), N = lat.N(), l1 = lat.lambda1(), l2 = lat.lambda2();
  const Index Lb = cfg.block_length(), Lg = cfg.window_support(), Lx = cfg.extended_length();
  const Index o = g.support_start();
  const Index step = a * l2;
  if (Lx % min_length(a, M, l1, l2) != 0)
    throw InvalidArgument("extended block length " + std::to_string(Lx) + " is not feasible for the lattice");
  const auto lat_x = GaborLattice::from_params(Lx, a, M, l1, l2);
  const Index Nx = Lx / a;

  // Local window: support [o, o + Lg) placed circularly in Z_Lx.
  CVector gx(static_cast<std::size_t>(Lx));
  for (Index u = o; u < o + Lg; ++u) gx[mod(u, Lx)] = g[mod(u, L)];
  const Window gxw(std::move(gx));

  const Index K = M * l2;
  PhaseTable tab(K);
  CoefGrid c(M, N);
  CVector fx(static_cast<std::size_t>(Lx));
  for (Index j = 0; j < cfg.blocks(); ++j) {
    const Index lo = j * Lb - o - Lg + 1, hi = j * Lb + Lb - 1 - o;
    const Index start = step * (lo >= 0 ? lo / step : -((-lo + step - 1) / step));
    std::fill(fx.begin(), fx.end(), Complex{});
    for (Index l = j * Lb; l < (j + 1) * Lb; ++l) fx[mod(l - start, Lx)] = f[l];
    const CoefGrid cx = dgtns_shear(fx, gxw, lat_x);

    const Index n0 = start / a;
    const Index nlo = lo >= 0 ? (lo + a - 1) / a : -((-lo) / a);
    const Index nhi = hi >= 0 ? hi / a : -((-hi + a - 1) / a);
    for (Index n = nlo; n <= nhi; ++n) {
      const Index nl = mod(n - n0, Nx), ng = mod(n, N);
      const Index r = mod(n * l1, l2);
      auto src = cx.column(nl);
      auto dst = c.column(ng);
      // exp(-2 pi i start (m lambda2 + r) / (M lambda2))
      for (Index m = 0; m < M; ++m) dst[m] += tab(-2 * mulmod(start, m * l2 + r, K)) * src[m];
    }
  }
  return c;
}

}  // namespace nsdgt
