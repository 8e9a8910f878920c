#include "internal.hpp"
#include "nsdgt/error.hpp"
#include "nsdgt/metaplectic.hpp"
#include "nsdgt/nonsep.hpp"

namespace nsdgt {

std::vector<Window> multiwin_windows(const Window& g, const GaborLattice& lat) {
  const Index L = lat.L();
  const auto md = multiwin_decomp(lat);
  PhaseTable tab(L);
  std::vector<Window> out;
  for (const auto& off : md.offsets) {
    CVector v(static_cast<std::size_t>(L));
    for (Index l = 0; l < L; ++l) v[l] = tab(2 * mulmod(l, off.omega, L)) * g[mod(l - off.x, L)];
    if (g.is_fir()) {
      const Index start = g.support_start() + off.x;
      CVector taps(static_cast<std::size_t>(g.support_length()));
      for (Index k = 0; k < g.support_length(); ++k) taps[k] = v[mod(start + k, L)];
      out.push_back(Window::fir(taps, start, L));
    } else {
      out.emplace_back(std::move(v));
    }
  }
  return out;
}

CoefGrid dgtns_multiwin(std::span<const Complex> f, const Window& g, const GaborLattice& lat) {
  const Index L = lat.L();
  if (static_cast<Index>(f.size()) != L || g.length() != L) throw InvalidArgument("signal/window length must equal L");
  const Index M = lat.M(), l2 = lat.lambda2(), at = l2 * lat.a(), Nt = L / at;
  const auto md = multiwin_decomp(lat);
  const auto windows = multiwin_windows(g, lat);
  PhaseTable tab(L);
  CoefGrid c(M, lat.N());
  CVector F;
  if (!g.is_fir()) F = detail::polyphase_spectra(f, M, L / M);
  for (Index m = 0; m < l2; ++m) {
    const Window& gm = windows[m];
    CoefGrid cm = gm.is_fir() ? dgt_fir(f, gm, at, M) : detail::dgt_sep_spectra(F, gm, at, M);
    const Index sigma = md.offsets[m].omega;
    for (Index nt = 0; nt < Nt; ++nt) {
      const Complex ph = tab(-2 * mulmod(mulmod(nt, at, L), sigma, L));
      auto src = cm.column(nt);
      auto dst = c.column(nt * l2 + m);
      for (Index k = 0; k < M; ++k) dst[k] = ph * src[k];
    }
  }
  return c;
}

Window gabdualns_cg(const Window& g, const GaborLattice& lat, const SolverOptions& opt) {
  const Index L = lat.L();
  if (g.length() != L) throw InvalidArgument("window length must equal L");
  detail::throw_if_not_frame(g, lat, opt);
  const Index M = lat.M(), at = lat.lambda2() * lat.a();
  std::vector<Window> windows;
  for (const auto& w : multiwin_windows(g, lat)) windows.push_back(w.to_full());
  auto S = [&](std::span<const Complex> x) {
    CVector y(x.size());
    for (const auto& gm : windows) {
      CVector part = idgt_sep(dgt_sep(x, gm, at, M), gm, at, M);
      for (std::size_t i = 0; i < y.size(); ++i) y[i] += part[i];
    }
    return y;
  };
  auto diag = detail::frame_diagonal(g, lat.a(), M);
  return Window(detail::pcg_solve(S, diag, g.values(), opt));
}

}  // namespace nsdgt
