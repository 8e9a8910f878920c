#include <cmath>

#include "internal.hpp"
#include "nsdgt/error.hpp"
#include "nsdgt/fft.hpp"
#include "nsdgt/metaplectic.hpp"
#include "nsdgt/nonsep.hpp"

namespace nsdgt {
namespace {

void multiply(CVector& x, const CVector& p, bool conjugate = false) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] *= conjugate ? std::conj(p[i]) : p[i];
}

// Index remap and phase of the shear algorithm. For every coefficient of the
// rectangular transform, target position in the nonseparable grid and the
// phase exponent in units of pi i / N.
struct ShearMap {
  ShearDecomp sd;
  Index L, a, b, M, N;
  Index rows, cols;          // rectangular grid
  std::vector<Index> src;    // rectangular linear index
  std::vector<Index> dst;    // nonseparable linear index
  std::vector<Index> phase;  // mod 2N

  ShearMap(const GaborLattice& lat) : sd(shearfind(lat)) {
    L = lat.L();
    a = lat.a();
    b = lat.b();
    M = lat.M();
    N = lat.N();
    const Index N2 = 2 * N;
    const Index s1 = sd.s1, s0 = sd.s0;
    if (s0 == 0) {
      rows = M;
      cols = N;
      const Index C1 = mulmod(mulmod(s1, a, N2), L + 1, N2);
      reserve(M * N);
      for (Index k = 0; k < N; ++k) {
        const Index E = mulmod(C1, mulmod(k, k, N2), N2);
        const Index base = mod(-mulmod(mulmod(s1, k, L), a, L), L);
        for (Index m = 0; m < M; ++m) {
          const Index row = mod(base + m * b, L) / b;
          push(k * M + m, k * M + row, E);
        }
      }
      return;
    }
    const Index ar = sd.a_r, br = sd.b_r, Mr = sd.M_r, Nr = sd.N_r;
    rows = Nr;
    cols = Mr;
    const Index C1 = mod(ar / a, N2);
    const Index C2 = mod(-(s0 * br / a), N2);
    const Index C3 = mulmod(mulmod(a, s1, N2), L + 1, N2);
    const Index C4 = mulmod(mulmod(C2, br, N2), L + 1, N2);
    const Index C5 = mulmod(2 * C1, br, N2);
    const Index C6 = mulmod(mulmod(s0, s1, L) + 1, br, L);
    const Index s1ar = mulmod(s1, ar, L);
    reserve(Nr * Mr);
    for (Index m = 0; m < Mr; ++m) {
      const Index C4m = mulmod(C4, m, N2), C2m = mulmod(C2, m, N2), C6m = mulmod(C6, m, L);
      for (Index k = 0; k < Nr; ++k) {
        const Index sq1 = mod(mulmod(C1, k, N2) + C2m, N2);
        const Index E = mod(mulmod(C3, mulmod(sq1, sq1, N2), N2) - mulmod(m, mod(C4m + mulmod(C5, k, N2), N2), N2), N2);
        const Index mt = sq1 % N;
        const Index kt = mod(C6m - mulmod(s1ar, k, L), L) / b;
        push(m * Nr + mod(-k, Nr), mt * M + kt, E);
      }
    }
  }

  void reserve(Index n) {
    src.reserve(static_cast<std::size_t>(n));
    dst.reserve(static_cast<std::size_t>(n));
    phase.reserve(static_cast<std::size_t>(n));
  }
  void push(Index s, Index d, Index e) {
    src.push_back(s);
    dst.push_back(d);
    phase.push_back(e);
  }
};

// Windows entering the rectangular transform.
struct ShearInputs {
  CVector chirp1;  // pchirp(L, s1) or empty
  CVector chirp0;  // pchirp(L, -s0) or empty
};

ShearInputs make_chirps(const ShearDecomp& sd, Index L) {
  ShearInputs in;
  if (sd.s1 != 0) in.chirp1 = pchirp(L, sd.s1);
  if (sd.s0 != 0) in.chirp0 = pchirp(L, -sd.s0);
  return in;
}

// Time chirp, then for the frequency-side path p0 * fft(.) with optional 1/L.
CVector shear_forward(std::span<const Complex> x, const ShearInputs& in, bool window) {
  CVector y(x.begin(), x.end());
  if (!in.chirp1.empty()) multiply(y, in.chirp1);
  if (!in.chirp0.empty()) {
    fft::forward(y, y);
    multiply(y, in.chirp0);
    if (window) {
      const double s = 1.0 / static_cast<double>(y.size());
      for (auto& v : y) v *= s;
    }
  }
  return y;
}

}  // namespace

CoefGrid dgtns_shear(std::span<const Complex> f, const Window& g, const GaborLattice& lat) {
  const Index L = lat.L();
  if (static_cast<Index>(f.size()) != L || g.length() != L) throw InvalidArgument("signal/window length must equal L");
  ShearMap map(lat);
  const auto& sd = map.sd;
  ShearInputs in = make_chirps(sd, L);
  CVector f1 = shear_forward(f, in, false);
  Window g1(shear_forward(g.values(), in, true));

  CoefGrid cr;
  if (sd.s0 == 0) {
    if (g.is_fir()) {
      CVector taps(static_cast<std::size_t>(g.support_length()));
      for (Index k = 0; k < g.support_length(); ++k) taps[k] = g1[mod(g.support_start() + k, L)];
      cr = dgt_fir(f1, Window::fir(taps, g.support_start(), L), lat.a(), lat.M());
    } else {
      cr = dgt_sep(f1, g1, lat.a(), lat.M());
    }
  } else {
    cr = dgt_sep(f1, g1, sd.b_r, sd.N_r);
  }

  PhaseTable tab(map.N);
  CoefGrid c(lat.M(), lat.N());
  auto& out = c.data();
  const auto& rect = cr.data();
  for (std::size_t i = 0; i < map.src.size(); ++i) out[map.dst[i]] = tab(map.phase[i]) * rect[map.src[i]];
  return c;
}

CVector idgtns(const CoefGrid& c, const Window& gd, const GaborLattice& lat) {
  const Index L = lat.L();
  if (gd.length() != L) throw InvalidArgument("window length must equal L");
  if (c.channels() != lat.M() || c.steps() != lat.N())
    throw InvalidArgument("coefficient grid dimensions do not match lattice");
  ShearMap map(lat);
  const auto& sd = map.sd;
  ShearInputs in = make_chirps(sd, L);
  Window g1(shear_forward(gd.values(), in, true));

  PhaseTable tab(map.N);
  CoefGrid cr(map.rows, map.cols);
  auto& rect = cr.data();
  const auto& src = c.data();
  for (std::size_t i = 0; i < map.src.size(); ++i) rect[map.src[i]] = std::conj(tab(map.phase[i])) * src[map.dst[i]];

  CVector f;
  if (sd.s0 == 0) {
    f = idgt_sep(cr, g1, lat.a(), lat.M());
  } else {
    f = idgt_sep(cr, g1, sd.b_r, sd.N_r);
    multiply(f, in.chirp0, true);
    fft::backward(f, f);
  }
  if (!in.chirp1.empty()) multiply(f, in.chirp1, true);
  return f;
}

Window gabdualns(const Window& g, const GaborLattice& lat, const SolverOptions& opt) {
  const Index L = lat.L();
  if (g.length() != L) throw InvalidArgument("window length must equal L");
  detail::throw_if_not_frame(g, lat, opt);
  const ShearDecomp sd = shearfind(lat);
  CVector x = g.values();
  CVector p1;
  if (sd.s1 != 0) {
    p1 = pchirp(L, sd.s1);
    multiply(x, p1);
  }
  CVector gd;
  if (sd.s0 == 0) {
    gd = gabdual_sep(Window(x), sd.a_r, sd.M_r, opt).values();
  } else {
    CVector p0 = pchirp(L, -sd.s0);
    x = fft::fft(x);
    multiply(x, p0);
    gd = gabdual_sep(Window(x), L / sd.M_r, L / sd.a_r, opt).values();
    for (auto& v : gd) v *= static_cast<double>(L);
    multiply(gd, p0, true);
    gd = fft::ifft(gd);
  }
  if (!p1.empty()) multiply(gd, p1, true);
  return Window(std::move(gd));
}

Window gabtightns(const Window& g, const GaborLattice& lat, const SolverOptions& opt) {
  const Index L = lat.L();
  if (g.length() != L) throw InvalidArgument("window length must equal L");
  if (lat.a() * lat.b() > L) throw NotAFrame("redundancy below 1");
  const ShearDecomp sd = shearfind(lat);
  CVector x = g.values();
  CVector p1;
  if (sd.s1 != 0) {
    p1 = pchirp(L, sd.s1);
    multiply(x, p1);
  }
  CVector gt;
  if (sd.s0 == 0) {
    gt = gabtight_sep(Window(x), sd.a_r, sd.M_r, opt).values();
  } else {
    CVector p0 = pchirp(L, -sd.s0);
    x = fft::dft_unitary(x);
    multiply(x, p0);
    gt = gabtight_sep(Window(x), L / sd.M_r, L / sd.a_r, opt).values();
    multiply(gt, p0, true);
    gt = fft::idft_unitary(gt);
  }
  if (!p1.empty()) multiply(gt, p1, true);
  return Window(std::move(gt));
}

}  // namespace nsdgt
