#include "nsdgt/dgt.hpp"

#include <cmath>
#include <numbers>

#include "nsdgt/error.hpp"
#include "nsdgt/fft.hpp"
#include "internal.hpp"

namespace nsdgt {

Window Window::fir(std::span<const Complex> taps, Index start, Index L) {
  const Index Lg = static_cast<Index>(taps.size());
  if (Lg > L) throw InvalidArgument("FIR window longer than L");
  CVector v(static_cast<std::size_t>(L));
  for (Index k = 0; k < Lg; ++k) v[mod(start + k, L)] = taps[k];
  Window w(std::move(v));
  w.support_start_ = mod(start, L);
  if (w.support_start_ > L / 2) w.support_start_ -= L;
  w.support_len_ = Lg;
  return w;
}

namespace {

void check_rect(Index L, Index a, Index M) {
  if (a < 1 || M < 1 || L % a != 0 || L % M != 0)
    throw InfeasibleLength(L, lcm(a < 1 ? 1 : a, M < 1 ? 1 : M));
}

// Time steps grouped by an mod M.
struct Polyphase {
  std::vector<Index> residues;
  std::vector<std::vector<Index>> steps;
  Polyphase(Index a, Index M, Index N) {
    const Index c = gcd(a, M);
    std::vector<Index> slot(static_cast<std::size_t>(M / c), -1);
    for (Index n = 0; n < N; ++n) {
      Index v = (a * n) % M;
      auto& s = slot[v / c];
      if (s < 0) {
        s = static_cast<Index>(residues.size());
        residues.push_back(v);
        steps.emplace_back();
      }
      steps[s].push_back(n);
    }
  }
};

}  // namespace

namespace detail {

CVector polyphase_spectra(std::span<const Complex> x, Index M, Index b) {
  CVector out(x.size());
  for (Index r = 0; r < b; ++r)
    for (Index j = 0; j < M; ++j) out[j * b + r] = x[j + r * M];
  fft::forward_many(out.data(), b, M, 1, b);
  return out;
}

}  // namespace detail

CoefGrid dgt_naive(std::span<const Complex> f, const Window& g, const GaborLattice& lat, Index max_L) {
  const Index L = lat.L();
  if (L > max_L) throw SizeLimit("naive DGT with L=" + std::to_string(L));
  if (static_cast<Index>(f.size()) != L || g.length() != L) throw InvalidArgument("signal/window length must equal L");
  const Index M = lat.M(), N = lat.N(), a = lat.a(), l1 = lat.lambda1(), l2 = lat.lambda2();
  const Index K = M * l2;
  CVector tab(static_cast<std::size_t>(K));
  for (Index k = 0; k < K; ++k) tab[k] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(K));

  CoefGrid c(M, N);
  CVector h(static_cast<std::size_t>(L));
  for (Index n = 0; n < N; ++n) {
    for (Index l = 0; l < L; ++l) h[l] = f[l] * std::conj(g[mod(l - a * n, L)]);
    const Index r = (n * l1) % l2;
    for (Index m = 0; m < M; ++m) {
      const Index step = (m * l2 + r) % K;
      Complex acc = 0;
      Index idx = 0;
      for (Index l = 0; l < L; ++l) {
        acc += h[l] * tab[idx];
        idx += step;
        if (idx >= K) idx -= K;
      }
      c(m, n) = acc;
    }
  }
  return c;
}

CoefGrid dgt_sep(std::span<const Complex> f, const Window& g, Index a, Index M) {
  const Index L = static_cast<Index>(f.size());
  check_rect(L, a, M);
  if (g.length() != L) throw InvalidArgument("window length must equal L");
  return detail::dgt_sep_spectra(detail::polyphase_spectra(f, M, L / M), g, a, M);
}

CoefGrid detail::dgt_sep_spectra(std::span<const Complex> F, const Window& g, Index a, Index M) {
  const Index L = g.length();
  const Index b = L / M, N = L / a;

  CVector G = polyphase_spectra(g.values(), M, b);
  for (auto& v : G) v = std::conj(v);

  CoefGrid c(M, N);
  CVector work(static_cast<std::size_t>(L));
  const double scale = 1.0 / static_cast<double>(b);
  Polyphase pp(a, M, N);
  for (std::size_t i = 0; i < pp.residues.size(); ++i) {
    const Index v = pp.residues[i];
    for (Index j = 0; j < M; ++j) {
      const Complex* Fj = &F[j * b];
      const Complex* Gr = &G[mod(j - v, M) * b];
      Complex* w = &work[j * b];
      for (Index k = 0; k < b; ++k) w[k] = Fj[k] * Gr[k];
    }
    fft::backward_many(work.data(), b, M, 1, b);
    for (Index n : pp.steps[i]) {
      const Index u = a * n / M;
      for (Index j = 0; j < M; ++j) {
        Index t = j >= v ? u : u + 1;
        if (t >= b) t -= b;
        c(j, n) = work[j * b + t] * scale;
      }
    }
  }
  fft::forward_many(c.data().data(), M, N, 1, M);
  return c;
}

CoefGrid dgt_fir(std::span<const Complex> f, const Window& g, Index a, Index M) {
  const Index L = static_cast<Index>(f.size());
  check_rect(L, a, M);
  if (g.length() != L) throw InvalidArgument("window length must equal L");
  const Index N = L / a, Lg = g.support_length(), start = g.support_start();

  CVector taps(static_cast<std::size_t>(Lg));
  for (Index k = 0; k < Lg; ++k) taps[k] = std::conj(g[mod(start + k, L)]);

  CoefGrid c(M, N);
  for (Index n = 0; n < N; ++n) {
    auto col = c.column(n);
    Index l = mod(a * n + start, L);
    Index j = l % M;
    for (Index k = 0; k < Lg; ++k) {
      col[j] += f[l] * taps[k];
      if (++l == L) l = 0;
      if (++j == M) j = 0;
    }
  }
  fft::forward_many(c.data().data(), M, N, 1, M);
  return c;
}

CVector idgt_sep(const CoefGrid& c, const Window& gd, Index a, Index M) {
  const Index L = gd.length();
  check_rect(L, a, M);
  const Index b = L / M, N = L / a;
  if (c.channels() != M || c.steps() != N) throw InvalidArgument("coefficient grid dimensions do not match lattice");

  CVector H = c.data();
  fft::backward_many(H.data(), M, N, 1, M);
  CVector G = detail::polyphase_spectra(gd.values(), M, b);

  CVector acc(static_cast<std::size_t>(L)), work(static_cast<std::size_t>(L));
  Polyphase pp(a, M, N);
  for (std::size_t i = 0; i < pp.residues.size(); ++i) {
    const Index v = pp.residues[i];
    std::fill(work.begin(), work.end(), Complex{});
    for (Index n : pp.steps[i]) {
      const Index u = a * n / M;
      const Complex* h = &H[n * M];
      for (Index j = 0; j < M; ++j) {
        Index t = j >= v ? u : u + 1;
        if (t >= b) t -= b;
        work[j * b + t] += h[j];
      }
    }
    fft::forward_many(work.data(), b, M, 1, b);
    for (Index j = 0; j < M; ++j) {
      const Complex* Gr = &G[mod(j - v, M) * b];
      const Complex* w = &work[j * b];
      Complex* o = &acc[j * b];
      for (Index k = 0; k < b; ++k) o[k] += w[k] * Gr[k];
    }
  }
  fft::backward_many(acc.data(), b, M, 1, b);
  CVector f(static_cast<std::size_t>(L));
  const double scale = 1.0 / static_cast<double>(b);
  for (Index r = 0; r < b; ++r)
    for (Index j = 0; j < M; ++j) f[j + r * M] = acc[j * b + r] * scale;
  return f;
}

}  // namespace nsdgt
