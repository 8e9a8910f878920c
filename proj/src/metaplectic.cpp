#include "nsdgt/metaplectic.hpp"

#include <cmath>
#include <numbers>

#include "nsdgt/error.hpp"
#include "nsdgt/fft.hpp"

namespace nsdgt {

PhaseTable::PhaseTable(Index n) : n_(n), table_(static_cast<std::size_t>(2 * n)) {
  if (n < 1) throw InvalidArgument("phase table size must be positive");
  const Complex quarter[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  for (Index k = 0; k < 2 * n; ++k) {
    if ((2 * k) % n == 0) {
      table_[k] = quarter[(2 * k / n) % 4];
      continue;
    }
    const double t = std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    table_[k] = {std::cos(t), std::sin(t)};
  }
}

Index chirp_exponent(Index L, Index s, Index j) {
  const Index m = 2 * L;
  return mulmod(mulmod(mulmod(j, j, m), s, m), L + 1, m);
}

CVector pchirp(Index L, Index s) {
  PhaseTable tab(L);
  CVector p(static_cast<std::size_t>(L));
  for (Index j = 0; j < L; ++j) p[j] = tab(chirp_exponent(L, s, j));
  return p;
}

CVector tf_shift_apply(TfPoint z, std::span<const Complex> f) {
  const Index L = static_cast<Index>(f.size());
  PhaseTable tab(L);
  CVector out(f.size());
  const Index w = mod(z.omega, L), x = mod(z.x, L);
  for (Index l = 0; l < L; ++l) out[l] = tab(2 * ((l * w) % L)) * f[mod(l - x, L)];
  return out;
}

CVector apply_elementary(const ElementaryOp& op, std::span<const Complex> f) {
  const Index L = static_cast<Index>(f.size());
  switch (op.kind) {
    case ElementaryOp::Kind::Fourier:
      return fft::idft_unitary(f);
    case ElementaryOp::Kind::InvFourier:
      return fft::dft_unitary(f);
    case ElementaryOp::Kind::Chirp: {
      CVector p = pchirp(L, op.param);
      for (Index j = 0; j < L; ++j) p[j] *= f[j];
      return p;
    }
    case ElementaryOp::Kind::Dilation: {
      if (gcd(op.param, L) != 1) throw InvalidArgument("non-invertible dilation");
      const Index ai = inverse_mod(op.param, L);
      CVector out(f.size());
      for (Index j = 0; j < L; ++j) out[j] = f[mulmod(ai, j, L)];
      return out;
    }
  }
  return {f.begin(), f.end()};
}

CVector metaplectic_apply(const WeilFactors& w, std::span<const Complex> f) {
  if (static_cast<Index>(f.size()) != w.L) throw InvalidArgument("signal length does not match factors");
  CVector x(f.begin(), f.end());
  for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) x = apply_elementary(*it, x);
  return x;
}

Index elementary_phase_exponent(const ElementaryOp& op, TfPoint z, Index L) {
  const Index m = 2 * L;
  switch (op.kind) {
    case ElementaryOp::Kind::Fourier:
    case ElementaryOp::Kind::InvFourier:
      return mulmod(2 * mod(z.x, L), z.omega, m);
    case ElementaryOp::Kind::Chirp:
      return mod(-chirp_exponent(L, op.param, z.x), m);
    case ElementaryOp::Kind::Dilation:
      return 0;
  }
  return 0;
}

Complex elementary_phase(const ElementaryOp& op, TfPoint z, Index L) {
  const double t = std::numbers::pi * static_cast<double>(elementary_phase_exponent(op, z, L)) / static_cast<double>(L);
  return {std::cos(t), std::sin(t)};
}

Index metaplectic_phase_exponent(const WeilFactors& w, TfPoint z) {
  const Index L = w.L;
  Index e = 0;
  for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) {
    e = mod(e + elementary_phase_exponent(*it, z, L), 2 * L);
    z = it->matrix(L) * z;
  }
  return e;
}

Complex metaplectic_phase(const WeilFactors& w, TfPoint z) {
  const double t = std::numbers::pi * static_cast<double>(metaplectic_phase_exponent(w, z)) / static_cast<double>(w.L);
  return {std::cos(t), std::sin(t)};
}

WeilFactors shear_factors(Index s0, Index s1, Index L) {
  return {L,
          {ElementaryOp::chirp(mod(-s1, 2 * L)), ElementaryOp::inv_fourier(), ElementaryOp::chirp(mod(s0, 2 * L)),
           ElementaryOp::fourier()}};
}

Index phase_shear_exponent(TfPoint z, Index s0, Index s1, Index L) {
  const Index m = 2 * L;
  const Index y = mod(z.x - mulmod(s0, z.omega, L), L);
  Index e = mulmod(s0, mulmod(z.omega, z.omega, m), m) + mulmod(s1, mulmod(y, y, m), m);
  return mulmod(e, L + 1, m);
}

Complex phase_shear(TfPoint z, Index s0, Index s1, Index L) {
  const double t = std::numbers::pi * static_cast<double>(phase_shear_exponent(z, s0, s1, L)) / static_cast<double>(L);
  return {std::cos(t), std::sin(t)};
}

}  // namespace nsdgt
