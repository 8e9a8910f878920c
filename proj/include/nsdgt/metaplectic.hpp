#pragma once

#include <span>

#include "nsdgt/lattice.hpp"
#include "nsdgt/types.hpp"

namespace nsdgt {

// exp(pi i k / n) for k in [0, 2n), looked up by residue.
class PhaseTable {
 public:
  explicit PhaseTable(Index n);
  Index n() const { return n_; }
  Complex operator()(Index k) const { return table_[static_cast<std::size_t>(mod(k, 2 * n_))]; }

 private:
  Index n_;
  CVector table_;
};

// s * j^2 * (L+1) mod 2L
Index chirp_exponent(Index L, Index s, Index j);
// p(j) = exp(pi i s j^2 (L+1) / L)
CVector pchirp(Index L, Index s);

// (pi(z) f)(l) = exp(2 pi i l omega / L) f(l - x)
CVector tf_shift_apply(TfPoint z, std::span<const Complex> f);

// Fourier: unitary DFT with kernel exp(+2 pi i k l / L) / sqrt(L); its
// symplectic matrix is [[0,-1],[1,0]]. InvFourier is the exp(-...) kernel.
// Chirp(c): multiply by pchirp(L, c). Dilation(a): g(j) = f(a^{-1} j).
CVector apply_elementary(const ElementaryOp& op, std::span<const Complex> f);

// U_{E1} ... U_{En} f, rightmost factor applied first.
CVector metaplectic_apply(const WeilFactors& w, std::span<const Complex> f);

// Phase of U_E pi(z) = phi_E(z) pi(E z) U_E, as an exponent in units of
// pi i / L reduced mod 2L.
Index elementary_phase_exponent(const ElementaryOp& op, TfPoint z, Index L);
Complex elementary_phase(const ElementaryOp& op, TfPoint z, Index L);
Index metaplectic_phase_exponent(const WeilFactors& w, TfPoint z);
Complex metaplectic_phase(const WeilFactors& w, TfPoint z);

// Factor chain of the shear U_{s0,s1} = S_{-s1} F^{-1} S_{s0} F.
WeilFactors shear_factors(Index s0, Index s1, Index L);

// phi with U_{s0,s1} pi(z) = phi(z) pi(U_{s0,s1} z) U_{s0,s1}:
//   exp(pi i (s0 w^2 + s1 (x - s0 w)^2) (L+1) / L)
Index phase_shear_exponent(TfPoint z, Index s0, Index s1, Index L);
Complex phase_shear(TfPoint z, Index s0, Index s1, Index L);

}  // namespace nsdgt
