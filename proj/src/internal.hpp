#pragma once

#include <functional>
#include <span>

#include "nsdgt/dgt.hpp"

namespace nsdgt::detail {

using LinearOp = std::function<CVector(std::span<const Complex>)>;

// Jacobi-preconditioned conjugate gradient for a Hermitian positive definite
// operator. Throws NotAFrame if the accepted tolerance is not reached.
CVector pcg_solve(const LinearOp& S, std::span<const double> diag, std::span<const Complex> rhs,
                  const SolverOptions& opt);

// Diagonal of the frame operator: M * sum_n |g(j - a n)|^2.
std::vector<double> frame_diagonal(const Window& g, Index a, Index M);

double rel_error(std::span<const Complex> x, std::span<const Complex> ref);

// x(j + r M) -> out[j b + r], then length-b FFT of every row.
CVector polyphase_spectra(std::span<const Complex> x, Index M, Index b);
// dgt_sep with the signal already passed through polyphase_spectra.
CoefGrid dgt_sep_spectra(std::span<const Complex> F, const Window& g, Index a, Index M);

void throw_if_not_frame(const Window& g, const GaborLattice& lat, const SolverOptions& opt);

}  // namespace nsdgt::detail
