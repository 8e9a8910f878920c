#pragma once

#include <Eigen/Dense>
#include <span>

#include "nsdgt/lattice.hpp"
#include "nsdgt/types.hpp"

namespace nsdgt {

// c(m,n) = sum_l f(l) conj(g(l - a n)) exp(-2 pi i l (m + w(n)) / M),
// w(n) = (n lambda1 mod lambda2) / lambda2.  Direct summation.
CoefGrid dgt_naive(std::span<const Complex> f, const Window& g, const GaborLattice& lat, Index max_L = 8192);

// Rectangular lattice (a, L/M).
CoefGrid dgt_sep(std::span<const Complex> f, const Window& g, Index a, Index M);
// Same contract, touches only the window support.
CoefGrid dgt_fir(std::span<const Complex> f, const Window& g, Index a, Index M);
// f = sum_{m,n} c(m,n) M_{mb} T_{an} gd; adjoint of dgt_sep.
CVector idgt_sep(const CoefGrid& c, const Window& gd, Index a, Index M);

CVector frame_op_apply(std::span<const Complex> f, const Window& g, const GaborLattice& lat);
Eigen::MatrixXcd frame_matrix(const Window& g, const GaborLattice& lat, Index max_L = 256);

// The frame operator is block diagonal over residues mod M; block rho acts on
// samples rho, rho + M, ..., rho + (b-1) M.
Eigen::MatrixXcd frame_block(const Window& g, const GaborLattice& lat, Index rho);

struct FrameBounds {
  double lower;
  double upper;
};
// Exact bounds from the blocks. Only gcd(a, M) blocks are distinct up to
// unitary similarity.
FrameBounds frame_bounds(const Window& g, const GaborLattice& lat);

struct SolverOptions {
  double tolerance = 1e-12;  // accepted relative residual
  double target = 1e-14;     // keep iterating until this or stagnation
  Index max_iter_factor = 10;
  double frame_ratio = 1e-10;   // smallest/largest eigenvalue threshold
  double eigencheck_budget = 2e8;
};

Window gabdual_sep(const Window& g, Index a, Index M, const SolverOptions& opt = {});
Window gabtight_sep(const Window& g, Index a, Index M, const SolverOptions& opt = {});

// Periodized Gaussian of unit norm; tfr = a*M/L matches the lattice.
Window pgauss(Index L, double tfr);

}  // namespace nsdgt
