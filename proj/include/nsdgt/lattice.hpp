#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nsdgt/types.hpp"

namespace nsdgt {

struct Bezout {
  Index g;
  Index k1;
  Index k2;
};

// k1*x + k2*y = g = gcd(x, y) > 0.
Bezout ext_gcd(Index x, Index y);

Index gcd(Index x, Index y);
Index lcm(Index x, Index y);
// Representative in [0, m).
Index mod(Index x, Index m);
Index mulmod(Index x, Index y, Index m);
// Throws InvalidArgument when gcd(x, m) != 1.
Index inverse_mod(Index x, Index m);
// Trial division; (prime, exponent) ascending.
std::vector<std::pair<Index, int>> factorize(Index n);
// Largest e with p^e | x; x == 0 gives a large sentinel.
int valuation(Index x, Index p);

// Plain 2x2 integer matrix (not reduced).
struct IntMat2 {
  Index a11 = 1, a12 = 0, a21 = 0, a22 = 1;
  Index det() const { return a11 * a22 - a12 * a21; }
  IntMat2 operator*(const IntMat2& o) const;
  friend bool operator==(const IntMat2&, const IntMat2&) = default;
};

class Mat2L {
 public:
  Mat2L(Index a11, Index a12, Index a21, Index a22, Index L);
  Mat2L(const IntMat2& m, Index L) : Mat2L(m.a11, m.a12, m.a21, m.a22, L) {}
  static Mat2L identity(Index L) { return Mat2L(1, 0, 0, 1, L); }

  Index modulus() const { return L_; }
  Index a11() const { return e_[0]; }
  Index a12() const { return e_[1]; }
  Index a21() const { return e_[2]; }
  Index a22() const { return e_[3]; }
  Index det() const;

  Mat2L operator*(const Mat2L& o) const;
  TfPoint operator*(const TfPoint& z) const;
  // Adjugate; equals the inverse when det == 1.
  Mat2L adjugate() const;
  bool is_diagonal() const { return e_[1] == 0 && e_[2] == 0; }

  friend bool operator==(const Mat2L&, const Mat2L&) = default;
  std::string str() const;

 private:
  Index e_[4];
  Index L_;
};

class GaborLattice {
 public:
  // Throws InfeasibleLength if L is not a multiple of lambda2*lcm(a, M).
  static GaborLattice from_params(Index L, Index a, Index M, Index lambda1, Index lambda2);
  // Validates the normal-form conditions.
  static GaborLattice from_normal_form(Index L, Index a, Index b, Index s);

  Index L() const { return L_; }
  Index a() const { return a_; }
  Index b() const { return b_; }
  Index s() const { return s_; }
  Index M() const { return L_ / b_; }
  Index N() const { return L_ / a_; }
  Index lambda1() const { return lambda1_; }
  Index lambda2() const { return lambda2_; }
  bool separable() const { return s_ == 0; }
  double redundancy() const { return static_cast<double>(L_) / static_cast<double>(a_ * b_); }
  Mat2L generator() const { return Mat2L(a_, 0, s_, b_, L_); }
  // Frequency offset of time step n in bins: (n*s mod b).
  Index offset(Index n) const { return mod(n * s_, b_); }

  friend bool operator==(const GaborLattice&, const GaborLattice&) = default;
  std::string str() const;

 private:
  GaborLattice(Index L, Index a, Index b, Index s);
  Index L_, a_, b_, s_, lambda1_, lambda2_;
};

struct StructureConstants {
  Index c, d, p, q;
};

StructureConstants constants(const GaborLattice& lat);
// c, d, p, q for the rectangular lattice (a, L/M).
StructureConstants rect_constants(Index L, Index a, Index M);

GaborLattice normal_form(const Mat2L& A);
Mat2L upper_form(const GaborLattice& lat);

// Sorted point set; throws SizeLimit above max_L.
std::vector<TfPoint> lattice_points(const GaborLattice& lat, Index max_L = 4096);
std::vector<TfPoint> span_points(const Mat2L& A, Index max_L = 4096);

Index min_length(Index a, Index M, Index lambda1, Index lambda2);
bool is_feasible(Index L, Index a, Index M, Index lambda1, Index lambda2);

struct NoShearFactor {
  Index c1;
  Index factor;
};
NoShearFactor noshear_factor(Index a, Index M, Index lambda1, Index lambda2);

struct MultiwinDecomp {
  Index lambda2;
  Index base_a;
  Index base_b;
  std::vector<TfPoint> offsets;
};
MultiwinDecomp multiwin_decomp(const GaborLattice& lat);

struct SmithDecomp {
  IntMat2 P_int, D_int, V_int;  // over Z, det P = det V = 1
  Mat2L P, D, V;                // reduced mod L
  Index d1, d2;
};
SmithDecomp smith2x2(const IntMat2& A, Index L);

// Chirp parameters matter mod 2L on signals (pchirp(L, c + L) differs from
// pchirp(L, c) by (-1)^j for even L), so inverses negate them mod 2L.
struct ElementaryOp {
  enum class Kind { Fourier, InvFourier, Chirp, Dilation };
  Kind kind;
  Index param = 0;

  static ElementaryOp fourier() { return {Kind::Fourier, 0}; }
  static ElementaryOp inv_fourier() { return {Kind::InvFourier, 0}; }
  static ElementaryOp chirp(Index c) { return {Kind::Chirp, c}; }
  static ElementaryOp dilation(Index a) { return {Kind::Dilation, a}; }

  Mat2L matrix(Index L) const;
  ElementaryOp inverse(Index L) const;
  std::string str() const;
};

struct WeilFactors {
  Index L;
  std::vector<ElementaryOp> factors;
  Mat2L product() const;
  WeilFactors inverse() const;
};

WeilFactors weil_decompose(const Mat2L& M);

struct ShearDecomp {
  Index s0 = 0;
  Index s1 = 0;
  Index b_r = 0;
  Index a_r = 0;
  Index M_r = 0;
  Index N_r = 0;
  Mat2L V = Mat2L::identity(1);  // U^{-1} A = diag(a_r, b_r) V
  bool freq_shear_needed() const { return s0 != 0; }
  bool time_shear_needed() const { return s1 != 0; }
};

// U_{s0,s1} = [[1, -s0], [-s1, s0*s1 + 1]] and its inverse [[s0*s1 + 1, s0], [s1, 1]].
Mat2L shear_matrix(Index s0, Index s1, Index L);
Mat2L shear_matrix_inverse(Index s0, Index s1, Index L);

ShearDecomp shearfind(Index L, Index a, Index M, Index lambda1, Index lambda2);
ShearDecomp shearfind(const GaborLattice& lat);

}  // namespace nsdgt
