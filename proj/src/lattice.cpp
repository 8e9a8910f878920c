#include "nsdgt/lattice.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "nsdgt/error.hpp"

namespace nsdgt {

Bezout ext_gcd(Index x, Index y) {
  if (x == 0 && y == 0) throw InvalidArgument("undefined gcd");
  Index r0 = x, r1 = y, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    Index q = r0 / r1;
    Index tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (r0 < 0) return {-r0, -s0, -t0};
  return {r0, s0, t0};
}

Index gcd(Index x, Index y) {
  x = x < 0 ? -x : x;
  y = y < 0 ? -y : y;
  while (y != 0) {
    Index t = x % y;
    x = y;
    y = t;
  }
  return x;
}

Index lcm(Index x, Index y) {
  if (x == 0 || y == 0) return 0;
  return x / gcd(x, y) * y;
}

Index mod(Index x, Index m) {
  Index r = x % m;
  return r < 0 ? r + m : r;
}

Index mulmod(Index x, Index y, Index m) {
  __int128 r = static_cast<__int128>(mod(x, m)) * mod(y, m);
  return static_cast<Index>(r % m);
}

Index inverse_mod(Index x, Index m) {
  if (m == 1) return 0;
  auto [g, k1, k2] = ext_gcd(mod(x, m), m);
  (void)k2;
  if (g != 1) throw InvalidArgument("non-invertible element " + std::to_string(x) + " mod " + std::to_string(m));
  return mod(k1, m);
}

std::vector<std::pair<Index, int>> factorize(Index n) {
  std::vector<std::pair<Index, int>> out;
  if (n < 0) n = -n;
  for (Index p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

int valuation(Index x, Index p) {
  if (x == 0) return 1 << 20;
  x = x < 0 ? -x : x;
  int e = 0;
  while (x % p == 0) {
    x /= p;
    ++e;
  }
  return e;
}

static Index ipow(Index p, int e) {
  Index r = 1;
  while (e-- > 0) r *= p;
  return r;
}

IntMat2 IntMat2::operator*(const IntMat2& o) const {
  return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22, a21 * o.a11 + a22 * o.a21,
          a21 * o.a12 + a22 * o.a22};
}

// ---- Mat2L

Mat2L::Mat2L(Index a11, Index a12, Index a21, Index a22, Index L)
    : e_{mod(a11, L), mod(a12, L), mod(a21, L), mod(a22, L)}, L_(L) {
  if (L < 1) throw InvalidArgument("modulus must be positive");
}

Index Mat2L::det() const { return mod(mulmod(e_[0], e_[3], L_) - mulmod(e_[1], e_[2], L_), L_); }

Mat2L Mat2L::operator*(const Mat2L& o) const {
  if (o.L_ != L_) throw InvalidArgument("modulus mismatch");
  auto mm = [&](Index x, Index y) { return mulmod(x, y, L_); };
  return Mat2L(mm(e_[0], o.e_[0]) + mm(e_[1], o.e_[2]), mm(e_[0], o.e_[1]) + mm(e_[1], o.e_[3]),
               mm(e_[2], o.e_[0]) + mm(e_[3], o.e_[2]), mm(e_[2], o.e_[1]) + mm(e_[3], o.e_[3]), L_);
}

TfPoint Mat2L::operator*(const TfPoint& z) const {
  return {mod(mulmod(e_[0], z.x, L_) + mulmod(e_[1], z.omega, L_), L_),
          mod(mulmod(e_[2], z.x, L_) + mulmod(e_[3], z.omega, L_), L_)};
}

Mat2L Mat2L::adjugate() const { return Mat2L(e_[3], -e_[1], -e_[2], e_[0], L_); }

std::string Mat2L::str() const {
  std::ostringstream os;
  os << "[[" << e_[0] << "," << e_[1] << "],[" << e_[2] << "," << e_[3] << "]] mod " << L_;
  return os.str();
}

// ---- GaborLattice

GaborLattice::GaborLattice(Index L, Index a, Index b, Index s) : L_(L), a_(a), b_(b), s_(s) {
  Index g = gcd(s, b);
  lambda1_ = s / g;
  lambda2_ = b / g;
}

GaborLattice GaborLattice::from_params(Index L, Index a, Index M, Index lambda1, Index lambda2) {
  if (a < 1 || M < 1) throw InvalidArgument("a and M must be positive");
  if (lambda2 < 1 || lambda1 < 0 || lambda1 >= lambda2)
    throw InvalidArgument("lambda must satisfy 0 <= lambda1 < lambda2");
  if (gcd(lambda1, lambda2) != 1) throw InvalidArgument("lambda1/lambda2 must be irreducible");
  Index Lmin = min_length(a, M, lambda1, lambda2);
  if (L < 1 || L % Lmin != 0) throw InfeasibleLength(L, Lmin);
  Index b = L / M;
  return GaborLattice(L, a, b, b / lambda2 * lambda1);
}

GaborLattice GaborLattice::from_normal_form(Index L, Index a, Index b, Index s) {
  if (L < 1 || a < 1 || b < 1 || L % a != 0 || L % b != 0) throw InvalidArgument("a and b must divide L");
  if (s < 0 || s >= b) throw InvalidArgument("shear must satisfy 0 <= s < b");
  Index ab = a * b;
  if (s % (ab / gcd(ab, L)) != 0) throw InvalidArgument("shear not admissible for this (L, a, b)");
  return GaborLattice(L, a, b, s);
}

std::string GaborLattice::str() const {
  std::ostringstream os;
  os << "L=" << L_ << " a=" << a_ << " b=" << b_ << " s=" << s_ << " (M=" << M() << " N=" << N()
     << " lambda=" << lambda1_ << "/" << lambda2_ << ")";
  return os.str();
}

StructureConstants rect_constants(Index L, Index a, Index M) {
  Index b = L / M, N = L / a;
  Index c = gcd(a, M), d = gcd(b, N);
  return {c, d, a / c, M / c};
}

StructureConstants constants(const GaborLattice& lat) { return rect_constants(lat.L(), lat.a(), lat.M()); }

// ---- normal forms

GaborLattice normal_form(const Mat2L& A) {
  const Index L = A.modulus();
  Index g1 = 0, u = A.a21(), v = A.a22();
  if (A.a11() != 0 || A.a12() != 0) {
    auto [g, k1, k2] = ext_gcd(A.a11(), A.a12());
    g1 = g;
    u = mod(mulmod(k1, A.a21(), L) + mulmod(k2, A.a22(), L), L);
    v = mod(mulmod(A.a12() / g, A.a21(), L) - mulmod(A.a11() / g, A.a22(), L), L);
  }
  Index a = gcd(g1, L);
  Index b = gcd(gcd(v, mulmod(L / a, u, L)), L);
  Index s = 0;
  if (a != L) {
    Index t = inverse_mod(g1 / a, L / a);
    s = mod(mulmod(t, u, L), b);
  }
  return GaborLattice::from_normal_form(L, a, b, s);
}

Mat2L upper_form(const GaborLattice& lat) {
  const Index L = lat.L(), a = lat.a(), b = lat.b(), s = lat.s();
  if (s == 0) return Mat2L(a, 0, 0, b, L);
  auto [bt, k1, k2] = ext_gcd(s, b);
  (void)k2;
  return Mat2L(a * b / bt, k1 * a, 0, bt, L);
}

std::vector<TfPoint> lattice_points(const GaborLattice& lat, Index max_L) {
  if (lat.L() > max_L) throw SizeLimit("L=" + std::to_string(lat.L()) + " exceeds " + std::to_string(max_L));
  std::vector<TfPoint> pts;
  pts.reserve(static_cast<std::size_t>(lat.M() * lat.N()));
  for (Index n = 0; n < lat.N(); ++n)
    for (Index k = 0; k < lat.M(); ++k) pts.push_back({lat.a() * n, mod(n * lat.s() + k * lat.b(), lat.L())});
  std::sort(pts.begin(), pts.end());
  return pts;
}

std::vector<TfPoint> span_points(const Mat2L& A, Index max_L) {
  const Index L = A.modulus();
  if (L > max_L) throw SizeLimit("L=" + std::to_string(L) + " exceeds " + std::to_string(max_L));
  auto order = [L](Index x, Index y) { return L / gcd(gcd(x, y), L); };
  Index o1 = order(A.a11(), A.a21()), o2 = order(A.a12(), A.a22());
  std::set<TfPoint> pts;
  for (Index i = 0; i < o1; ++i)
    for (Index j = 0; j < o2; ++j) pts.insert(A * TfPoint{i, j});
  return {pts.begin(), pts.end()};
}

Index min_length(Index a, Index M, Index lambda1, Index lambda2) {
  if (lambda2 == 0) throw InvalidArgument("lambda2 must be nonzero");
  if (a < 1 || M < 1) throw InvalidArgument("a and M must be positive");
  (void)lambda1;
  return lambda2 * lcm(a, M);
}

bool is_feasible(Index L, Index a, Index M, Index lambda1, Index lambda2) {
  return L >= 1 && L % min_length(a, M, lambda1, lambda2) == 0;
}

NoShearFactor noshear_factor(Index a, Index M, Index lambda1, Index lambda2) {
  (void)min_length(a, M, lambda1, lambda2);
  Index c = gcd(a, M), c1 = 1;
  for (auto [p, e] : factorize(c))
    if (lambda2 % p != 0) c1 *= ipow(p, e);
  return {c1, c / c1};
}

MultiwinDecomp multiwin_decomp(const GaborLattice& lat) {
  MultiwinDecomp d{lat.lambda2(), lat.lambda2() * lat.a(), lat.b(), {}};
  for (Index m = 0; m < lat.lambda2(); ++m) d.offsets.push_back({lat.a() * m, mod(lat.s() * m, lat.b())});
  return d;
}

// ---- Smith form

SmithDecomp smith2x2(const IntMat2& A0, Index L) {
  IntMat2 A = A0, R{}, C{};
  auto left = [&](const IntMat2& E) {
    A = E * A;
    R = E * R;
  };
  auto right = [&](const IntMat2& G) {
    A = A * G;
    C = C * G;
  };
  for (int guard = 0; guard < 256; ++guard) {
    if (A.a11 == 0 && A.a21 == 0) {
      if (A.a12 == 0 && A.a22 == 0) break;
      right({0, -1, 1, 0});
    }
    if (A.a21 != 0) {
      auto [g, k1, k2] = ext_gcd(A.a11, A.a21);
      left({k1, k2, -A.a21 / g, A.a11 / g});
    }
    if (A.a12 != 0) {
      auto [g, k1, k2] = ext_gcd(A.a11, A.a12);
      right({k1, -A.a12 / g, k2, A.a11 / g});
    }
    if (A.a12 != 0 || A.a21 != 0) continue;
    if (A.a22 % A.a11 == 0) break;
    left({1, 1, 0, 1});
  }
  if (A.a12 != 0 || A.a21 != 0) throw Error("smith2x2 did not converge");
  if (A.a11 < 0) left({-1, 0, 0, -1});
  IntMat2 P{R.a22, -R.a12, -R.a21, R.a11};
  IntMat2 V{C.a22, -C.a12, -C.a21, C.a11};
  return {P, A, V, Mat2L(P, L), Mat2L(A, L), Mat2L(V, L), A.a11, A.a22};
}

// ---- Weil decomposition

Mat2L ElementaryOp::matrix(Index L) const {
  switch (kind) {
    case Kind::Fourier:
      return Mat2L(0, -1, 1, 0, L);
    case Kind::InvFourier:
      return Mat2L(0, 1, -1, 0, L);
    case Kind::Chirp:
      return Mat2L(1, 0, param, 1, L);
    case Kind::Dilation:
      return Mat2L(param, 0, 0, inverse_mod(param, L), L);
  }
  return Mat2L::identity(L);
}

ElementaryOp ElementaryOp::inverse(Index L) const {
  switch (kind) {
    case Kind::Fourier:
      return inv_fourier();
    case Kind::InvFourier:
      return fourier();
    case Kind::Chirp:
      return chirp(mod(-param, 2 * L));
    case Kind::Dilation:
      return dilation(inverse_mod(param, L));
  }
  return *this;
}

std::string ElementaryOp::str() const {
  switch (kind) {
    case Kind::Fourier:
      return "F";
    case Kind::InvFourier:
      return "F^-1";
    case Kind::Chirp:
      return "S_" + std::to_string(param);
    case Kind::Dilation:
      return "D_" + std::to_string(param);
  }
  return "?";
}

Mat2L WeilFactors::product() const {
  Mat2L P = Mat2L::identity(L);
  for (const auto& e : factors) P = P * e.matrix(L);
  return P;
}

WeilFactors WeilFactors::inverse() const {
  WeilFactors inv{L, {}};
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) inv.factors.push_back(it->inverse(L));
  return inv;
}

WeilFactors weil_decompose(const Mat2L& M) {
  const Index L = M.modulus();
  if (M.det() != mod(1, L)) throw NotUnimodular();
  Index m = 0;
  while (gcd(M.a11() + m * M.a12(), L) != 1) {
    if (++m > L) throw NotUnimodular();
  }
  Index a0 = mod(M.a11() + m * M.a12(), L);
  Index c0 = mod(M.a21() + m * M.a22(), L);
  Index ai = inverse_mod(a0, L);
  return {L,
          {ElementaryOp::chirp(mulmod(c0, ai, L)), ElementaryOp::dilation(a0), ElementaryOp::inv_fourier(),
           ElementaryOp::chirp(mod(-mulmod(ai, M.a12(), L), L)), ElementaryOp::fourier(),
           ElementaryOp::chirp(mod(-m, L))}};
}

// ---- shear decomposition

Mat2L shear_matrix(Index s0, Index s1, Index L) {
  return Mat2L(1, -s0, -s1, mulmod(s0, s1, L) + 1, L);
}

Mat2L shear_matrix_inverse(Index s0, Index s1, Index L) {
  return Mat2L(mulmod(s0, s1, L) + 1, s0, s1, 1, L);
}

ShearDecomp shearfind(const GaborLattice& lat) {
  const Index L = lat.L(), a = lat.a(), b = lat.b(), s = lat.s();
  Index s0 = 0, s1 = 0;
  bool bumped = false;
  if (s != 0) {
    Index g = gcd(a, b);
    if (s % g == 0) {
      Index k = ext_gcd(a / g, b / g).k1;
      s1 = mod(mulmod(-s / g, k, b / g), b / g);
    } else {
      auto primes = factorize(L);
      s1 = 1;
      for (auto [p, e] : primes)
        if (valuation(a, p) == valuation(s, p)) s1 *= p;
      auto [X, k1, k2] = ext_gcd(s1 * a + s, b);
      (void)k2;
      if (k1 == 0) {
        k1 += b / X;
        bumped = true;
      }
      Index l = k1, P1 = 1, P2 = 1;
      for (auto [p, e] : primes) {
        int kap = valuation(k1, p);
        l /= ipow(p, kap);
        int al = valuation(a, p), be = valuation(b, p), ga = valuation(X, p);
        P1 *= ipow(p, std::max(be - ga - kap, 0));
        P2 *= ipow(p, al + kap - ga);
      }
      s0 = mod(mulmod(mod(P1 - l, L), P2, L), L);
      s1 = mod(s1, L);
    }
  }

  Index y = s1 * a + s;
  auto [X, k1, k2] = ext_gcd(y, b);
  if (bumped) {
    k1 += b / X;
    k2 -= y / X;
  }
  ShearDecomp d;
  d.s0 = s0;
  d.s1 = s1;
  d.b_r = X;
  d.a_r = a * b / X;
  d.M_r = L / d.b_r;
  d.N_r = L / d.a_r;
  // Upper-right entry of the triangular factor must be a multiple of a_r.
  Index top = mod(mulmod(s0, X, L) + mulmod(a, k1, L), L);
  if (top % d.a_r != 0) throw Error("shearfind: internal divisibility failure for " + lat.str());
  Mat2L W(k2, -k1, y / X, b / X, L);
  d.V = Mat2L(1, top / d.a_r, 0, 1, L) * W;
  return d;
}

ShearDecomp shearfind(Index L, Index a, Index M, Index lambda1, Index lambda2) {
  return shearfind(GaborLattice::from_params(L, a, M, lambda1, lambda2));
}

}  // namespace nsdgt
