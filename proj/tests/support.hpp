#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include "nsdgt/dgt.hpp"
#include "nsdgt/lattice.hpp"
#include "nsdgt/types.hpp"

namespace support {

using namespace nsdgt;

inline CVector random_signal(Index L, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  CVector x(static_cast<std::size_t>(L));
  for (auto& v : x) v = {nd(rng), nd(rng)};
  return x;
}

inline double rel_err(std::span<const Complex> x, std::span<const Complex> ref) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += std::norm(x[i] - ref[i]);
    den += std::norm(ref[i]);
  }
  return den > 0 ? std::sqrt(num / den) : std::sqrt(num);
}

inline double rel_err(const CoefGrid& x, const CoefGrid& ref) {
  if (x.channels() != ref.channels() || x.steps() != ref.steps()) return INFINITY;
  return rel_err(x.data(), ref.data());
}

inline Complex dot(std::span<const Complex> x, std::span<const Complex> y) {
  Complex acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * std::conj(y[i]);
  return acc;
}

// Subgroup of Z_L^2 generated by the columns, by closure.
inline std::set<TfPoint> enumerate_span(Index a11, Index a12, Index a21, Index a22, Index L) {
  std::set<TfPoint> pts{{0, 0}};
  std::vector<TfPoint> frontier{{0, 0}};
  const TfPoint gens[2] = {{mod(a11, L), mod(a21, L)}, {mod(a12, L), mod(a22, L)}};
  while (!frontier.empty()) {
    auto z = frontier.back();
    frontier.pop_back();
    for (auto g : gens) {
      TfPoint w{(z.x + g.x) % L, (z.omega + g.omega) % L};
      if (pts.insert(w).second) frontier.push_back(w);
    }
  }
  return pts;
}

inline std::set<TfPoint> enumerate_lattice(const GaborLattice& lat) {
  return enumerate_span(lat.a(), 0, lat.s(), lat.b(), lat.L());
}

// Direct feasibility conditions: a | L, M | L, (L/a) lambda and (L/M) lambda integral.
inline bool brute_feasible(Index L, Index a, Index M, Index l1, Index l2) {
  return L % a == 0 && L % M == 0 && ((L / a) * l1) % l2 == 0 && ((L / M) * l1) % l2 == 0;
}

// Every feasible (L, a, M, lambda) with L <= Lmax.
inline std::vector<GaborLattice> all_lattices(Index Lmax, Index Lmin = 1) {
  std::vector<GaborLattice> out;
  for (Index L = Lmin; L <= Lmax; ++L)
    for (Index a = 1; a <= L; ++a) {
      if (L % a) continue;
      for (Index M = 1; M <= L; ++M) {
        if (L % M) continue;
        for (Index l2 = 1; l2 <= L; ++l2)
          for (Index l1 = 0; l1 < l2; ++l1) {
            if (gcd(l1, l2) != 1 || !brute_feasible(L, a, M, l1, l2)) continue;
            out.push_back(GaborLattice::from_params(L, a, M, l1, l2));
          }
      }
    }
  return out;
}

// Random feasible lattice with L <= Lmax and redundancy L/(ab) >= min_red;
// nonseparable unless lambda2 comes out as 1.
inline GaborLattice random_lattice(std::mt19937_64& rng, Index Lmax, double min_red = 0.0, Index max_l2 = 12) {
  std::uniform_int_distribution<Index> ad(1, 64), l2d(1, max_l2);
  for (;;) {
    Index a = ad(rng), M = ad(rng), l2 = l2d(rng);
    Index Lmin = l2 * lcm(a, M);
    if (Lmin > Lmax) continue;
    Index L = Lmin * std::uniform_int_distribution<Index>(1, Lmax / Lmin)(rng);
    if (static_cast<double>(M) < min_red * static_cast<double>(a)) continue;
    Index l1 = 0;
    if (l2 > 1) do
        l1 = std::uniform_int_distribution<Index>(1, l2 - 1)(rng);
      while (gcd(l1, l2) != 1);
    return GaborLattice::from_params(L, a, M, l1, l2);
  }
}

// Frame operator as an explicit sum of outer products over the lattice.
inline Eigen::MatrixXcd brute_frame_matrix(std::span<const Complex> g, const GaborLattice& lat) {
  const Index L = lat.L();
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(L, L);
  Eigen::VectorXcd atom(L);
  for (Index n = 0; n < lat.N(); ++n)
    for (Index k = 0; k < lat.M(); ++k) {
      const Index w = mod(n * lat.s() + k * lat.b(), L);
      for (Index l = 0; l < L; ++l)
        atom(l) = std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(mod(l * w, L)) / static_cast<double>(L)) *
                  g[mod(l - lat.a() * n, L)];
      S += atom * atom.adjoint();
    }
  return S;
}

inline Eigen::VectorXcd as_eigen(std::span<const Complex> x) {
  Eigen::VectorXcd v(static_cast<Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) v(static_cast<Index>(i)) = x[i];
  return v;
}

inline CVector from_eigen(const Eigen::VectorXcd& v) { return CVector(v.data(), v.data() + v.size()); }

}  // namespace support
