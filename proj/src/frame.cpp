#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "internal.hpp"
#include "nsdgt/dgt.hpp"
#include "nsdgt/error.hpp"
#include "nsdgt/nonsep.hpp"

namespace nsdgt {

namespace detail {

double rel_error(std::span<const Complex> x, std::span<const Complex> ref) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += std::norm(x[i] - ref[i]);
    den += std::norm(ref[i]);
  }
  return den > 0 ? std::sqrt(num / den) : std::sqrt(num);
}

std::vector<double> frame_diagonal(const Window& g, Index a, Index M) {
  const Index L = g.length(), N = L / a;
  std::vector<double> d(static_cast<std::size_t>(L));
  for (Index j = 0; j < L; ++j) {
    double acc = 0;
    for (Index n = 0; n < N; ++n) acc += std::norm(g[mod(j - a * n, L)]);
    d[j] = static_cast<double>(M) * acc;
  }
  return d;
}

CVector pcg_solve(const LinearOp& S, std::span<const double> diag, std::span<const Complex> rhs,
                  const SolverOptions& opt) {
  const std::size_t L = rhs.size();
  for (double v : diag)
    if (!(v > 0)) throw NotAFrame("frame operator has a zero diagonal entry");

  auto dot = [](std::span<const Complex> x, std::span<const Complex> y) {
    Complex acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
    return acc;
  };
  double bnorm = std::sqrt(dot(rhs, rhs).real());
  if (bnorm == 0) return CVector(L);

  CVector x(L), r(rhs.begin(), rhs.end()), z(L), p(L);
  for (std::size_t i = 0; i < L; ++i) z[i] = r[i] / diag[i];
  p = z;
  Complex rz = dot(r, z);
  CVector best = x;
  double best_res = 1.0;
  Index since_best = 0;
  const Index cap = opt.max_iter_factor * static_cast<Index>(L);
  for (Index it = 0; it < cap; ++it) {
    CVector Sp = S(p);
    Complex pSp = dot(p, Sp);
    if (!(pSp.real() > 0)) break;
    Complex alpha = rz / pSp.real();
    for (std::size_t i = 0; i < L; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * Sp[i];
    }
    double res = std::sqrt(dot(r, r).real()) / bnorm;
    if (res < best_res) {
      best_res = res;
      best = x;
      since_best = 0;
    } else if (++since_best > 50) {
      break;
    }
    if (res <= opt.target) break;
    for (std::size_t i = 0; i < L; ++i) z[i] = r[i] / diag[i];
    Complex rz_new = dot(r, z);
    Complex beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < L; ++i) p[i] = z[i] + beta * p[i];
  }

  CVector Sx = S(best);
  double res = 0;
  for (std::size_t i = 0; i < L; ++i) res += std::norm(Sx[i] - rhs[i]);
  res = std::sqrt(res) / bnorm;
  if (!(res <= opt.tolerance))
    throw NotAFrame("conjugate gradient stalled at relative residual " + std::to_string(res));
  return best;
}

void throw_if_not_frame(const Window& g, const GaborLattice& lat, const SolverOptions& opt) {
  if (lat.a() * lat.b() > lat.L()) throw NotAFrame("redundancy below 1");
  const double c = static_cast<double>(gcd(lat.a(), lat.M()));
  const double b = static_cast<double>(lat.b());
  if (c * b * b * b > opt.eigencheck_budget) return;
  auto fb = frame_bounds(g, lat);
  if (!(fb.lower > opt.frame_ratio * fb.upper)) throw NotAFrame("frame bound ratio below threshold");
}

}  // namespace detail

CVector frame_op_apply(std::span<const Complex> f, const Window& g, const GaborLattice& lat) {
  if (lat.separable()) return idgt_sep(dgt_sep(f, g, lat.a(), lat.M()), g, lat.a(), lat.M());
  return idgtns(dgtns_shear(f, g, lat), g, lat);
}

Eigen::MatrixXcd frame_matrix(const Window& g, const GaborLattice& lat, Index max_L) {
  const Index L = lat.L();
  if (L > max_L) throw SizeLimit("frame matrix with L=" + std::to_string(L));
  if (g.length() != L) throw InvalidArgument("window length must equal L");
  const Index M = lat.M(), N = lat.N(), a = lat.a(), s = lat.s();
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(L, L);
  for (Index j = 0; j < L; ++j) {
    for (Index k = j % M; k < L; k += M) {
      Complex acc = 0;
      for (Index n = 0; n < N; ++n) {
        double t = 2.0 * std::numbers::pi * static_cast<double>(mod(n * s * (j - k), L)) / static_cast<double>(L);
        acc += std::polar(1.0, t) * g[mod(j - a * n, L)] * std::conj(g[mod(k - a * n, L)]);
      }
      S(j, k) = static_cast<double>(M) * acc;
    }
  }
  return S;
}

Eigen::MatrixXcd frame_block(const Window& g, const GaborLattice& lat, Index rho) {
  const Index L = lat.L(), M = lat.M(), N = lat.N(), a = lat.a(), b = lat.b(), s = lat.s();
  Eigen::MatrixXcd V(b, N);
  for (Index n = 0; n < N; ++n)
    for (Index r = 0; r < b; ++r) {
      double t = 2.0 * std::numbers::pi * static_cast<double>(mod(n * s % b * r, b)) / static_cast<double>(b);
      V(r, n) = std::polar(1.0, t) * g[mod(rho + r * M - a * n, L)];
    }
  Eigen::MatrixXcd B = static_cast<double>(M) * (V * V.adjoint());
  return B;
}

FrameBounds frame_bounds(const Window& g, const GaborLattice& lat) {
  const Index c = gcd(lat.a(), lat.M());
  double lo = INFINITY, hi = 0;
  for (Index rho = 0; rho < c; ++rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(frame_block(g, lat, rho), Eigen::EigenvaluesOnly);
    lo = std::min(lo, es.eigenvalues().minCoeff());
    hi = std::max(hi, es.eigenvalues().maxCoeff());
  }
  return {lo, hi};
}

Window gabdual_sep(const Window& g, Index a, Index M, const SolverOptions& opt) {
  const Index L = g.length();
  auto lat = GaborLattice::from_params(L, a, M, 0, 1);
  detail::throw_if_not_frame(g, lat, opt);
  Window gf = g.to_full();
  auto S = [&](std::span<const Complex> x) { return idgt_sep(dgt_sep(x, gf, a, M), gf, a, M); };
  auto diag = detail::frame_diagonal(gf, a, M);
  return Window(detail::pcg_solve(S, diag, gf.values(), opt));
}

Window gabtight_sep(const Window& g, Index a, Index M, const SolverOptions& opt) {
  const Index L = g.length();
  auto lat = GaborLattice::from_params(L, a, M, 0, 1);
  if (a * lat.b() > L) throw NotAFrame("redundancy below 1");
  const Index b = lat.b();
  CVector gt(static_cast<std::size_t>(L));
  double lo = INFINITY, hi = 0;
  for (Index rho = 0; rho < M; ++rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(frame_block(g, lat, rho));
    const auto& ev = es.eigenvalues();
    lo = std::min(lo, ev.minCoeff());
    hi = std::max(hi, ev.maxCoeff());
    if (!(ev.minCoeff() > 0)) throw NotAFrame("singular frame operator");
    Eigen::VectorXcd x(b);
    for (Index r = 0; r < b; ++r) x(r) = g[rho + r * M];
    Eigen::VectorXd isq = ev.cwiseSqrt().cwiseInverse();
    Eigen::VectorXcd y = es.eigenvectors() * (isq.asDiagonal() * (es.eigenvectors().adjoint() * x));
    for (Index r = 0; r < b; ++r) gt[rho + r * M] = y(r);
  }
  if (!(lo > opt.frame_ratio * hi)) throw NotAFrame("frame bound ratio below threshold");
  return Window(std::move(gt));
}

Window pgauss(Index L, double tfr) {
  if (L < 1 || !(tfr > 0)) throw InvalidArgument("pgauss requires L >= 1 and tfr > 0");
  CVector g(static_cast<std::size_t>(L));
  const double w = tfr * static_cast<double>(L);
  double nrm = 0;
  for (Index l = 0; l < L; ++l) {
    const double x = static_cast<double>(2 * l <= L ? l : L - l);
    auto e = [w](double y) { return std::exp(-std::numbers::pi * y * y / w); };
    double acc = e(x);
    for (int k = 1; k <= 3; ++k) {
      const double kL = k * static_cast<double>(L);
      acc += e(x + kL) + e(x - kL);
    }
    g[l] = acc;
    nrm += acc * acc;
  }
  nrm = std::sqrt(nrm);
  for (auto& v : g) v /= nrm;
  return Window(std::move(g));
}

}  // namespace nsdgt
