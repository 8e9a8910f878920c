#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nsdgt/error.hpp"
#include "nsdgt/fft.hpp"
#include "nsdgt/metaplectic.hpp"
#include "support.hpp"

using namespace nsdgt;
using support::random_signal;
using support::rel_err;

namespace {

struct RectConfig {
  Index L, a, M;
};

// Random (L, a, M) with a, M | L.
RectConfig random_rect(std::mt19937_64& rng, Index Lmax) {
  for (;;) {
    Index L = std::uniform_int_distribution<Index>(1, Lmax)(rng);
    std::vector<Index> div;
    for (Index d = 1; d <= L; ++d)
      if (L % d == 0) div.push_back(d);
    std::uniform_int_distribution<std::size_t> pick(0, div.size() - 1);
    return {L, div[pick(rng)], div[pick(rng)]};
  }
}

Window random_fir(std::mt19937_64& rng, Index L) {
  Index Lg = std::uniform_int_distribution<Index>(1, L)(rng);
  Index start = std::uniform_int_distribution<Index>(-L, L)(rng);
  return Window::fir(random_signal(Lg, rng), start, L);
}

double op_err(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) { return (A - B).norm() / B.norm(); }

}  // namespace

TEST_CASE("dgt_naive examples") {
  std::mt19937_64 rng(1);
  auto lat = GaborLattice::from_params(12, 3, 4, 0, 1);
  auto c = dgt_naive(CVector(12), pgauss(12, 1.0), lat);
  for (auto v : c.data()) CHECK(v == Complex(0, 0));

  lat = GaborLattice::from_params(4, 2, 2, 0, 1);
  auto f = random_signal(4, rng);
  c = dgt_naive(f, Window(CVector{1, 0, 0, 0}), lat);
  for (Index n = 0; n < 2; ++n)
    for (Index m = 0; m < 2; ++m) CHECK(std::abs(c(m, n) - f[2 * n]) < 1e-15);

  // quincunx: time step n is shifted by (n mod 2) * b / 2 bins
  lat = GaborLattice::from_params(36, 6, 6, 1, 2);
  CHECK(lat.s() == 3);
  f = random_signal(36, rng);
  auto g = random_signal(36, rng);
  c = dgt_naive(f, Window(g), lat);
  for (Index n = 0; n < 6; ++n) {
    CHECK(lat.offset(n) == (n % 2 ? 3 : 0));
    for (Index m = 0; m < 6; ++m) {
      auto atom = tf_shift_apply({6 * n, 6 * m + 3 * (n % 2)}, g);
      CHECK(std::abs(c(m, n) - support::dot(f, atom)) < 1e-12);
    }
  }
  CHECK_THROWS_WITH_AS(dgt_naive(CVector(8192 * 2), pgauss(8192 * 2, 1.0), GaborLattice::from_params(8192 * 2, 2, 2, 0, 1)),
                       doctest::Contains("oracle size limit"), SizeLimit);
  CHECK_THROWS_AS(dgt_naive(CVector(10), pgauss(12, 1.0), GaborLattice::from_params(12, 3, 4, 0, 1)), Error);
}

TEST_CASE("dgt_sep and dgt_fir match the oracle") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    auto [L, a, M] = random_rect(rng, 144);
    auto lat = GaborLattice::from_params(L, a, M, 0, 1);
    auto f = random_signal(L, rng);
    Window g(random_signal(L, rng));
    auto ref = dgt_naive(f, g, lat);
    REQUIRE(rel_err(dgt_sep(f, g, a, M), ref) < 1e-12);
    Window gf = random_fir(rng, L);
    auto sep = dgt_sep(f, gf, a, M);
    REQUIRE(rel_err(dgt_fir(f, gf, a, M), sep) < 1e-12);
    REQUIRE(rel_err(sep, dgt_naive(f, gf, lat)) < 1e-12);
    REQUIRE(rel_err(dgt_fir(f, g, a, M), ref) < 1e-12);  // full-length window
  }
  CHECK_THROWS_WITH_AS(dgt_sep(CVector(12), pgauss(12, 1.0), 5, 4), doctest::Contains("illegal transform length"),
                       InfeasibleLength);
  CHECK_THROWS_WITH_AS(dgt_fir(CVector(12), pgauss(12, 1.0), 4, 5), doctest::Contains("illegal transform length"),
                       InfeasibleLength);
}

TEST_CASE("dgt_sep special cases") {
  std::mt19937_64 rng(3);
  auto f = random_signal(30, rng);
  auto c = dgt_sep(f, Window(CVector(30, 1.0)), 30, 30);
  REQUIRE(c.steps() == 1);
  CHECK(rel_err(c.data(), fft::fft(f)) < 1e-14);

  auto g = pgauss(48, 1.0);
  c = dgt_sep(g.values(), g, 4, 6);
  CHECK(std::abs(c(0, 0) - 1.0) < 1e-14);

  // delta window
  Window d = Window::fir(CVector{1.0}, 0, 48);
  auto f48 = random_signal(48, rng);
  c = dgt_fir(f48, d, 6, 8);
  for (Index n = 0; n < 8; ++n)
    for (Index m = 0; m < 8; ++m) {
      Complex e = std::polar(1.0, -2 * std::numbers::pi * static_cast<double>(6 * n * m) / 8.0);
      CHECK(std::abs(c(m, n) - f48[6 * n] * e) < 1e-13);
    }
}

TEST_CASE("synthesis is the adjoint of analysis") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    auto [L, a, M] = random_rect(rng, 144);
    auto f = random_signal(L, rng);
    Window g(random_signal(L, rng));
    CoefGrid c(M, L / a);
    c.data() = random_signal(M * (L / a), rng);
    Complex lhs = support::dot(dgt_sep(f, g, a, M).data(), c.data());
    Complex rhs = support::dot(f, idgt_sep(c, g, a, M));
    REQUIRE(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs) + 1e-12);
  }
  auto z = idgt_sep(CoefGrid(8, 8), pgauss(64, 0.5), 8, 8);
  for (auto v : z) CHECK(v == Complex(0, 0));
  CHECK_THROWS_AS(idgt_sep(CoefGrid(8, 7), pgauss(64, 0.5), 8, 8), Error);
}

TEST_CASE("canonical dual reconstructs") {
  std::mt19937_64 rng(5);
  auto g = pgauss(64, 0.5);
  auto gd = gabdual_sep(g, 4, 8);
  auto f = random_signal(64, rng);
  CHECK(rel_err(idgt_sep(dgt_sep(f, g, 4, 8), gd, 4, 8), f) < 1e-10);
  // roles of g and its dual are interchangeable
  CHECK(rel_err(idgt_sep(dgt_sep(f, gd, 4, 8), g, 4, 8), f) < 1e-10);

  auto lat = GaborLattice::from_params(64, 4, 8, 0, 1);
  Eigen::VectorXcd ref = frame_matrix(g, lat).ldlt().solve(support::as_eigen(g.values()));
  CHECK(rel_err(gd.values(), support::from_eigen(ref)) < 1e-10);

  for (int i = 0; i < 30; ++i) {
    auto [L, a, M] = random_rect(rng, 240);
    if (a * (L / M) * 1.2 > L) continue;
    auto gg = pgauss(L, static_cast<double>(a * M) / static_cast<double>(L));
    auto dd = gabdual_sep(gg, a, M);
    auto ff = random_signal(L, rng);
    REQUIRE(rel_err(idgt_sep(dgt_sep(ff, gg, a, M), dd, a, M), ff) < 1e-10);
  }
}

TEST_CASE("dual of a tight window is a scaled copy") {
  auto gt = gabtight_sep(pgauss(60, 0.8), 5, 12);
  CVector g2 = gt.values();
  for (auto& v : g2) v *= 2.0;  // S = 4 I
  auto gd = gabdual_sep(Window(g2), 5, 12);
  CVector expect = g2;
  for (auto& v : expect) v /= 4.0;
  CHECK(rel_err(gd.values(), expect) < 1e-12);
}

TEST_CASE("non-frames are rejected") {
  Window delta = Window::fir(CVector{1.0}, 0, 16);
  CHECK_THROWS_WITH_AS(gabdual_sep(delta, 4, 2), doctest::Contains("not a frame"), NotAFrame);
  CHECK_THROWS_WITH_AS(gabdual_sep(delta, 2, 16), doctest::Contains("not a frame"), NotAFrame);
  CHECK_THROWS_WITH_AS(gabtight_sep(delta, 2, 16), doctest::Contains("not a frame"), NotAFrame);
  CHECK_THROWS_WITH_AS(gabdual_sep(Window(CVector(16)), 2, 8), doctest::Contains("not a frame"), NotAFrame);
}

TEST_CASE("tight windows") {
  auto g = pgauss(64, 0.5);
  auto gt = gabtight_sep(g, 4, 8);
  auto lat = GaborLattice::from_params(64, 4, 8, 0, 1);
  auto S = frame_matrix(gt, lat);
  CHECK((S - Eigen::MatrixXcd::Identity(64, 64)).norm() < 1e-9);
  std::mt19937_64 rng(6);
  auto f = random_signal(64, rng);
  CHECK(rel_err(frame_op_apply(f, gt, lat), f) < 1e-9);

  // already tight: result is proportional to the input
  CVector g3 = gt.values();
  for (auto& v : g3) v *= 3.0;
  auto gt2 = gabtight_sep(Window(g3), 4, 8);
  CHECK(rel_err(gt2.values(), gt.values()) < 1e-12);

  // dense S^{-1/2} g
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(frame_matrix(g, lat));
  Eigen::VectorXcd ref = es.operatorInverseSqrt() * support::as_eigen(g.values());
  CHECK(rel_err(gt.values(), support::from_eigen(ref)) < 1e-10);
}

TEST_CASE("frame operator") {
  std::mt19937_64 rng(7);
  for (const auto& lat : support::all_lattices(36, 24)) {
    if (rng() % 4) continue;
    Window g(random_signal(lat.L(), rng));
    auto S = frame_matrix(g, lat);
    auto ref = support::brute_frame_matrix(g.values(), lat);
    REQUIRE(op_err(S, ref) < 1e-12);
    REQUIRE((S - S.adjoint()).norm() <= 1e-12 * S.norm());
    auto f = random_signal(lat.L(), rng);
    auto Sf = frame_op_apply(f, g, lat);
    REQUIRE(rel_err(Sf, support::from_eigen(S * support::as_eigen(f))) < 1e-12);
    REQUIRE(support::dot(Sf, f).real() >= -1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(S, Eigen::EigenvaluesOnly);
    REQUIRE(es.eigenvalues().minCoeff() >= -1e-10 * es.eigenvalues().maxCoeff());
    auto fb = frame_bounds(g, lat);
    REQUIRE(std::abs(fb.lower - es.eigenvalues().minCoeff()) <= 1e-9 * es.eigenvalues().maxCoeff());
    REQUIRE(std::abs(fb.upper - es.eigenvalues().maxCoeff()) <= 1e-9 * es.eigenvalues().maxCoeff());
  }

  auto lat = GaborLattice::from_params(12, 1, 12, 0, 1);
  Window delta = Window::fir(CVector{1.0}, 0, 12);
  CHECK((frame_matrix(delta, lat) - 12.0 * Eigen::MatrixXcd::Identity(12, 12)).norm() < 1e-12);
  auto f = random_signal(12, rng);
  auto Sf = frame_op_apply(f, delta, lat);
  for (auto& v : f) v *= 12.0;
  CHECK(rel_err(Sf, f) < 1e-14);
  CHECK_THROWS_AS(frame_matrix(pgauss(300, 1.0), GaborLattice::from_params(300, 3, 4, 0, 1)), SizeLimit);
}

TEST_CASE("pgauss") {
  for (Index L : {1, 2, 9, 36, 64, 101}) {
    for (double tfr : {0.25, 1.0, 3.0}) {
      auto g = pgauss(L, tfr);
      CHECK(std::abs(std::sqrt(support::dot(g.values(), g.values()).real()) - 1.0) < 1e-14);
      for (Index l = 1; l < L; ++l) CHECK(g[l] == g[L - l]);
    }
    auto g = pgauss(L, 1.0);
    CHECK(rel_err(fft::dft_unitary(g.values()), g.values()) < 1e-10);
  }
  CHECK_THROWS_AS(pgauss(0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(pgauss(8, 0.0), InvalidArgument);
}
