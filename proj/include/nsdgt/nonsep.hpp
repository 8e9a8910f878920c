#pragma once

#include <optional>
#include <span>
#include <string>

#include "nsdgt/dgt.hpp"
#include "nsdgt/lattice.hpp"
#include "nsdgt/types.hpp"

namespace nsdgt {

CoefGrid dgtns_shear(std::span<const Complex> f, const Window& g, const GaborLattice& lat);
CoefGrid dgtns_multiwin(std::span<const Complex> f, const Window& g, const GaborLattice& lat);
CoefGrid dgtns_snf(std::span<const Complex> f, const Window& g, const GaborLattice& lat);

// f = sum c(m,n) M_{b(m + w(n))} T_{an} gd; adjoint of dgtns_shear.
CVector idgtns(const CoefGrid& c, const Window& gd, const GaborLattice& lat);

Window gabdualns(const Window& g, const GaborLattice& lat, const SolverOptions& opt = {});
// Dual by CG on the sum of lambda2 separable frame operators.
Window gabdualns_cg(const Window& g, const GaborLattice& lat, const SolverOptions& opt = {});
Window gabtightns(const Window& g, const GaborLattice& lat, const SolverOptions& opt = {});

// lambda2 windows M_{ms mod b} T_{ma} g, m = 0 .. lambda2-1.
std::vector<Window> multiwin_windows(const Window& g, const GaborLattice& lat);

class OlaConfig {
 public:
  OlaConfig(Index L, Index block_length, Index window_support);
  Index block_length() const { return Lb_; }
  Index blocks() const { return L_ / Lb_; }
  Index extended_length() const { return Lb_ + Lg_; }
  Index window_support() const { return Lg_; }
  double overhead() const { return static_cast<double>(Lg_ + Lb_) / static_cast<double>(Lb_); }

 private:
  Index L_, Lb_, Lg_;
};

CoefGrid dgtns_ola(std::span<const Complex> f, const Window& g, const GaborLattice& lat, const OlaConfig& cfg);

enum class Algorithm { Auto, Naive, Separable, SeparableFir, Shear, Multiwin, Snf, ShearOla };
std::string to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& s);

struct DispatchConfig {
  Index multiwin_max_lambda2 = 4;
  double ola_max_support_ratio = 1.0 / 8.0;
};

struct Dispatch {
  Algorithm algorithm;
  std::optional<Index> block_length;  // shear-OLA only
};

Dispatch choose_algorithm(const GaborLattice& lat, const Window& g, const DispatchConfig& cfg = {});
// Smallest admissible OLA block length, if any.
std::optional<Index> pick_block_length(const GaborLattice& lat, Index Lg);

CoefGrid dgtns(std::span<const Complex> f, const Window& g, const GaborLattice& lat, Algorithm alg = Algorithm::Auto,
               const DispatchConfig& cfg = {});

}  // namespace nsdgt
