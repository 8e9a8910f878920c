#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace nsdgt {

using Index = std::int64_t;
using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

// Point (x, omega) of the phase space Z_L^2.
struct TfPoint {
  Index x = 0;
  Index omega = 0;
  friend bool operator==(const TfPoint&, const TfPoint&) = default;
  friend auto operator<=>(const TfPoint&, const TfPoint&) = default;
};

// M x N coefficients, column n holds all channels of time step n.
class CoefGrid {
 public:
  CoefGrid() = default;
  CoefGrid(Index channels, Index steps)
      : M_(channels), N_(steps), data_(static_cast<std::size_t>(channels * steps)) {}

  Index channels() const { return M_; }
  Index steps() const { return N_; }
  std::size_t size() const { return data_.size(); }

  Complex& operator()(Index m, Index n) { return data_[static_cast<std::size_t>(n * M_ + m)]; }
  const Complex& operator()(Index m, Index n) const { return data_[static_cast<std::size_t>(n * M_ + m)]; }

  std::span<Complex> column(Index n) { return {data_.data() + n * M_, static_cast<std::size_t>(M_)}; }
  std::span<const Complex> column(Index n) const {
    return {data_.data() + n * M_, static_cast<std::size_t>(M_)};
  }

  CVector& data() { return data_; }
  const CVector& data() const { return data_; }

 private:
  Index M_ = 0;
  Index N_ = 0;
  CVector data_;
};

// Analysis/synthesis window, always stored at full length L. A FIR window
// additionally records the circular interval holding its nonzero samples.
class Window {
 public:
  Window() = default;
  explicit Window(CVector values) : values_(std::move(values)) {}

  // taps[k] is placed at sample (start + k) mod L.
  static Window fir(std::span<const Complex> taps, Index start, Index L);

  Index length() const { return static_cast<Index>(values_.size()); }
  bool is_fir() const { return support_len_ > 0 && support_len_ < length(); }
  // First sample of the support as a signed offset in (-L, L).
  Index support_start() const { return is_fir() ? support_start_ : 0; }
  Index support_length() const { return is_fir() ? support_len_ : length(); }

  const CVector& values() const { return values_; }
  CVector& values() { return values_; }
  const Complex& operator[](Index j) const { return values_[static_cast<std::size_t>(j)]; }

  Window to_full() const { return Window(values_); }

 private:
  CVector values_;
  Index support_start_ = 0;
  Index support_len_ = 0;
};

}  // namespace nsdgt
