#include "nsdgt/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "nsdgt/error.hpp"

namespace nsdgt::fft {
namespace {

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};
using PlanPtr = std::unique_ptr<fftw_plan_s, PlanDeleter>;

// n, sign, howmany, stride, dist, in_place
using Key = std::tuple<Index, int, Index, Index, Index, bool>;

std::mutex plan_mutex;
std::map<Key, PlanPtr>& plans() {
  static std::map<Key, PlanPtr> cache;
  return cache;
}

fftw_plan get_plan(Index n, int sign, Index howmany, Index stride, Index dist, bool in_place) {
  Key key{n, sign, howmany, stride, dist, in_place};
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto& cache = plans();
  if (auto it = cache.find(key); it != cache.end()) return it->second.get();

  const std::size_t span = static_cast<std::size_t>((howmany - 1) * dist + (n - 1) * stride + 1);
  fftw_complex* buf_in = fftw_alloc_complex(span);
  fftw_complex* buf_out = in_place ? buf_in : fftw_alloc_complex(span);
  int len = static_cast<int>(n);
  fftw_plan p = fftw_plan_many_dft(1, &len, static_cast<int>(howmany), buf_in, nullptr, static_cast<int>(stride),
                                   static_cast<int>(dist), buf_out, nullptr, static_cast<int>(stride),
                                   static_cast<int>(dist), sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!in_place) fftw_free(buf_out);
  fftw_free(buf_in);
  if (!p) throw Error("FFTW planner failed for length " + std::to_string(n));
  auto* raw = p;
  cache.emplace(key, PlanPtr(p));
  return raw;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }
fftw_complex* as_fftw(const Complex* p) { return reinterpret_cast<fftw_complex*>(const_cast<Complex*>(p)); }

void run(std::span<const Complex> in, std::span<Complex> out, int sign) {
  if (in.size() != out.size()) throw InvalidArgument("fft size mismatch");
  if (in.empty()) return;
  Index n = static_cast<Index>(in.size());
  bool in_place = in.data() == out.data();
  fftw_execute_dft(get_plan(n, sign, 1, 1, n, in_place), as_fftw(in.data()), as_fftw(out.data()));
}

}  // namespace

void forward(std::span<const Complex> in, std::span<Complex> out) { run(in, out, FFTW_FORWARD); }
void backward(std::span<const Complex> in, std::span<Complex> out) { run(in, out, FFTW_BACKWARD); }

void forward_many(Complex* data, Index n, Index howmany, Index stride, Index dist) {
  if (n == 0 || howmany == 0) return;
  fftw_execute_dft(get_plan(n, FFTW_FORWARD, howmany, stride, dist, true), as_fftw(data), as_fftw(data));
}

void backward_many(Complex* data, Index n, Index howmany, Index stride, Index dist) {
  if (n == 0 || howmany == 0) return;
  fftw_execute_dft(get_plan(n, FFTW_BACKWARD, howmany, stride, dist, true), as_fftw(data), as_fftw(data));
}

CVector fft(std::span<const Complex> x) {
  CVector y(x.size());
  forward(x, y);
  return y;
}

CVector ifft(std::span<const Complex> x) {
  CVector y(x.size());
  backward(x, y);
  const double s = 1.0 / static_cast<double>(x.size());
  for (auto& v : y) v *= s;
  return y;
}

CVector dft_unitary(std::span<const Complex> x) {
  CVector y = fft(x);
  const double s = 1.0 / std::sqrt(static_cast<double>(x.size()));
  for (auto& v : y) v *= s;
  return y;
}

CVector idft_unitary(std::span<const Complex> x) {
  CVector y(x.size());
  backward(x, y);
  const double s = 1.0 / std::sqrt(static_cast<double>(x.size()));
  for (auto& v : y) v *= s;
  return y;
}

}  // namespace nsdgt::fft
