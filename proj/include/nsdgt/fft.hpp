#pragma once

#include <span>

#include "nsdgt/types.hpp"

// Unnormalized DFTs on arbitrary lengths.
//   forward:  X(k) = sum_l x(l) exp(-2 pi i k l / n)
//   backward: x(l) = sum_k X(k) exp(+2 pi i k l / n)
namespace nsdgt::fft {

void forward(std::span<const Complex> in, std::span<Complex> out);
void backward(std::span<const Complex> in, std::span<Complex> out);

// howmany transforms of length n, element stride and distance between
// consecutive transforms given in complex samples, in place.
void forward_many(Complex* data, Index n, Index howmany, Index stride, Index dist);
void backward_many(Complex* data, Index n, Index howmany, Index stride, Index dist);

CVector fft(std::span<const Complex> x);
// Normalized inverse: ifft(fft(x)) == x.
CVector ifft(std::span<const Complex> x);

// Unitary variants, 1/sqrt(n) on both sides.
CVector dft_unitary(std::span<const Complex> x);
CVector idft_unitary(std::span<const Complex> x);

}  // namespace nsdgt::fft
