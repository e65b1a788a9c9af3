#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace bgshrink::wavelet {

/// Orthonormal Daubechies scaling filter with five vanishing moments
/// (10 taps), sum = sqrt(2), unit energy.
inline constexpr std::array<double, 10> kDb5Lowpass = {
    0.1601023979741929144807237,   0.6038292697971896705401193,
    0.7243085284377729277280712,   0.1384281459013207315053971,
    -0.2422948870663820318625714,  -0.03224486958463837464847976,
    0.07757149384004571352313049,  -0.006241490212798274274190519,
    -0.01258075199908199946850974, 0.003335725285473771277998183,
};

/// Quadrature mirror highpass g[j] = (-1)^j h[L-1-j].
std::array<double, 10> db5_highpass();

/// One level of periodized analysis along a strided line of even length n:
/// out[0, n/2) = lowpass, out[n/2, n) = highpass.
void analyze_line(std::span<const double> in, std::span<double> out);
/// Exact inverse (transpose) of analyze_line.
void synthesize_line(std::span<const double> in, std::span<double> out);

/// Separable 2-D periodized DWT on a row-major rows x cols image, Mallat
/// layout. Dimensions must be divisible by 2^levels.
void forward_2d(std::span<const double> image, std::span<double> coeffs, std::size_t rows,
                std::size_t cols, int levels);
void inverse_2d(std::span<const double> coeffs, std::span<double> image, std::size_t rows,
                std::size_t cols, int levels);

}  // namespace bgshrink::wavelet
