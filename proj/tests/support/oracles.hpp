#pragma once

// Reference computations that share no code with the library: coefficients
// come from sampling functions on a circle and inverting the DFT, norms from
// Gamma functions, products from naive convolution.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
using Fn = std::function<cplx(cplx)>;

/// Taylor coefficients c_0..c_order of f from K samples on |z| = rho.
inline std::vector<cplx> dft_coeffs(const Fn& f, int order, double rho = 1.0, int samples = 4096) {
  std::vector<cplx> vals(samples);
  for (int k = 0; k < samples; ++k) vals[k] = f(std::polar(rho, 2.0 * std::numbers::pi * k / samples));
  std::vector<cplx> out(order + 1);
  for (int n = 0; n <= order; ++n) {
    cplx acc = 0.0;
    for (int k = 0; k < samples; ++k) acc += vals[k] * std::polar(1.0, -2.0 * std::numbers::pi * double(n) * k / samples);
    out[n] = acc / double(samples) / std::pow(rho, n);
  }
  return out;
}

inline std::vector<cplx> convolve(const std::vector<cplx>& a, const std::vector<cplx>& b, int order) {
  std::vector<cplx> out(order + 1, 0.0);
  for (int i = 0; i < int(a.size()); ++i)
    for (int j = 0; j < int(b.size()); ++j)
      if (i + j <= order) out[i + j] += a[i] * b[j];
  return out;
}

/// ||z^n||^2 = n! Gamma(alpha + 2) / Gamma(n + alpha + 2); alpha < -1 means Hardy.
inline double norm_sq(double alpha, int n) {
  if (alpha < -1.0) return 1.0;
  return std::exp(std::lgamma(n + 1.0) + std::lgamma(alpha + 2.0) - std::lgamma(n + alpha + 2.0));
}

/// (rows+1) x (cols+1) matrix of <W e_j, e_i>, W f = psi (f o phi), by DFT on the unit circle.
inline Eigen::MatrixXcd block(const Fn& psi, const Fn& phi, double alpha, int rows, int cols, int samples = 4096) {
  Eigen::MatrixXcd out(rows + 1, cols + 1);
  for (int j = 0; j <= cols; ++j) {
    const auto c = dft_coeffs([&](cplx z) { return psi(z) * std::pow(phi(z), j); }, rows, 1.0, samples);
    for (int i = 0; i <= rows; ++i) out(i, j) = c[i] * std::sqrt(norm_sq(alpha, i) / norm_sq(alpha, j));
  }
  return out;
}

inline std::vector<cplx> random_poly(std::mt19937& rng, int degree) {
  std::normal_distribution<double> g;
  std::vector<cplx> out(degree + 1);
  for (auto& c : out) c = {g(rng), g(rng)};
  return out;
}

}  // namespace oracle
