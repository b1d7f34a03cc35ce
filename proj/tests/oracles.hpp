// Reference computations that share no code with the library.
#pragma once

#include <complex>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Mat = std::vector<std::vector<cplx>>;

inline Mat mul(const Mat& a, const Mat& b) {
  const std::size_t n = a.size(), m = b[0].size(), k = b.size();
  Mat c(n, std::vector<cplx>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

/// exp(-i h t) by scaling and squaring of a 40-term Taylor series.
inline Mat expm_taylor(const Mat& h, double t) {
  const std::size_t n = h.size();
  int squarings = 0;
  double norm = 0.0;
  for (const auto& r : h)
    for (const auto& x : r) norm = std::max(norm, std::abs(x) * std::abs(t));
  while (norm * static_cast<double>(n) > 0.5) {
    norm /= 2;
    ++squarings;
  }
  const cplx s = cplx{0.0, -t} / std::pow(2.0, squarings);
  Mat a(n, std::vector<cplx>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = s * h[i][j];
  Mat result(n, std::vector<cplx>(n)), term(n, std::vector<cplx>(n));
  for (std::size_t i = 0; i < n; ++i) result[i][i] = term[i][i] = 1.0;
  for (int k = 1; k < 40; ++k) {
    term = mul(term, a);
    for (auto& r : term)
      for (auto& x : r) x /= static_cast<double>(k);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) result[i][j] += term[i][j];
  }
  for (int k = 0; k < squarings; ++k) result = mul(result, result);
  return result;
}

}  // namespace oracle
