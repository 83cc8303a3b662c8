#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "ncwigner/error.hpp"
#include "ncwigner/parallel.hpp"

namespace ncwigner {

/**
 * @brief Associated Laguerre polynomial L^nu_n(x) by the forward three-term
 * recurrence
 *   (k+1) L_{k+1} = (2k + 1 + nu - x) L_k - (k + nu) L_{k-1}.
 */
inline double laguerre(double nu, int n, double x) {
  if (n <= 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + nu - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + nu - x) * cur - (k + nu) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Fills out[0..n] with L^nu_0(x) .. L^nu_n(x).
inline void laguerre_table(double nu, int n, double x, std::vector<double>& out) {
  out.assign(static_cast<std::size_t>(std::max(n, 0)) + 1, 1.0);
  if (n >= 1) out[1] = 1.0 + nu - x;
  for (int k = 1; k < n; ++k)
    out[k + 1] = ((2.0 * k + 1.0 + nu - x) * out[k] - (k + nu) * out[k - 1]) / (k + 1.0);
}

struct IdentityPair {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// sum_{j=0}^{n} L^c_j(a) L^d_{n-j}(b)  against  L^{c+d+1}_n(a+b).
inline IdentityPair laguerre_convolution(int c, int d, int n, double a, double b) {
  std::vector<double> la, lb;
  laguerre_table(c, n, a, la);
  laguerre_table(d, n, b, lb);
  double lhs = 0.0;
  for (int j = 0; j <= n; ++j) lhs += la[j] * lb[n - j];
  return {lhs, laguerre(c + d + 1, n, a + b)};
}

/// Truncated generating series sum_{l<=nmax} L^nu_l(z) delta^l against its closed form.
inline IdentityPair laguerre_generating_sum(int nu, double delta, double z, int nmax) {
  if (!(std::abs(delta) < 1.0))
    throw NumericError("Laguerre generating series requires |delta| < 1");
  double partial = 0.0;
  double pw = 1.0;
  double prev = 1.0, cur = 1.0 + nu - z;
  for (int l = 0; l <= nmax; ++l) {
    const double term = (l == 0 ? 1.0 : cur) * pw;
    partial += term;
    if (l >= 1) {
      const double next = ((2.0 * l + 1.0 + nu - z) * cur - (l + nu) * prev) / (l + 1.0);
      prev = cur;
      cur = next;
    }
    pw *= delta;
  }
  const double closed = std::pow(1.0 - delta, -(nu + 1.0)) * std::exp(delta * z / (delta - 1.0));
  return {partial, closed};
}

/// Neumaier-compensated accumulator.
class KahanSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/**
 * @brief Gauss-Hermite rule for weight exp(-x^2).
 *
 * scaled_weights[i] = weights[i] * exp(nodes[i]^2), so that
 * int f(x) dx ~= sum scaled_weights[i] f(nodes[i]) for f with Gaussian decay.
 */
struct QuadratureRule {
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> scaled_weights;
};

inline constexpr int kDefaultQuadOrder = 40;

/// Newton iteration on the orthonormal Hermite recurrence, ascending nodes.
inline QuadratureRule gauss_hermite(int n) {
  if (n < 1) throw NumericError("Gauss-Hermite order must be >= 1");
  constexpr double pim4 = 0.7511255444649425;  // pi^{-1/4}
  const int m = (n + 1) / 2;
  std::vector<double> x(n), w(n);
  double z = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0)
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
    else if (i == 1)
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    else if (i == 2)
      z = 1.86 * z - 0.86 * x[0];
    else if (i == 3)
      z = 1.91 * z - 0.91 * x[1];
    else
      z = 2.0 * z - x[i - 2];
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = pim4, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    x[i] = z;
    x[n - 1 - i] = -z;
    w[i] = 2.0 / (pp * pp);
    w[n - 1 - i] = w[i];
  }
  if (n % 2 == 1) x[m - 1] = 0.0;

  QuadratureRule rule;
  rule.order = n;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = x[n - 1 - i];
    rule.weights[i] = w[n - 1 - i];
  }
  rule.scaled_weights.resize(n);
  for (int i = 0; i < n; ++i)
    rule.scaled_weights[i] = rule.weights[i] * std::exp(rule.nodes[i] * rule.nodes[i]);
  return rule;
}

/**
 * @brief Affine change of variables x = center + T u, T lower triangular.
 *
 * Chosen so that the Gaussian envelope of the integrand becomes exp(-|u|^2),
 * which the Gauss-Hermite rule then integrates exactly up to the polynomial
 * degree of the rule.
 */
template <std::size_t D>
struct GaussianFrame {
  std::array<double, D> center{};
  std::array<std::array<double, D>, D> transform{};
  double jacobian = 1.0;

  static GaussianFrame isotropic(double scale, std::array<double, D> c = {}) {
    GaussianFrame f;
    f.center = c;
    for (std::size_t i = 0; i < D; ++i) f.transform[i][i] = scale;
    f.jacobian = std::pow(scale, static_cast<double>(D));
    return f;
  }

  /**
   * Frame for an envelope exp(-(x-c)^T M (x-c)) with M symmetric positive
   * definite: M = L L^T, u = L^T (x - c), so T = L^{-T}.
   */
  static GaussianFrame from_precision(const std::array<std::array<double, D>, D>& M,
                                      std::array<double, D> c = {}) {
    std::array<std::array<double, D>, D> L{};
    for (std::size_t j = 0; j < D; ++j) {
      double s = M[j][j];
      for (std::size_t k = 0; k < j; ++k) s -= L[j][k] * L[j][k];
      if (!(s > 0.0)) throw NumericError("Gaussian frame: precision matrix not positive definite");
      L[j][j] = std::sqrt(s);
      for (std::size_t i = j + 1; i < D; ++i) {
        double t = M[i][j];
        for (std::size_t k = 0; k < j; ++k) t -= L[i][k] * L[j][k];
        L[i][j] = t / L[j][j];
      }
    }
    // Invert L (lower triangular), then T = (L^{-1})^T.
    std::array<std::array<double, D>, D> Li{};
    for (std::size_t i = 0; i < D; ++i) {
      Li[i][i] = 1.0 / L[i][i];
      for (std::size_t j = 0; j < i; ++j) {
        double s = 0.0;
        for (std::size_t k = j; k < i; ++k) s += L[i][k] * Li[k][j];
        Li[i][j] = -s / L[i][i];
      }
    }
    GaussianFrame f;
    f.center = c;
    double det = 1.0;
    for (std::size_t i = 0; i < D; ++i) {
      det *= Li[i][i];
      for (std::size_t j = 0; j < D; ++j) f.transform[i][j] = Li[j][i];
    }
    f.jacobian = std::abs(det);
    return f;
  }

  std::array<double, D> map(const std::array<double, D>& u) const {
    std::array<double, D> x = center;
    for (std::size_t i = 0; i < D; ++i)
      for (std::size_t j = 0; j < D; ++j) x[i] += transform[i][j] * u[j];
    return x;
  }
};

using Frame2 = GaussianFrame<2>;
using Frame4 = GaussianFrame<4>;

/// int f(x) d^2x by the tensor rule in frame coordinates.
template <class F>
double integrate_2d(F&& f, const QuadratureRule& rule, const Frame2& frame = Frame2::isotropic(1.0)) {
  const int n = rule.order;
  KahanSum acc;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const auto x = frame.map({rule.nodes[a], rule.nodes[b]});
      acc.add(rule.scaled_weights[a] * rule.scaled_weights[b] * f(x[0], x[1]));
    }
  return frame.jacobian * acc.value();
}

/**
 * @brief int f(x) d^4x over R^4 by the tensor rule in frame coordinates.
 *
 * f receives (x0, x1, x2, x3). Partial sums are formed per first-axis node
 * and reduced in node order, so the result is independent of the thread count.
 */
template <class F>
double integrate_4d(F&& f, const QuadratureRule& rule, const Frame4& frame = Frame4::isotropic(1.0)) {
  const int n = rule.order;
  std::vector<double> partial(static_cast<std::size_t>(n), 0.0);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t ia) {
    const int a = static_cast<int>(ia);
    KahanSum acc;
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const auto x = frame.map({rule.nodes[a], rule.nodes[b], rule.nodes[c], rule.nodes[d]});
          const double w = rule.scaled_weights[b] * rule.scaled_weights[c] * rule.scaled_weights[d];
          acc.add(w * f(x[0], x[1], x[2], x[3]));
        }
    partial[ia] = rule.scaled_weights[a] * acc.value();
  });
  KahanSum total;
  for (double v : partial) total.add(v);
  return frame.jacobian * total.value();
}

}  // namespace ncwigner
