#pragma once

#include <array>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace seqsmooth {

// Dense linear algebra for the tiny (p+1)x(p+1) systems kept per grid
// point. Dimensions are capped at kMaxBasis so everything lives on the
// stack; degree-p fits use dimension p+1.
inline constexpr int kMaxBasis = 6;

struct SmallVec {
  int n = 0;
  std::array<double, kMaxBasis> v{};

  static SmallVec zero(int n) {
    SmallVec out;
    out.n = n;
    return out;
  }

  double& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
};

struct SmallMat {
  int n = 0;
  std::array<double, kMaxBasis * kMaxBasis> a{};

  static SmallMat identity_scaled(int n, double s) {
    SmallMat out;
    out.n = n;
    for (int i = 0; i < n; ++i) out.at(i, i) = s;
    return out;
  }

  double& at(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
  double at(int i, int j) const {
    return a[static_cast<std::size_t>(i * n + j)];
  }
};

// In-place (A + w vv^T)^-1 given A^-1, for w >= 0. Reformulated from the
// rank-one inverse identity so that w multiplies the correction instead
// of dividing the inner term:
//   (A + w vv^T)^-1 = A^-1 - (w / (1 + w v^T A^-1 v)) (A^-1 v)(A^-1 v)^T.
// Cost O(n^2). w == 0 leaves the matrix untouched. Only the upper
// triangle is computed and mirrored, so the inverse stays exactly
// symmetric along the whole update chain.
inline void apply_rank_one_inverse_update(SmallMat& a_inv, const double* v,
                                          double w) {
  if (w == 0.0) return;
  const int n = a_inv.n;
  double u[kMaxBasis];
  double q = 0.0;
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += a_inv.at(i, j) * v[j];
    u[i] = acc;
    q += acc * v[i];
  }
  const double s = w / (1.0 + w * q);
  for (int i = 0; i < n; ++i) {
    const double su = s * u[i];
    for (int j = i; j < n; ++j) {
      const double val = a_inv.at(i, j) - su * u[j];
      a_inv.at(i, j) = val;
      a_inv.at(j, i) = val;
    }
  }
}

// Checked value-returning form of the update above.
inline SmallMat rank_one_inverse_update(const SmallMat& a_inv,
                                        const SmallVec& v, double scale) {
  if (a_inv.n != v.n)
    throw std::invalid_argument("rank_one_inverse_update: dimension mismatch");
  if (!std::isfinite(scale) || scale < 0.0)
    throw std::invalid_argument(
        "rank_one_inverse_update: scale must be finite and nonnegative");
  for (int i = 0; i < v.n; ++i)
    if (!std::isfinite(v[i]))
      throw std::invalid_argument("rank_one_inverse_update: non-finite vector");
  for (int i = 0; i < a_inv.n * a_inv.n; ++i)
    if (!std::isfinite(a_inv.a[static_cast<std::size_t>(i)]))
      throw std::invalid_argument("rank_one_inverse_update: non-finite matrix");
  SmallMat out = a_inv;
  apply_rank_one_inverse_update(out, v.v.data(), scale);
  return out;
}

// First component of M b, i.e. the intercept of a solved local fit.
inline double intercept_of(const SmallMat& m, const SmallVec& b) {
  double acc = 0.0;
  for (int j = 0; j < m.n; ++j) acc += m.at(0, j) * b[j];
  return acc;
}

// Gauss-Jordan solve with partial pivoting. Returns false on a pivot
// smaller than `pivot_floor` times the largest initial entry.
inline bool solve_linear(SmallMat a, SmallVec b, SmallVec& out,
                         double pivot_floor = 1e-13) {
  const int n = a.n;
  if (b.n != n) throw std::invalid_argument("solve_linear: dimension mismatch");
  double scale = 0.0;
  for (int i = 0; i < n * n; ++i)
    scale = std::max(scale, std::fabs(a.a[static_cast<std::size_t>(i)]));
  if (scale == 0.0) return false;

  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(a.at(r, col)) > std::fabs(a.at(piv, col))) piv = r;
    if (std::fabs(a.at(piv, col)) < pivot_floor * scale) return false;
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(col, j));
      std::swap(b[piv], b[col]);
    }
    const double inv = 1.0 / a.at(col, col);
    for (int j = col; j < n; ++j) a.at(col, j) *= inv;
    b[col] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a.at(r, col);
      if (f == 0.0) continue;
      for (int j = col; j < n; ++j) a.at(r, j) -= f * a.at(col, j);
      b[r] -= f * b[col];
    }
  }
  out = b;
  return true;
}

}  // namespace seqsmooth
