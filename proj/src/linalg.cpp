#include "spinconn/linalg.hpp"

#include <utility>

namespace spinconn {

namespace {

// Gauss-Jordan elimination with partial pivoting on an augmented [M | I]
// block.  Shared by the real and complex entry types.
template <class T>
bool gauss_jordan_invert(const T (&in)[4][4], T (&out)[4][4]) {
  T a[4][8] = {};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) a[i][j] = in[i][j];
    a[i][4 + i] = T(1);
  }
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    double best = std::abs(a[col][col]);
    for (int r = col + 1; r < 4; ++r) {
      const double mag = std::abs(a[r][col]);
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (best == 0.0) return false;
    if (pivot != col) {
      for (int j = 0; j < 8; ++j) std::swap(a[col][j], a[pivot][j]);
    }
    const T inv_p = T(1) / a[col][col];
    for (int j = 0; j < 8; ++j) a[col][j] = a[col][j] * inv_p;
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const T f = a[r][col];
      if (f == T(0)) continue;
      for (int j = 0; j < 8; ++j) a[r][j] = a[r][j] - f * a[col][j];
    }
  }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = a[i][4 + j];
  return true;
}

template <typename T>
T det4_impl(const T (&in)[4][4]) {
  T a[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a[i][j] = in[i][j];
  T det = T(1);
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    double best = std::abs(a[col][col]);
    for (int r = col + 1; r < 4; ++r) {
      if (std::abs(a[r][col]) > best) {
        best = std::abs(a[r][col]);
        pivot = r;
      }
    }
    if (best == 0.0) return T(0);
    if (pivot != col) {
      for (int j = 0; j < 4; ++j) std::swap(a[col][j], a[pivot][j]);
      det = -det;
    }
    det *= a[col][col];
    for (int r = col + 1; r < 4; ++r) {
      const T f = a[r][col] / a[col][col];
      for (int j = col; j < 4; ++j) a[r][j] -= f * a[col][j];
    }
  }
  return det;
}

}  // namespace

bool invert4(const Mat4d& in, Mat4d& out) {
  return gauss_jordan_invert(in.m, out.m);
}

bool invert4(const Mat4c& in, Mat4c& out) {
  return gauss_jordan_invert(in.m, out.m);
}

double det4(const Mat4d& in) { return det4_impl(in.m); }

cplx det4(const Mat4c& in) { return det4_impl(in.m); }

Mat4c expm(const Mat4c& x) {
  // Scaling and squaring around a truncated Taylor series.  For the small
  // norms produced by the gauge generator this is accurate to machine
  // precision.
  double scale = max_abs(x);
  int squarings = 0;
  while (scale > 0.5 && squarings < 40) {
    scale *= 0.5;
    ++squarings;
  }
  const double factor = std::ldexp(1.0, -squarings);
  Mat4c xs = factor * x;
  Mat4c term = identity4c();
  Mat4c sum = term;
  for (int k = 1; k <= 24; ++k) {
    term = (1.0 / static_cast<double>(k)) * matmul(term, xs);
    sum = sum + term;
    if (max_abs(term) < 1e-18) break;
  }
  for (int s = 0; s < squarings; ++s) sum = matmul(sum, sum);
  return sum;
}

}  // namespace spinconn
