#pragma once

// Fixed-size dimension-4 real and complex tensor types with value
// semantics.  All arithmetic is written as explicit index loops.

#include <array>
#include <cmath>
#include <complex>

namespace spinconn {

using cplx = std::complex<double>;
using Vec4 = std::array<double, 4>;

struct Mat4d {
  double m[4][4] = {};
};

struct Mat4c {
  cplx m[4][4] = {};
};

struct Ten3d {
  double t[4][4][4] = {};
};

struct Ten3c {
  cplx t[4][4][4] = {};
};

struct Ten4d {
  double t[4][4][4][4] = {};
};

struct Ten4c {
  cplx t[4][4][4][4] = {};
};

// One 4x4 complex matrix per spacial index.
using GammaSet = std::array<Mat4c, 4>;

inline double dot(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

inline double norm2(const Vec4& v) { return std::sqrt(dot(v, v)); }

inline double norm_inf(const Vec4& v) {
  double r = 0.0;
  for (int i = 0; i < 4; i++) r = std::max(r, std::fabs(v[i]));
  return r;
}

inline Vec4 operator+(const Vec4& a, const Vec4& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

inline Vec4 operator-(const Vec4& a, const Vec4& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

inline Vec4 operator*(double s, const Vec4& v) {
  return {s * v[0], s * v[1], s * v[2], s * v[3]};
}

inline Mat4d operator+(const Mat4d& a, const Mat4d& b) {
  Mat4d r;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++) r.m[i][j] = a.m[i][j] + b.m[i][j];
  return r;
}

inline Mat4d operator-(const Mat4d& a, const Mat4d& b) {
  Mat4d r;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++) r.m[i][j] = a.m[i][j] - b.m[i][j];
  return r;
}

inline Mat4d operator*(double s, const Mat4d& a) {
  Mat4d r;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++) r.m[i][j] = s * a.m[i][j];
  return r;
}

inline Mat4c operator+(const Mat4c& a, const Mat4c& b) {
  Mat4c r;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++) r.m[i][j] = a.m[i][j] + b.m[i][j];
  return r;
}

inline Mat4c operator-(const Mat4c& a, const Mat4c& b) {
  Mat4c r;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++) r.m[i][j] = a.m[i][j] - b.m[i][j];
  return r;
}

inline Mat4c operator*(double s, const Mat4c& a) {
  Mat4c r;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++) r.m[i][j] = s * a.m[i][j];
  return r;
}

inline Mat4c operator*(cplx s, const Mat4c& a) {
  Mat4c r;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++) r.m[i][j] = s * a.m[i][j];
  return r;
}

inline Ten3d operator+(const Ten3d& a, const Ten3d& b) {
  Ten3d r;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++)
      for (int k = 0; k < 4; k++) r.t[i][j][k] = a.t[i][j][k] + b.t[i][j][k];
  return r;
}

inline Ten3d operator-(const Ten3d& a, const Ten3d& b) {
  Ten3d r;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++)
      for (int k = 0; k < 4; k++) r.t[i][j][k] = a.t[i][j][k] - b.t[i][j][k];
  return r;
}

inline Ten3d operator*(double s, const Ten3d& a) {
  Ten3d r;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++)
      for (int k = 0; k < 4; k++) r.t[i][j][k] = s * a.t[i][j][k];
  return r;
}

inline Ten3c operator+(const Ten3c& a, const Ten3c& b) {
  Ten3c r;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++)
      for (int k = 0; k < 4; k++) r.t[i][j][k] = a.t[i][j][k] + b.t[i][j][k];
  return r;
}

inline Ten3c operator-(const Ten3c& a, const Ten3c& b) {
  Ten3c r;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++)
      for (int k = 0; k < 4; k++) r.t[i][j][k] = a.t[i][j][k] - b.t[i][j][k];
  return r;
}

inline Ten3c operator*(double s, const Ten3c& a) {
  Ten3c r;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++)
      for (int k = 0; k < 4; k++) r.t[i][j][k] = s * a.t[i][j][k];
  return r;
}

inline Ten4d operator+(const Ten4d& a, const Ten4d& b) {
  Ten4d r;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++)
      for (int k = 0; k < 4; k++)
        for (int l = 0; l < 4; l++)
          r.t[i][j][k][l] = a.t[i][j][k][l] + b.t[i][j][k][l];
  return r;
}

inline Ten4d operator-(const Ten4d& a, const Ten4d& b) {
  Ten4d r;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++)
      for (int k = 0; k < 4; k++)
        for (int l = 0; l < 4; l++)
          r.t[i][j][k][l] = a.t[i][j][k][l] - b.t[i][j][k][l];
  return r;
}

inline Ten4d operator*(double s, const Ten4d& a) {
  Ten4d r;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++)
      for (int k = 0; k < 4; k++)
        for (int l = 0; l < 4; l++) r.t[i][j][k][l] = s * a.t[i][j][k][l];
  return r;
}

inline Ten4c operator+(const Ten4c& a, const Ten4c& b) {
  Ten4c r;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++)
      for (int k = 0; k < 4; k++)
        for (int l = 0; l < 4; l++)
          r.t[i][j][k][l] = a.t[i][j][k][l] + b.t[i][j][k][l];
  return r;
}

inline Ten4c operator-(const Ten4c& a, const Ten4c& b) {
  Ten4c r;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++)
      for (int k = 0; k < 4; k++)
        for (int l = 0; l < 4; l++)
          r.t[i][j][k][l] = a.t[i][j][k][l] - b.t[i][j][k][l];
  return r;
}

inline Ten4c operator*(double s, const Ten4c& a) {
  Ten4c r;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++)
      for (int k = 0; k < 4; k++)
        for (int l = 0; l < 4; l++) r.t[i][j][k][l] = s * a.t[i][j][k][l];
  return r;
}

inline GammaSet operator+(const GammaSet& a, const GammaSet& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

inline GammaSet operator-(const GammaSet& a, const GammaSet& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

inline GammaSet operator*(double s, const GammaSet& a) {
  return {s * a[0], s * a[1], s * a[2], s * a[3]};
}

inline Mat4d identity4d() {
  Mat4d r;
  for (int i = 0; i < 4; i++) r.m[i][i] = 1.0;
  return r;
}

inline Mat4c identity4c() {
  Mat4c r;
  for (int i = 0; i < 4; i++) r.m[i][i] = 1.0;
  return r;
}

inline Mat4d matmul(const Mat4d& a, const Mat4d& b) {
  Mat4d r;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++) {
      double s = 0.0;
      for (int k = 0; k < 4; k++) s += a.m[i][k] * b.m[k][j];
      r.m[i][j] = s;
    }
  return r;
}

inline Mat4c matmul(const Mat4c& a, const Mat4c& b) {
  Mat4c r;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++) {
      cplx s = 0.0;
      for (int k = 0; k < 4; k++) s += a.m[i][k] * b.m[k][j];
      r.m[i][j] = s;
    }
  return r;
}

inline Mat4d transpose(const Mat4d& a) {
  Mat4d r;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++) r.m[i][j] = a.m[j][i];
  return r;
}

inline Mat4c transpose(const Mat4c& a) {
  Mat4c r;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++) r.m[i][j] = a.m[j][i];
  return r;
}

inline Mat4c conjugate(const Mat4c& a) {
  Mat4c r;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++) r.m[i][j] = std::conj(a.m[i][j]);
  return r;
}

inline GammaSet conjugate(const GammaSet& g) {
  return {conjugate(g[0]), conjugate(g[1]), conjugate(g[2]), conjugate(g[3])};
}

inline Mat4c to_complex(const Mat4d& a) {
  Mat4c r;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++) r.m[i][j] = a.m[i][j];
  return r;
}

inline cplx trace(const Mat4c& a) {
  return a.m[0][0] + a.m[1][1] + a.m[2][2] + a.m[3][3];
}

inline double max_abs(const Mat4d& a) {
  double r = 0.0;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++) r = std::max(r, std::fabs(a.m[i][j]));
  return r;
}

inline double max_abs(const Mat4c& a) {
  double r = 0.0;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++) r = std::max(r, std::abs(a.m[i][j]));
  return r;
}

inline double max_abs(const Ten3d& a) {
  double r = 0.0;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++)
      for (int k = 0; k < 4; k++) r = std::max(r, std::fabs(a.t[i][j][k]));
  return r;
}

inline double max_abs(const Ten3c& a) {
  double r = 0.0;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++)
      for (int k = 0; k < 4; k++) r = std::max(r, std::abs(a.t[i][j][k]));
  return r;
}

inline double max_abs(const Ten4d& a) {
  double r = 0.0;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++)
      for (int k = 0; k < 4; k++)
        for (int l = 0; l < 4; l++) r = std::max(r, std::fabs(a.t[i][j][k][l]));
  return r;
}

inline double max_abs(const Ten4c& a) {
  double r = 0.0;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++)
      for (int k = 0; k < 4; k++)
        for (int l = 0; l < 4; l++) r = std::max(r, std::abs(a.t[i][j][k][l]));
  return r;
}

inline double max_abs(const GammaSet& g) {
  double r = 0.0;
  for (int k = 0; k < 4; k++) r = std::max(r, max_abs(g[k]));
  return r;
}

// Gauss-Jordan elimination with partial pivoting.  Returns false when the
// matrix is numerically singular.
bool invert4(const Mat4d& a, Mat4d& out);
bool invert4(const Mat4c& a, Mat4c& out);

double det4(const Mat4d& a);
cplx det4(const Mat4c& a);

// Matrix exponential by scaling and squaring with a Taylor series.
Mat4c expm(const Mat4c& x);

}  // namespace spinconn
