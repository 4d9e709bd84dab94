#include "lagsg/sym3.hpp"

#include <algorithm>
#include <cmath>

#include "lagsg/error.hpp"

namespace lagsg {

Mat3 Mat3::identity() {
  Mat3 m;
  m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
  return m;
}

double Mat3::det() const {
  const Mat3& m = *this;
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

Mat3 Mat3::adj() const {
  const Mat3& m = *this;
  Mat3 r;
  r(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  r(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
  r(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
  r(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
  r(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
  r(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
  r(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
  r(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
  r(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return r;
}

Mat3 Mat3::transpose() const {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
  return r;
}

double Mat3::max_abs() const {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

Mat3 Mat3::inverse(double rel_tol) const {
  const double d = det();
  const double scale = max_abs();
  if (!(std::abs(d) > rel_tol * scale * scale * scale)) throw DomainError("matrix is singular");
  Mat3 r = adj();
  for (double& v : r.a) v /= d;
  return r;
}

Vec3 Mat3::operator*(const Vec3& v) const {
  Vec3 r{};
  for (std::size_t i = 0; i < 3; ++i) r[i] = (*this)(i, 0) * v[0] + (*this)(i, 1) * v[1] + (*this)(i, 2) * v[2];
  return r;
}

Mat3 operator*(const Mat3& x, const Mat3& y) {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = x(i, 0) * y(0, j) + x(i, 1) * y(1, j) + x(i, 2) * y(2, j);
  return r;
}

Sym3 Sym3::from_mat(const Mat3& m) {
  Sym3 s;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j) s.set(i, j, 0.5 * (m(i, j) + m(j, i)));
  return s;
}

double Sym3::det() const {
  const auto& [a, b, c, d, e, f] = e_;
  return a * (d * f - e * e) - b * (b * f - c * e) + c * (b * e - d * c);
}

Sym3 Sym3::adj() const {
  const auto& [a, b, c, d, e, f] = e_;
  return Sym3(d * f - e * e, c * e - b * f, b * e - c * d, a * f - c * c, b * c - a * e, a * d - b * b);
}

Sym3 Sym3::inverse(double rel_tol) const {
  const double d = det();
  const double scale = max_abs();
  if (!(std::abs(d) > rel_tol * scale * scale * scale)) throw DomainError("symmetric matrix is singular");
  return (1.0 / d) * adj();
}

Mat3 Sym3::to_mat() const {
  Mat3 m;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = (*this)(i, j);
  return m;
}

double Sym3::max_abs() const {
  double m = 0.0;
  for (double v : e_) m = std::max(m, std::abs(v));
  return m;
}

double Sym3::quadratic_form(const Vec3& v) const {
  const auto& [a, b, c, d, e, f] = e_;
  return a * v[0] * v[0] + d * v[1] * v[1] + f * v[2] * v[2] + 2.0 * (b * v[0] * v[1] + c * v[0] * v[2] + e * v[1] * v[2]);
}

Vec3 Sym3::operator*(const Vec3& v) const {
  Vec3 r{};
  for (std::size_t i = 0; i < 3; ++i) r[i] = (*this)(i, 0) * v[0] + (*this)(i, 1) * v[1] + (*this)(i, 2) * v[2];
  return r;
}

std::array<double, 3> Sym3::eigenvalues() const {
  double m[3][3];
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m[i][j] = (*this)(i, j);

  for (int sweep = 0; sweep < 64; ++sweep) {
    const double off = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
    const double diag = m[0][0] * m[0][0] + m[1][1] * m[1][1] + m[2][2] * m[2][2];
    if (off == 0.0 || off <= 1e-40 * diag) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        if (m[p][q] == 0.0) continue;
        const double theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < 3; ++k) {
          const double mkp = m[k][p], mkq = m[k][q];
          m[k][p] = c * mkp - s * mkq;
          m[k][q] = s * mkp + c * mkq;
        }
        for (int k = 0; k < 3; ++k) {
          const double mpk = m[p][k], mqk = m[q][k];
          m[p][k] = c * mpk - s * mqk;
          m[q][k] = s * mpk + c * mqk;
        }
      }
    }
  }
  std::array<double, 3> ev{m[0][0], m[1][1], m[2][2]};
  std::sort(ev.begin(), ev.end());
  return ev;
}

Sym3 operator*(double s, const Sym3& m) {
  Sym3 r = m;
  for (std::size_t k = 0; k < 6; ++k) r.e_[k] *= s;
  return r;
}

Sym3 operator+(const Sym3& a, const Sym3& b) {
  Sym3 r = a;
  for (std::size_t k = 0; k < 6; ++k) r.e_[k] += b.e_[k];
  return r;
}

Sym3 operator-(const Sym3& a, const Sym3& b) {
  Sym3 r = a;
  for (std::size_t k = 0; k < 6; ++k) r.e_[k] -= b.e_[k];
  return r;
}

double relative_difference(const Sym3& a, const Sym3& b) {
  return (a - b).max_abs() / std::max(1.0, a.max_abs());
}

}  // namespace lagsg
