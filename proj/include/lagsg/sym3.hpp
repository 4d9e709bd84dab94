#pragma once

#include <array>
#include <cstddef>

namespace lagsg {

using Vec3 = std::array<double, 3>;

// General 3x3 matrix, row-major.
struct Mat3 {
  std::array<double, 9> a{};

  static Mat3 identity();
  double& operator()(std::size_t i, std::size_t j) { return a[3 * i + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[3 * i + j]; }

  double det() const;
  Mat3 adj() const;
  Mat3 transpose() const;
  // Throws DomainError when |det| <= rel_tol * (max|a|)^3.
  Mat3 inverse(double rel_tol = 1e-14) const;
  Vec3 operator*(const Vec3& v) const;
  friend Mat3 operator*(const Mat3& x, const Mat3& y);
  double max_abs() const;
};

// Symmetric 3x3 matrix stored as its six independent entries
// (xx, xy, xz, yy, yz, zz).
class Sym3 {
 public:
  Sym3() = default;
  Sym3(double xx, double xy, double xz, double yy, double yz, double zz) : e_{xx, xy, xz, yy, yz, zz} {}
  static Sym3 diagonal(double a, double b, double c) { return Sym3(a, 0, 0, b, 0, c); }
  // Symmetric part of a general matrix.
  static Sym3 from_mat(const Mat3& m);

  double operator()(std::size_t i, std::size_t j) const { return e_[slot(i, j)]; }
  void set(std::size_t i, std::size_t j, double v) { e_[slot(i, j)] = v; }
  const std::array<double, 6>& entries() const { return e_; }

  double det() const;
  Sym3 adj() const;
  Sym3 inverse(double rel_tol = 1e-14) const;
  Mat3 to_mat() const;
  double max_abs() const;
  double quadratic_form(const Vec3& v) const;
  Vec3 operator*(const Vec3& v) const;

  // Eigenvalues in ascending order (cyclic Jacobi; deterministic).
  std::array<double, 3> eigenvalues() const;

  friend Sym3 operator*(double s, const Sym3& m);
  friend Sym3 operator+(const Sym3& a, const Sym3& b);
  friend Sym3 operator-(const Sym3& a, const Sym3& b);

  static constexpr std::size_t slot(std::size_t i, std::size_t j) {
    if (i > j) return slot(j, i);
    return i == 0 ? j : (i == 1 ? 2 + j : 5);
  }

 private:
  std::array<double, 6> e_{};
};

// max |a_ij - b_ij| / max(1, max|a_ij|)
double relative_difference(const Sym3& a, const Sym3& b);

}  // namespace lagsg
