#pragma once

#include "gaugecount/numeric.hpp"

#include <Eigen/Core>

#include <complex>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace gaugecount {

/// Coefficients of the n-th cyclotomic polynomial Phi_n, lowest degree first.
/// Cached; safe to call concurrently.
const std::vector<std::int64_t>& cyclotomic_polynomial(std::uint32_t n);

std::uint32_t euler_phi(std::uint32_t n);

/// Exact element of the cyclotomic field Q(zeta_n) (or the ring Z[zeta_n]
/// when Coeff is an integer type).
///
/// Stored in the power basis 1, zeta, ..., zeta^(phi(n)-1), i.e. reduced
/// modulo Phi_n, so two elements of the same order are equal iff their
/// coefficient vectors are. Elements of different orders are compared and
/// combined in Q(zeta_lcm).
template <typename Coeff>
class Cyclotomic {
 public:
  using coeff_type = Coeff;

  Cyclotomic() : order_(1), c_(1, Coeff(0)) {}
  Cyclotomic(int v) : order_(1), c_(1, Coeff(v)) {}  // NOLINT: Eigen needs Scalar(0), Scalar(1)
  Cyclotomic(long long v) : order_(1), c_(1, Coeff(v)) {}  // NOLINT
  explicit Cyclotomic(const Coeff& v) : order_(1), c_(1, v) {}

  template <typename Other>
  explicit Cyclotomic(const Cyclotomic<Other>& other) : order_(other.order()) {
    c_.reserve(other.coefficients().size());
    for (const auto& x : other.coefficients()) c_.push_back(Coeff(x));
  }

  /// zeta_n^k.
  static Cyclotomic root_of_unity(std::uint32_t n, std::int64_t k) {
    const auto nn = static_cast<std::int64_t>(n);
    const auto e = static_cast<std::size_t>(((k % nn) + nn) % nn);
    std::vector<Coeff> poly(e + 1, Coeff(0));
    poly[e] = Coeff(1);
    return from_polynomial(n, std::move(poly));
  }

  /// Reduces an arbitrary polynomial in zeta_n modulo Phi_n.
  static Cyclotomic from_polynomial(std::uint32_t n, std::vector<Coeff> poly) {
    Cyclotomic r;
    r.order_ = n;
    r.c_ = reduce(n, std::move(poly));
    return r;
  }

  std::uint32_t order() const noexcept { return order_; }
  const std::vector<Coeff>& coefficients() const noexcept { return c_; }

  bool is_zero() const {
    for (const auto& x : c_) {
      if (x != 0) return false;
    }
    return true;
  }

  /// True iff every coefficient beyond the constant term vanishes.
  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i) {
      if (c_[i] != 0) return false;
    }
    return true;
  }

  const Coeff& rational_part() const { return c_.front(); }

  /// Re-expresses the element in Q(zeta_m); m must be a multiple of order().
  Cyclotomic promoted(std::uint32_t m) const {
    if (m == order_) return *this;
    const std::uint32_t step = m / order_;
    std::vector<Coeff> poly(static_cast<std::size_t>(step) * c_.size(), Coeff(0));
    for (std::size_t k = 0; k < c_.size(); ++k) poly[k * step] = c_[k];
    return from_polynomial(m, std::move(poly));
  }

  /// Complex conjugate: zeta -> zeta^-1.
  Cyclotomic conj() const {
    if (order_ <= 2) return *this;
    std::vector<Coeff> poly(order_, Coeff(0));
    poly[0] = c_[0];
    for (std::size_t k = 1; k < c_.size(); ++k) poly[order_ - k] = c_[k];
    return from_polynomial(order_, std::move(poly));
  }

  std::complex<double> to_complex() const {
    std::complex<long double> acc = 0;
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      const long double angle = two_pi * static_cast<long double>(k) / static_cast<long double>(order_);
      acc += static_cast<long double>(to_double(c_[k])) * std::polar(1.0L, angle);
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
  }

  Cyclotomic pow(std::uint64_t e) const {
    Cyclotomic result(1);
    Cyclotomic base = *this;
    while (e > 0) {
      if (e & 1U) result *= base;
      e >>= 1U;
      if (e > 0) base *= base;
    }
    return result;
  }

  Cyclotomic operator-() const {
    Cyclotomic r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  Cyclotomic& operator+=(const Cyclotomic& o) {
    if (o.order_ != order_) {
      const auto m = static_cast<std::uint32_t>(lcm_u64(order_, o.order_));
      *this = promoted(m);
      return *this += o.promoted(m);
    }
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }

  Cyclotomic& operator-=(const Cyclotomic& o) { return *this += -o; }

  Cyclotomic& operator*=(const Cyclotomic& o) {
    if (o.order_ != order_) {
      const auto m = static_cast<std::uint32_t>(lcm_u64(order_, o.order_));
      *this = promoted(m);
      return *this *= o.promoted(m);
    }
    if (c_.size() == 1) {
      const Coeff s = c_[0];
      *this = o;
      for (auto& x : c_) x *= s;
      return *this;
    }
    std::vector<Coeff> poly(2 * c_.size() - 1, Coeff(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) {
        if (o.c_[j] == 0) continue;
        poly[i + j] += c_[i] * o.c_[j];
      }
    }
    c_ = reduce(order_, std::move(poly));
    return *this;
  }

  Cyclotomic& operator*=(const Coeff& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Coeff& s) { return a *= s; }
  friend Cyclotomic operator*(const Coeff& s, Cyclotomic a) { return a *= s; }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ == b.order_) return a.c_ == b.c_;
    const auto m = static_cast<std::uint32_t>(lcm_u64(a.order_, b.order_));
    return a.promoted(m).c_ == b.promoted(m).c_;
  }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  std::string to_string() const {
    std::string out;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      if (!out.empty()) out += " + ";
      out += "(" + gaugecount::to_string(c_[k]) + ")";
      if (k > 0) out += "*z" + std::to_string(order_) + "^" + std::to_string(k);
    }
    return out.empty() ? "0" : out;
  }

  friend std::ostream& operator<<(std::ostream& os, const Cyclotomic& z) { return os << z.to_string(); }

 private:
  static double to_double(const Coeff& x) { return static_cast<double>(x); }

  static std::vector<Coeff> reduce(std::uint32_t n, std::vector<Coeff> poly) {
    const auto& phi = cyclotomic_polynomial(n);
    const std::size_t deg = phi.size() - 1;
    for (std::size_t i = poly.size(); i-- > deg;) {
      if (poly[i] == 0) continue;
      const Coeff lead = poly[i];
      // Phi_n is monic: subtract lead * x^(i-deg) * Phi_n.
      for (std::size_t j = 0; j < deg; ++j) {
        if (phi[j] != 0) poly[i - deg + j] -= lead * Coeff(phi[j]);
      }
      poly[i] = Coeff(0);
    }
    poly.resize(deg, Coeff(0));
    return poly;
  }

  std::uint32_t order_;
  std::vector<Coeff> c_;
};

using CycloInt = Cyclotomic<BigInt>;
using CycloRat = Cyclotomic<BigRational>;

}  // namespace gaugecount

namespace Eigen {

template <typename Coeff>
struct NumTraits<gaugecount::Cyclotomic<Coeff>> : GenericNumTraits<gaugecount::Cyclotomic<Coeff>> {
  using Real = gaugecount::Cyclotomic<Coeff>;
  using NonInteger = gaugecount::Cyclotomic<Coeff>;
  using Nested = gaugecount::Cyclotomic<Coeff>;
  using Literal = gaugecount::Cyclotomic<Coeff>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 30,
    MulCost = 200
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen

namespace gaugecount {

template <typename Coeff>
using CycloMatrix = Eigen::Matrix<Cyclotomic<Coeff>, Eigen::Dynamic, Eigen::Dynamic>;

using ExactMatrix = CycloMatrix<BigRational>;

/// Conjugate transpose for exact matrices (Eigen's adjoint() treats the scalar as real).
template <typename Coeff>
CycloMatrix<Coeff> exact_adjoint(const CycloMatrix<Coeff>& m) {
  CycloMatrix<Coeff> r(m.cols(), m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(j, i) = m(i, j).conj();
  }
  return r;
}

template <typename Coeff>
Eigen::MatrixXcd to_complex_matrix(const CycloMatrix<Coeff>& m) {
  Eigen::MatrixXcd r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).to_complex();
  }
  return r;
}

}  // namespace gaugecount
