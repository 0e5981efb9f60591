#pragma once

// Exact quaternions over Q(sqrt2, sqrt5), used to generate the binary
// polyhedral groups and their two-dimensional representations.

#include "gaugecount/cyclotomic.hpp"
#include "gaugecount/group.hpp"
#include "gaugecount/numeric.hpp"

#include <array>
#include <string>

namespace gaugecount::detail {

/// a + b*sqrt2 + c*sqrt5 + d*sqrt10
struct QField {
  std::array<BigRational, 4> v{};

  QField() = default;
  QField(BigRational a, BigRational b = 0, BigRational c = 0, BigRational d = 0) : v{a, b, c, d} {}

  friend QField operator+(const QField& p, const QField& q) {
    return {p.v[0] + q.v[0], p.v[1] + q.v[1], p.v[2] + q.v[2], p.v[3] + q.v[3]};
  }
  friend QField operator-(const QField& p, const QField& q) {
    return {p.v[0] - q.v[0], p.v[1] - q.v[1], p.v[2] - q.v[2], p.v[3] - q.v[3]};
  }
  QField operator-() const { return {-v[0], -v[1], -v[2], -v[3]}; }
  friend QField operator*(const QField& p, const QField& q) {
    const auto& [a1, b1, c1, d1] = p.v;
    const auto& [a2, b2, c2, d2] = q.v;
    return {a1 * a2 + 2 * b1 * b2 + 5 * c1 * c2 + 10 * d1 * d2,
            a1 * b2 + b1 * a2 + 5 * (c1 * d2 + d1 * c2),
            a1 * c2 + c1 * a2 + 2 * (b1 * d2 + d1 * b2),
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2};
  }
  friend bool operator==(const QField& p, const QField& q) { return p.v == q.v; }

  bool is_zero() const { return v[0] == 0 && v[1] == 0 && v[2] == 0 && v[3] == 0; }

  std::string to_string() const {
    static const char* const kRad[] = {"", "r2", "r5", "r10"};
    std::string out;
    for (int k = 0; k < 4; ++k) {
      if (v[k] == 0) continue;
      std::string term = gaugecount::to_string(v[k]);
      if (k > 0) term = (v[k] == 1 ? std::string() : v[k] == -1 ? std::string("-") : term + "*") + kRad[k];
      if (!out.empty() && term.front() != '-') out += "+";
      out += term;
    }
    return out.empty() ? "0" : out;
  }

  CycloRat to_cyclotomic() const {
    const CycloRat z8 = CycloRat::root_of_unity(8, 1);
    const CycloRat z5 = CycloRat::root_of_unity(5, 1);
    const CycloRat sqrt2 = z8 + z8.conj();
    const CycloRat sqrt5 = CycloRat(2) * (z5 + z5.conj()) + CycloRat(1);
    CycloRat r(v[0]);
    if (v[1] != 0) r += sqrt2 * v[1];
    if (v[2] != 0) r += sqrt5 * v[2];
    if (v[3] != 0) r += sqrt2 * sqrt5 * v[3];
    return r;
  }
};

/// w + x i + y j + z k
struct Quaternion {
  QField w, x, y, z;

  friend Quaternion operator*(const Quaternion& p, const Quaternion& q) {
    return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
  }
  friend bool operator==(const Quaternion& p, const Quaternion& q) {
    return p.w == q.w && p.x == q.x && p.y == q.y && p.z == q.z;
  }

  std::string to_string() const {
    static const char* const kUnit[] = {"", "i", "j", "k"};
    const QField* parts[] = {&w, &x, &y, &z};
    std::string out;
    for (int k = 0; k < 4; ++k) {
      if (parts[k]->is_zero()) continue;
      std::string c = parts[k]->to_string();
      const bool compound = c.find_first_of("+*", 1) != std::string::npos || c.find('-', 1) != std::string::npos;
      if (compound) c = "(" + c + ")";
      std::string term;
      if (k == 0) {
        term = c;
      } else if (c == "1") {
        term = kUnit[k];
      } else if (c == "-1") {
        term = std::string("-") + kUnit[k];
      } else {
        term = c + kUnit[k];
      }
      if (!out.empty() && term.front() != '-') out += "+";
      out += term;
    }
    return out.empty() ? "0" : out;
  }
};

/// SU(2) image [[w + x i, y + z i], [-y + z i, w - x i]] over Q(zeta_n).
inline ExactMatrix su2_matrix(const Quaternion& q) {
  const CycloRat i = CycloRat::root_of_unity(4, 1);
  const CycloRat w = q.w.to_cyclotomic();
  const CycloRat x = q.x.to_cyclotomic();
  const CycloRat y = q.y.to_cyclotomic();
  const CycloRat z = q.z.to_cyclotomic();
  ExactMatrix m(2, 2);
  m(0, 0) = w + x * i;
  m(0, 1) = y + z * i;
  m(1, 0) = -y + z * i;
  m(1, 1) = w - x * i;
  return m;
}

/// Generators of the quaternion and binary polyhedral families.
std::vector<Quaternion> quaternion_generators(GroupFamily family);

/// The quaternion behind each element index of builtin_group(family).
const std::vector<Quaternion>& quaternion_elements(GroupFamily family);

}  // namespace gaugecount::detail
