#pragma once

#include "torsionlab/common.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <string>

namespace torsionlab {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Element a + b*sqrt(5) of the real quadratic field Q(sqrt5), with exact
// rational coefficients. Comparisons are exact: the sign of a + b*sqrt5 is
// decided by comparing a^2 with 5 b^2 when a and b disagree in sign.
struct QS5 {
  Rational a{0};
  Rational b{0};

  QS5() = default;
  QS5(int v) : a(v) {}  // NOLINT: implicit integer promotion is intended
  QS5(Rational v) : a(std::move(v)) {}
  QS5(Rational av, Rational bv) : a(std::move(av)), b(std::move(bv)) {}

  static QS5 sqrt5() { return QS5(Rational(0), Rational(1)); }
  static QS5 golden() { return QS5(Rational(1, 2), Rational(1, 2)); }       // (1+sqrt5)/2
  static QS5 golden_inv() { return QS5(Rational(-1, 2), Rational(1, 2)); }  // (sqrt5-1)/2

  bool is_rational() const { return b == 0; }

  friend QS5 operator+(const QS5& x, const QS5& y) { return QS5(x.a + y.a, x.b + y.b); }
  friend QS5 operator-(const QS5& x, const QS5& y) { return QS5(x.a - y.a, x.b - y.b); }
  friend QS5 operator-(const QS5& x) { return QS5(-x.a, -x.b); }
  friend QS5 operator*(const QS5& x, const QS5& y) {
    return QS5(x.a * y.a + 5 * x.b * y.b, x.a * y.b + x.b * y.a);
  }
  friend QS5 operator/(const QS5& x, const QS5& y) {
    const Rational norm = y.a * y.a - 5 * y.b * y.b;  // field norm of the conjugate pair
    if (norm == 0) throw NumericError("QS5: division by zero");
    return QS5((x.a * y.a - 5 * x.b * y.b) / norm, (x.b * y.a - x.a * y.b) / norm);
  }
  QS5& operator+=(const QS5& y) { return *this = *this + y; }
  QS5& operator-=(const QS5& y) { return *this = *this - y; }
  QS5& operator*=(const QS5& y) { return *this = *this * y; }

  int sign() const {
    const int sa = a.sign();
    const int sb = b.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // a and b disagree: compare |a| with |b| sqrt5 exactly
    const Rational lhs = a * a;
    const Rational rhs = 5 * b * b;
    const int cmp = lhs.compare(rhs);
    return cmp == 0 ? 0 : (cmp > 0 ? sa : sb);
  }

  friend bool operator==(const QS5& x, const QS5& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(const QS5& x, const QS5& y) { return !(x == y); }
  friend bool operator<(const QS5& x, const QS5& y) { return (x - y).sign() < 0; }
  friend bool operator>(const QS5& x, const QS5& y) { return (x - y).sign() > 0; }
  friend bool operator<=(const QS5& x, const QS5& y) { return (x - y).sign() <= 0; }
  friend bool operator>=(const QS5& x, const QS5& y) { return (x - y).sign() >= 0; }

  double to_double() const {
    return a.convert_to<double>() + b.convert_to<double>() * 2.2360679774997896964091736687747;
  }

  std::string str() const {
    std::string s = a.str();
    if (b != 0) s += " + (" + b.str() + ")*sqrt5";
    return s;
  }
};

inline QS5 min(const QS5& x, const QS5& y) { return x <= y ? x : y; }
inline QS5 max(const QS5& x, const QS5& y) { return x >= y ? x : y; }

struct Vec2q {
  QS5 x, y;
  friend Vec2q operator+(const Vec2q& u, const Vec2q& v) { return {u.x + v.x, u.y + v.y}; }
  friend Vec2q operator-(const Vec2q& u, const Vec2q& v) { return {u.x - v.x, u.y - v.y}; }
  friend Vec2q operator*(const QS5& c, const Vec2q& v) { return {c * v.x, c * v.y}; }
  friend bool operator==(const Vec2q& u, const Vec2q& v) { return u.x == v.x && u.y == v.y; }
  Vec2 to_double() const { return Vec2(x.to_double(), y.to_double()); }
};

inline QS5 cross_q(const Vec2q& u, const Vec2q& v) { return u.x * v.y - u.y * v.x; }

struct Mat2q {
  QS5 m00, m01, m10, m11;
  Vec2q operator*(const Vec2q& v) const { return {m00 * v.x + m01 * v.y, m10 * v.x + m11 * v.y}; }
  QS5 det() const { return m00 * m11 - m01 * m10; }
  Vec2q solve(const Vec2q& rhs) const {  // Cramer, exact
    const QS5 d = det();
    if (d.sign() == 0) throw NumericError("Mat2q: singular system");
    return {(rhs.x * m11 - m01 * rhs.y) / d, (m00 * rhs.y - rhs.x * m10) / d};
  }
};

}  // namespace torsionlab
