#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace hbd {

using Rational = mpq_class;
using Complex = std::complex<double>;

/// Exact element of Q(i): a pair of canonicalized GMP rationals.
struct Gaussian {
  Rational re{0};
  Rational im{0};

  Gaussian() = default;
  Gaussian(long r) : re(r) {}  // NOLINT: integers embed implicitly
  Gaussian(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}

  Gaussian operator-() const { return {-re, -im}; }
  Gaussian& operator+=(const Gaussian& o) { re += o.re; im += o.im; return *this; }
  Gaussian& operator-=(const Gaussian& o) { re -= o.re; im -= o.im; return *this; }
  Gaussian& operator*=(const Gaussian& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Gaussian& operator/=(const Gaussian& o);

  Rational norm() const { return re * re + im * im; }
  Gaussian conj() const { return {re, -im}; }
  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  friend bool operator==(const Gaussian& a, const Gaussian& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }
};

std::ostream& operator<<(std::ostream& os, const Gaussian& g);

/// Parses "p/q", "p", or a finite decimal like "-0.125" into an exact rational.
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& q);

// Process-wide zero-test tolerance for the floating backend (default 1e-9).
double epsilon();
void set_epsilon(double eps);

class EpsilonGuard {
 public:
  explicit EpsilonGuard(double eps) : saved_(epsilon()) { set_epsilon(eps); }
  ~EpsilonGuard() { set_epsilon(saved_); }
  EpsilonGuard(const EpsilonGuard&) = delete;
  EpsilonGuard& operator=(const EpsilonGuard&) = delete;

 private:
  double saved_;
};

/// Backend traits. Generic code is written against Field<S> for S in {Gaussian, Complex}.
template <class S>
struct Field;

template <>
struct Field<Gaussian> {
  static constexpr bool exact = true;
  static constexpr const char* name = "exact";

  static Gaussian zero() { return {}; }
  static Gaussian one() { return Gaussian(1); }
  static Gaussian imag_unit() { return {Rational(0), Rational(1)}; }
  static Gaussian from_int(long v) { return Gaussian(v); }
  static Gaussian from_ratio(long num, long den) { Rational q(num, den); q.canonicalize(); return Gaussian(q); }
  static Gaussian from_gaussian(const Gaussian& g) { return g; }
  static Gaussian conj(const Gaussian& x) { return x.conj(); }
  static Gaussian re(const Gaussian& x) { return Gaussian(x.re); }
  static Gaussian im(const Gaussian& x) { return Gaussian(x.im); }
  static double magnitude(const Gaussian& x) { return std::abs(to_complex(x)); }
  static bool is_zero(const Gaussian& x, double /*scale*/ = 1.0) { return x.is_zero(); }
  /// Sign of the real part; exact.
  static int real_sign(const Gaussian& x, double /*scale*/ = 1.0) { return sgn(x.re); }
  static Complex to_complex(const Gaussian& x) { return {x.re.get_d(), x.im.get_d()}; }
};

template <>
struct Field<Complex> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";

  static Complex zero() { return {0.0, 0.0}; }
  static Complex one() { return {1.0, 0.0}; }
  static Complex imag_unit() { return {0.0, 1.0}; }
  static Complex from_int(long v) { return {static_cast<double>(v), 0.0}; }
  static Complex from_ratio(long num, long den) { return {static_cast<double>(num) / static_cast<double>(den), 0.0}; }
  static Complex from_gaussian(const Gaussian& g) { return {g.re.get_d(), g.im.get_d()}; }
  static Complex conj(const Complex& x) { return std::conj(x); }
  static Complex re(const Complex& x) { return {x.real(), 0.0}; }
  static Complex im(const Complex& x) { return {x.imag(), 0.0}; }
  static double magnitude(const Complex& x) { return std::abs(x); }
  static bool is_zero(const Complex& x, double scale = 1.0) { return std::abs(x) <= epsilon() * scale; }
  static int real_sign(const Complex& x, double scale = 1.0) {
    if (std::abs(x.real()) <= epsilon() * scale) return 0;
    return x.real() > 0 ? 1 : -1;
  }
  static Complex to_complex(const Complex& x) { return x; }
};

/// i^k for any integer k.
template <class S>
S ipow(int k) {
  using F = Field<S>;
  switch (((k % 4) + 4) % 4) {
    case 0: return F::one();
    case 1: return F::imag_unit();
    case 2: return -F::one();
    default: return -F::imag_unit();
  }
}

/// Approximate equality: exact for Gaussian, |a-b| <= eps*scale for Complex.
template <class S>
bool approx_equal(const S& a, const S& b, double scale = 1.0) {
  return Field<S>::is_zero(a - b, scale);
}

}  // namespace hbd
