#include "hbd/scalar.hpp"

#include <atomic>
#include <ostream>
#include <stdexcept>

#include "hbd/errors.hpp"

namespace hbd {

namespace {
std::atomic<double> g_epsilon{1e-9};
}

double epsilon() { return g_epsilon.load(std::memory_order_relaxed); }

void set_epsilon(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("tolerance must be positive");
  g_epsilon.store(eps, std::memory_order_relaxed);
}

Gaussian& Gaussian::operator/=(const Gaussian& o) {
  Rational n = o.norm();
  if (sgn(n) == 0) throw Error(Errc::Singular, "division by zero in Q(i)");
  Rational r = (re * o.re + im * o.im) / n;
  im = (im * o.re - re * o.im) / n;
  re = std::move(r);
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Gaussian& g) {
  os << format_rational(g.re);
  if (sgn(g.im) >= 0) os << '+';
  return os << format_rational(g.im) << 'i';
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  auto dot = text.find('.');
  auto exp = text.find_first_of("eE");
  if (exp != std::string::npos) throw std::invalid_argument("exponent notation not accepted for exact rationals: " + text);
  Rational q;
  if (dot == std::string::npos) {
    if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad rational: " + text);
  } else {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::string den = "1" + std::string(text.size() - dot - 1, '0');
    if (digits == "-" || digits == "+" || digits.empty()) throw std::invalid_argument("bad decimal: " + text);
    if (digits[0] == '+') digits.erase(0, 1);
    if (q.set_str(digits + "/" + den, 10) != 0) throw std::invalid_argument("bad decimal: " + text);
  }
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) { return q.get_str(10); }

}  // namespace hbd
