#include "rootproj/rational.hpp"

#include <string>

namespace rootproj {

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw std::invalid_argument("Rational: zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  auto parse_int = [&](std::string_view part) {
    std::string s(part);
    if (!s.empty() && s.front() == '+') s.erase(0, 1);
    const bool digits_ok = !s.empty() && s.find_first_not_of("-0123456789") == std::string::npos &&
                           s.find('-', 1) == std::string::npos && s != "-";
    if (!digits_ok) throw std::invalid_argument("Rational: cannot parse '" + std::string(text) + "'");
    return mpz_class(s, 10);
  };
  const auto slash = text.find('/');
  mpz_class num = parse_int(text.substr(0, slash));
  mpz_class den = 1;
  if (slash != std::string_view::npos) {
    den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("Rational: zero denominator in '" + std::string(text) + "'");
  }
  mpq_class q(num, den);
  q.canonicalize();
  return Rational(std::move(q));
}

long Rational::to_long() const {
  if (!is_integer()) throw std::domain_error("Rational::to_long: " + str() + " is not an integer");
  if (!value_.get_num().fits_slong_p()) throw std::overflow_error("Rational::to_long: out of range");
  return value_.get_num().get_si();
}

std::string Rational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("Rational: division by zero");
  value_ /= rhs.value_;
  return *this;
}

std::size_t Rational::hash() const {
  // Low limbs are enough to spread the small values this library produces.
  const auto limb = [](const mpz_class& z) -> std::size_t {
    return static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), 0)) * (sgn(z) < 0 ? 31u : 1u);
  };
  std::size_t h = limb(value_.get_num());
  h ^= limb(value_.get_den()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace rootproj
