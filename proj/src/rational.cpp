#include "detksat/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace detksat {

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  const std::string s(text);
  const auto slash = s.find('/');
  Integer num, den = 1;
  auto parse_int = [](const std::string& part) {
    if (part.empty()) throw std::invalid_argument("empty rational component");
    Integer z;
    if (z.set_str(part, 10) != 0)
      throw std::invalid_argument("malformed rational '" + part + "'");
    return z;
  };
  if (slash == std::string::npos) {
    num = parse_int(s);
  } else {
    num = parse_int(s.substr(0, slash));
    den = parse_int(s.substr(slash + 1));
  }
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational pow(const Rational& base, unsigned long e) {
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

// log2 of a positive integer from its top 64 bits.
long double log2_int(const Integer& z) {
  const std::size_t bits = mpz_sizeinbase(z.get_mpz_t(), 2);
  if (bits <= 64) return std::log2(static_cast<long double>(z.get_ui()));
  const Integer top = z >> static_cast<mp_bitcnt_t>(bits - 64);
  return std::log2(static_cast<long double>(top.get_ui())) +
         static_cast<long double>(bits - 64);
}

}  // namespace

long double log2(const Rational& q) {
  if (sgn(q) <= 0) throw std::domain_error("log2 of a non-positive rational");
  return log2_int(q.get_num()) - log2_int(q.get_den());
}

long double to_long_double(const Rational& q) {
  if (sgn(q) == 0) return 0.0L;
  const long double mag = std::exp2(log2(abs(q)));
  return sgn(q) < 0 ? -mag : mag;
}

}  // namespace detksat
