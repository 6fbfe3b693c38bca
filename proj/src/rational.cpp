#include "opengame/rational.hpp"

#include <stdexcept>

namespace opengame {

std::string to_fraction(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto valid = [](const std::string& part, bool allow_sign) {
    if (part.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') return false;
    }
    return true;
  };
  auto slash = s.find('/');
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid(num, true) || !valid(den, false)) {
    throw std::invalid_argument("malformed rational '" + s + "'");
  }
  if (num[0] == '+') num.erase(0, 1);
  mpz_class d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  Rational r(mpz_class(num), d);
  r.canonicalize();
  return r;
}

mpz_class integer_power(std::uint64_t base, std::uint64_t exponent) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exponent);
  return out;
}

Rational inverse_power(std::uint64_t base, std::uint64_t exponent) {
  Rational r(mpz_class(1), integer_power(base, exponent));
  r.canonicalize();
  return r;
}

int compare_to_one(const Rational& value) {
  int c = cmp(value, Rational(1));
  return (c > 0) - (c < 0);
}

}  // namespace opengame
