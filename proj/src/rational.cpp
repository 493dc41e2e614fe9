#include "rollmix/rational.hpp"

#include <cctype>

#include "rollmix/errors.hpp"

namespace rollmix {

namespace {

bool all_digits(const std::string& s, size_t from) {
  if (from >= s.size()) return false;
  for (size_t i = from; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

bool valid_integer(const std::string& s) {
  if (s.empty()) return false;
  size_t from = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  return all_digits(s, from);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto fail = [&] {
    throw Error(ErrorKind::ParseError, "not a rational: '" + text + "'");
  };

  std::string s = text;
  // Trim surrounding whitespace.
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.pop_back();
  if (s.empty()) fail();

  if (auto slash = s.find('/'); slash != std::string::npos) {
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    if (!valid_integer(num) || !all_digits(den, 0)) fail();
    mpz_class d(den);
    if (d == 0) throw Error(ErrorKind::ParseError, "zero denominator: '" + text + "'");
    Rational r(mpz_class(num), d);
    r.canonicalize();
    return r;
  }

  if (auto dot = s.find('.'); dot != std::string::npos) {
    // Finite decimal: sign, integer part, fractional part; exact as p/10^k.
    std::string head = s.substr(0, dot);
    const std::string frac = s.substr(dot + 1);
    bool negative = false;
    if (!head.empty() && (head[0] == '-' || head[0] == '+')) {
      negative = head[0] == '-';
      head.erase(head.begin());
    }
    if (head.empty() && frac.empty()) fail();
    if ((!head.empty() && !all_digits(head, 0)) ||
        (!frac.empty() && !all_digits(frac, 0)))
      fail();
    mpz_class scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    mpz_class value(head.empty() ? "0" : head);
    value *= scale;
    if (!frac.empty()) value += mpz_class(frac);
    if (negative) value = -value;
    Rational r(value, scale);
    r.canonicalize();
    return r;
  }

  if (!valid_integer(s)) fail();
  return Rational(mpz_class(s));
}

std::string rational_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double rational_double(const Rational& value) { return value.get_d(); }

}  // namespace rollmix
