#include "nsg/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace nsg {

std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::string s(text);

  auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) return std::nullopt;
    Rational r;
    if (r.set_str(s, 10) != 0) return std::nullopt;
    if (r.get_den() == 0) return std::nullopt;
    r.canonicalize();
    return r;
  }

  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string intpart = s.substr(0, dot);
    std::string fracpart = s.substr(dot + 1);
    bool neg = !intpart.empty() && intpart[0] == '-';
    if (neg || (!intpart.empty() && intpart[0] == '+'))
      intpart = intpart.substr(1);
    if (intpart.empty()) intpart = "0";
    if (fracpart.empty()) fracpart = "0";
    if (!is_int(intpart) || !is_int(fracpart)) return std::nullopt;
    mpz_class scale = 1;
    for (std::size_t i = 0; i < fracpart.size(); ++i) scale *= 10;
    mpz_class num = mpz_class(intpart) * scale + mpz_class(fracpart);
    Rational r(num, scale);
    r.canonicalize();
    return neg ? Rational(-r) : r;
  }

  if (!is_int(s)) return std::nullopt;
  return Rational(mpz_class(s));
}

std::string to_fraction_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace nsg
