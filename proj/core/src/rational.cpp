#include "carnot/rational.hpp"

#include <cctype>

namespace carnot {

Rational rat_parse(const std::string& text) {
  if (text.empty()) throw Error("empty rational literal");
  std::string s = text;
  // strip whitespace
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw Error("empty rational literal");

  auto dot = t.find('.');
  if (dot != std::string::npos) {
    if (t.find('/') != std::string::npos)
      throw Error("rational literal mixes '.' and '/': " + text);
    bool neg = false;
    std::string digits = t;
    if (digits[0] == '+' || digits[0] == '-') {
      neg = digits[0] == '-';
      digits = digits.substr(1);
    }
    dot = digits.find('.');
    std::string ip = digits.substr(0, dot);
    std::string fp = digits.substr(dot + 1);
    if (ip.empty() && fp.empty()) throw Error("bad decimal literal: " + text);
    for (char c : ip + fp)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw Error("bad decimal literal: " + text);
    mpz_class num(ip.empty() ? std::string("0") : ip);
    mpz_class den(1);
    for (char c : fp) {
      num = num * 10 + (c - '0');
      den *= 10;
    }
    Rational q(num, den);
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }

  try {
    Rational q(t);
    q.canonicalize();
    if (q.get_den() <= 0) throw Error("nonpositive denominator: " + text);
    return q;
  } catch (const std::invalid_argument&) {
    throw Error("bad rational literal: " + text);
  }
}

std::string rat_str(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rat_pow(const Rational& q, long e) {
  if (e < 0) {
    if (q == 0) throw Error("inverse power of zero");
    return 1 / rat_pow(q, -e);
  }
  Rational r(1), base = q;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

}  // namespace carnot
