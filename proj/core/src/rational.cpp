#include "cu/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace cu {

namespace mp = boost::multiprecision;

double to_double(const Rational& r) { return r.convert_to<double>(); }

namespace {

mp::cpp_int parse_int(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty number");
  return mp::cpp_int(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    mp::cpp_int num = parse_int(text.substr(0, slash));
    mp::cpp_int den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  }
  auto dot = text.find('.');
  if (dot == std::string_view::npos) return Rational(parse_int(text));

  std::string_view whole = text.substr(0, dot);
  std::string_view frac = text.substr(dot + 1);
  if (frac.empty()) throw std::invalid_argument("trailing decimal point");
  for (char c : frac)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("bad decimal");
  bool negative = !whole.empty() && whole[0] == '-';
  mp::cpp_int ipart = 0;
  if (!whole.empty() && whole != "-" && whole != "+") ipart = parse_int(whole);
  mp::cpp_int scale = 1;
  for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
  mp::cpp_int fpart = frac.empty() ? mp::cpp_int(0) : parse_int(frac);
  Rational mag = Rational(mp::abs(ipart)) + Rational(fpart, scale);
  return negative ? -mag : mag;
}

std::string format_rational(const Rational& r) {
  mp::cpp_int num = mp::numerator(r);
  mp::cpp_int den = mp::denominator(r);
  if (den == 1) return num.str();
  // finite decimal iff den = 2^a * 5^b
  mp::cpp_int d = den;
  int twos = 0, fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d != 1) return num.str() + "/" + den.str();
  int digits = std::max(twos, fives);
  mp::cpp_int scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  mp::cpp_int scaled = num * scale / den;
  bool neg = scaled < 0;
  std::string s = mp::cpp_int(mp::abs(scaled)).str();
  if (static_cast<int>(s.size()) <= digits)
    s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  return (neg ? "-" : "") + s;
}

}  // namespace cu
