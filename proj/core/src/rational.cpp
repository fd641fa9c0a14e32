#include "pmcp/rational.hpp"

#include <cctype>
#include <cmath>

#include "pmcp/errors.hpp"

namespace pmcp {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rat rat_from_string(std::string_view text) {
  std::string_view rest = text;
  bool negative = false;
  if (!rest.empty() && (rest.front() == '-' || rest.front() == '+')) {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }
  std::string_view num = rest;
  std::string_view den = "1";
  if (auto slash = rest.find('/'); slash != std::string_view::npos) {
    num = rest.substr(0, slash);
    den = rest.substr(slash + 1);
  }
  if (!all_digits(num) || !all_digits(den))
    throw ParseError("expected rational \"num/den\" or integer, got \"" +
                         std::string(text) + "\"",
                     0);
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw ParseError("zero denominator in \"" + std::string(text) + "\"", 0);
  Rat r(n, d);
  r.canonicalize();
  if (negative) r = -r;
  return r;
}

std::string rat_to_string(const Rat& value) { return value.get_str(); }

std::string rat_to_decimal(const Rat& value) {
  const bool negative = value < 0;
  mpz_class num = abs(value.get_num());
  const mpz_class& den = value.get_den();
  // round(|v| * 10^6) half away from zero
  mpz_class scaled = num * 1000000;
  mpz_class q = (2 * scaled + den) / (2 * den);
  mpz_class whole = q / 1000000;
  mpz_class frac = q % 1000000;
  std::string f = frac.get_str();
  f.insert(f.begin(), 6 - f.size(), '0');
  return (negative && q != 0 ? "-" : "") + whole.get_str() + "." + f;
}

Rat rat_from_double_exact(double value) {
  if (!std::isfinite(value)) throw Error("cannot convert non-finite double to rational");
  return Rat(value);
}

}  // namespace pmcp
