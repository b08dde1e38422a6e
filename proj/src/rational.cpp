#include "coarsekit/rational.hpp"

#include <cctype>

#include "coarsekit/error.hpp"

namespace coarsekit {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ValidationError("empty rational literal");
  const auto dot = s.find('.');
  if (dot != std::string::npos) {
    if (s.find('/') != std::string::npos)
      throw ValidationError("rational literal mixes '.' and '/': " + s);
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const std::size_t frac = s.size() - dot - 1;
    std::size_t start = (digits[0] == '-' || digits[0] == '+') ? 1 : 0;
    if (start == digits.size()) throw ValidationError("bad decimal: " + s);
    for (std::size_t i = start; i < digits.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(digits[i])))
        throw ValidationError("bad decimal: " + s);
    if (digits[0] == '+') digits.erase(0, 1);
    Rational q(mpz_class(digits, 10), 1);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
    q /= Rational(den);
    q.canonicalize();
    return q;
  }
  Rational q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0)
    throw ValidationError("bad rational literal: " + s);
  q.canonicalize();
  return q;
}

}  // namespace coarsekit
