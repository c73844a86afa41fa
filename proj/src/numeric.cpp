#include "rog/numeric.hpp"

#include <sstream>

namespace rog {

Int parse_int(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) throw std::invalid_argument("bad integer literal: " + text);
  for (; i < text.size(); ++i)
    if (text[i] < '0' || text[i] > '9')
      throw std::invalid_argument("bad integer literal: " + text);
  return Int(text, 10);
}

Rat parse_rat(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rat(parse_int(text));
  Int num = parse_int(text.substr(0, slash));
  Int den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: " + text);
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string show_int(const Int& v) { return v.get_str(); }

std::string show_rat(const Rat& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

std::optional<Rat> rat_pow(const Rat& q, const Int& e, long cap) {
  if (sgn(q) == 0 && e < 0) throw std::invalid_argument("0 to a negative power");
  if (!e.fits_slong_p()) return std::nullopt;
  long n = e.get_si();
  if (n > cap || n < -cap) return std::nullopt;
  bool invert = n < 0;
  unsigned long k = invert ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  Rat r;
  mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(q.get_mpq_t()), k);
  mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(q.get_mpq_t()), k);
  r.canonicalize();
  if (invert) r = 1 / r;
  return r;
}

Int int_pow(const Int& x, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), e);
  return r;
}

std::string show_vec(const std::vector<Int>& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i].get_str();
  }
  os << ")";
  return os.str();
}

}  // namespace rog
