#ifndef ROG_NUMERIC_HPP
#define ROG_NUMERIC_HPP

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rog {

// Exact integer and rational scalars. All arithmetic in the engine is exact;
// there is no floating point anywhere in the library.
using Int = mpz_class;
using Rat = mpq_class;

inline Int int_of(long v) { return Int(v); }

// Parses a decimal integer (optional leading '-'). Throws std::invalid_argument.
Int parse_int(const std::string& text);

// Parses "p" or "p/q" with q != 0; result canonical (lowest terms, q > 0).
Rat parse_rat(const std::string& text);

std::string show_int(const Int& v);
std::string show_rat(const Rat& v);  // "p" when q == 1, else "p/q"

inline int sign_of(const Int& v) { return sgn(v); }
inline int sign_of(const Rat& v) { return sgn(v); }

// q^e for integer e (negative allowed since q != 0). Returns nullopt when
// |e| exceeds the cap; exact rational powers blow up representation size.
std::optional<Rat> rat_pow(const Rat& q, const Int& e, long cap = 64);

// x^e for e >= 0.
Int int_pow(const Int& x, unsigned long e);

std::string show_vec(const std::vector<Int>& v);

}  // namespace rog

#endif
