#ifndef ROG_TRI_HPP
#define ROG_TRI_HPP

#include <algorithm>
#include <string>

namespace rog {

// Three-valued verdict for semidecidable cone queries. Unknown carries the
// search bound that produced it; Yes/No answers are exact and never revised.
struct Tri {
  enum class V { No = -1, Unknown = 0, Yes = 1 };
  V v = V::Unknown;
  long bound = -1;  // budget behind an Unknown; -1 when not applicable

  static Tri yes() { return {V::Yes, -1}; }
  static Tri no() { return {V::No, -1}; }
  static Tri unknown(long bound) { return {V::Unknown, bound}; }
  static Tri of(bool b) { return b ? yes() : no(); }

  bool is_yes() const { return v == V::Yes; }
  bool is_no() const { return v == V::No; }
  bool is_unknown() const { return v == V::Unknown; }
  bool decided() const { return v != V::Unknown; }

  const char* str() const {
    switch (v) {
      case V::Yes: return "yes";
      case V::No: return "no";
      default: return "unknown";
    }
  }
};

inline long merge_bound(const Tri& a, const Tri& b) { return std::max(a.bound, b.bound); }

// Strong Kleene connectives. Kleene order: No < Unknown < Yes.
inline Tri tri_and(const Tri& a, const Tri& b) {
  if (a.is_no()) return a;
  if (b.is_no()) return b;
  if (a.is_yes() && b.is_yes()) return Tri::yes();
  return Tri::unknown(merge_bound(a, b));
}

inline Tri tri_or(const Tri& a, const Tri& b) {
  if (a.is_yes()) return a;
  if (b.is_yes()) return b;
  if (a.is_no() && b.is_no()) return Tri::no();
  return Tri::unknown(merge_bound(a, b));
}

inline Tri tri_not(const Tri& a) {
  if (a.is_yes()) return Tri::no();
  if (a.is_no()) return Tri::yes();
  return a;
}

inline Tri tri_min(const Tri& a, const Tri& b) {
  if (static_cast<int>(a.v) <= static_cast<int>(b.v)) return a;
  return b;
}

inline bool tri_same(const Tri& a, const Tri& b) { return a.v == b.v; }

// Kleene order comparison: No < Unknown < Yes.
inline bool tri_leq(const Tri& a, const Tri& b) {
  return static_cast<int>(a.v) <= static_cast<int>(b.v);
}

}  // namespace rog

#endif
