#ifndef ROG_ELEMENT_HPP
#define ROG_ELEMENT_HPP

#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "rog/errors.hpp"
#include "rog/numeric.hpp"

namespace rog {

// A group element. The engaged alternative matches the carrier backend:
// finite tables use dense indices, f.g. abelian groups integer vectors,
// the rational line exact rationals, semidirect products pairs.
class Element {
 public:
  using Pair = std::pair<Element, Element>;

  Element() : v_(long{0}) {}
  static Element fin(long idx) { return Element(idx); }
  static Element vec(std::vector<Int> coords) { return Element(std::move(coords)); }
  static Element rat(Rat q) { return Element(std::move(q)); }
  static Element pair(Element first, Element second) {
    return Element(std::make_shared<const Pair>(std::move(first), std::move(second)));
  }

  bool is_fin() const { return std::holds_alternative<long>(v_); }
  bool is_vec() const { return std::holds_alternative<std::vector<Int>>(v_); }
  bool is_rat() const { return std::holds_alternative<Rat>(v_); }
  bool is_pair() const { return std::holds_alternative<std::shared_ptr<const Pair>>(v_); }

  long fin() const {
    if (!is_fin()) throw DomainError("element is not a finite-carrier index");
    return std::get<long>(v_);
  }
  const std::vector<Int>& vec() const {
    if (!is_vec()) throw DomainError("element is not an integer vector");
    return std::get<std::vector<Int>>(v_);
  }
  const Rat& rat() const {
    if (!is_rat()) throw DomainError("element is not a rational");
    return std::get<Rat>(v_);
  }
  const Pair& pr() const {
    if (!is_pair()) throw DomainError("element is not a pair");
    return *std::get<std::shared_ptr<const Pair>>(v_);
  }

  bool operator==(const Element& o) const { return cmp(o) == 0; }
  bool operator<(const Element& o) const { return cmp(o) < 0; }

  int cmp(const Element& o) const {
    if (v_.index() != o.v_.index())
      return v_.index() < o.v_.index() ? -1 : 1;
    if (is_fin()) return fin() < o.fin() ? -1 : (fin() == o.fin() ? 0 : 1);
    if (is_vec()) {
      const auto& a = vec();
      const auto& b = o.vec();
      if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
      for (size_t i = 0; i < a.size(); ++i) {
        int c = ::cmp(a[i], b[i]);
        if (c) return c < 0 ? -1 : 1;
      }
      return 0;
    }
    if (is_rat()) {
      int c = ::cmp(rat(), o.rat());
      return c < 0 ? -1 : (c == 0 ? 0 : 1);
    }
    int c = pr().first.cmp(o.pr().first);
    if (c) return c;
    return pr().second.cmp(o.pr().second);
  }

 private:
  explicit Element(long idx) : v_(idx) {}
  explicit Element(std::vector<Int> v) : v_(std::move(v)) {}
  explicit Element(Rat q) : v_(std::move(q)) {}
  explicit Element(std::shared_ptr<const Pair> p) : v_(std::move(p)) {}

  std::variant<long, std::vector<Int>, Rat, std::shared_ptr<const Pair>> v_;
};

}  // namespace rog

#endif
