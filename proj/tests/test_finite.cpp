#include <set>

#include "doctest.h"
#include "rog/finite.hpp"

using namespace rog;

namespace {

int order_of(const FiniteGroupTable& t, int x) {
  int o = 1, c = x;
  while (c != 0) {
    c = t.op(c, x);
    ++o;
  }
  return o;
}

}  // namespace

TEST_CASE("table builders produce valid groups") {
  for (const auto& t : {trivial_table(), cyclic_table(6), dihedral_table(4), dicyclic_table(2),
                        symmetric_table(4), alternating4_table(),
                        product_table(cyclic_table(2), cyclic_table(4))}) {
    std::vector<std::vector<long>> rows(t.n, std::vector<long>(t.n));
    for (unsigned i = 0; i < t.n; ++i)
      for (unsigned j = 0; j < t.n; ++j) rows[i][j] = t.op(i, j);
    FiniteGroupTable v = FiniteGroupTable::from_table(rows);  // revalidates everything
    CHECK(v.n == t.n);
  }
  CHECK(symmetric_table(4).n == 24);
  CHECK(alternating4_table().n == 12);
  CHECK(dicyclic_table(2).n == 8);  // Q8
}

TEST_CASE("from_table relabels a displaced identity to index 0") {
  // Z/2 written with identity at index 1
  std::vector<std::vector<long>> rows{{1, 0}, {0, 1}};
  std::vector<int> relabel;
  FiniteGroupTable t = FiniteGroupTable::from_table(rows, &relabel);
  CHECK(t.op(0, 0) == 0);
  CHECK(t.op(1, 1) == 0);
  CHECK(relabel == std::vector<int>{1, 0});
}

TEST_CASE("from_table rejects non-groups with a named axiom") {
  CHECK_THROWS_WITH_AS(FiniteGroupTable::from_table({{0, 0}, {1, 1}}),
                       doctest::Contains("repeats"), ValidationError);
  // an order-5 loop: Latin with identity, but not associative (the only group
  // of order 5 is cyclic, and this table has an element of order 2)
  CHECK_THROWS_WITH_AS(
      FiniteGroupTable::from_table(
          {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 3, 4, 0, 1}, {3, 4, 1, 2, 0}, {4, 2, 0, 1, 3}}),
      doctest::Contains("associativity"), ValidationError);
}

TEST_CASE("submonoid_closure on S3, empty seed, Z/6") {
  FiniteGroupTable s3 = symmetric_table(3);
  int t = -1;
  for (unsigned i = 1; i < s3.n; ++i)
    if (s3.op(i, i) == 0) {
      t = static_cast<int>(i);
      break;
    }
  CHECK(submonoid_closure(s3, {t}) == std::vector<int>{0, t});
  CHECK(submonoid_closure(s3, {}) == std::vector<int>{0});
  CHECK(submonoid_closure(cyclic_table(6), {2}) == std::vector<int>{0, 2, 4});
}

TEST_CASE("conjugation_closure: S3 transposition cone blows up to S3") {
  FiniteGroupTable s3 = symmetric_table(3);
  int t = -1;
  for (unsigned i = 1; i < s3.n; ++i)
    if (s3.op(i, i) == 0) {
      t = static_cast<int>(i);
      break;
    }
  std::vector<int> all(s3.n);
  for (unsigned i = 0; i < s3.n; ++i) all[i] = static_cast<int>(i);
  CHECK(conjugation_closure(s3, {0, t}) == all);
  CHECK(conjugation_closure(cyclic_table(6), {0, 2, 4}) == std::vector<int>{0, 2, 4});
  CHECK(conjugation_closure(s3, all) == all);
}

TEST_CASE("conjugation_closure is a closure operator (order <= 12, exhaustive-ish)") {
  for (const auto& t : {symmetric_table(3), dihedral_table(4), alternating4_table()}) {
    auto subs = enumerate_subgroups(t);
    for (const auto& m : subs) {
      auto c1 = conjugation_closure(t, m);
      // extensive
      for (int e : m) CHECK(std::binary_search(c1.begin(), c1.end(), e));
      // idempotent
      CHECK(conjugation_closure(t, c1) == c1);
      // monotone against every superset cone in the lattice
      for (const auto& m2 : subs) {
        if (!std::includes(m2.begin(), m2.end(), m.begin(), m.end())) continue;
        auto c2 = conjugation_closure(t, m2);
        CHECK(std::includes(c2.begin(), c2.end(), c1.begin(), c1.end()));
      }
    }
  }
}

TEST_CASE("quotient: Z/6 by {0,3} is Z/3; degenerate quotients") {
  FiniteGroupTable z6 = cyclic_table(6);
  FiniteQuotient q = quotient(z6, {0, 3});
  CHECK(q.table.n == 3);
  // projection is a surjective homomorphism with kernel exactly {0,3}
  std::set<int> image;
  for (unsigned x = 0; x < z6.n; ++x) {
    image.insert(q.projection[x]);
    for (unsigned y = 0; y < z6.n; ++y)
      CHECK(q.projection[z6.op(x, y)] == q.table.op(q.projection[x], q.projection[y]));
  }
  CHECK(image.size() == 3);
  for (unsigned x = 0; x < z6.n; ++x)
    CHECK((q.projection[x] == 0) == (x == 0 || x == 3));

  CHECK(quotient(z6, {0}).table.n == 6);
  CHECK(quotient(z6, {0, 1, 2, 3, 4, 5}).table.n == 1);
}

TEST_CASE("quotient rejects non-normal subgroups with a conjugation witness") {
  FiniteGroupTable s3 = symmetric_table(3);
  int t = -1;
  for (unsigned i = 1; i < s3.n; ++i)
    if (s3.op(i, i) == 0) {
      t = static_cast<int>(i);
      break;
    }
  CHECK_THROWS_WITH_AS(quotient(s3, {0, t}), doctest::Contains("not normal"), ValidationError);
}

TEST_CASE("enumerate_subgroups: S3 has 6, Z/4 has 3, trivial has 1") {
  CHECK(enumerate_subgroups(symmetric_table(3)).size() == 6);
  CHECK(enumerate_subgroups(cyclic_table(4)).size() == 3);
  CHECK(enumerate_subgroups(trivial_table()).size() == 1);
  // deterministic order: by size then lexicographic
  auto subs = enumerate_subgroups(symmetric_table(3));
  for (size_t i = 1; i < subs.size(); ++i) {
    CHECK((subs[i - 1].size() < subs[i].size() ||
           (subs[i - 1].size() == subs[i].size() && subs[i - 1] < subs[i])));
  }
  // every output is a subgroup
  FiniteGroupTable s3 = symmetric_table(3);
  for (const auto& h : subs) CHECK(is_subgroup(s3, h));
}

TEST_CASE("enumerate_subgroups respects the cap") {
  CHECK_THROWS_AS(enumerate_subgroups(symmetric_table(4), 12), ResourceError);
  CHECK(enumerate_subgroups(symmetric_table(4), 24).size() == 30);  // S4 has 30 subgroups
}

TEST_CASE("automorphisms: known counts") {
  CHECK(automorphisms(cyclic_table(6)).size() == 2);
  CHECK(automorphisms(product_table(cyclic_table(2), cyclic_table(2))).size() == 6);  // GL(2,2)
  CHECK(automorphisms(symmetric_table(3)).size() == 6);
  CHECK(automorphisms(dicyclic_table(2)).size() == 24);  // Aut(Q8) = S4
  // every automorphism preserves element orders
  FiniteGroupTable q8 = dicyclic_table(2);
  for (const auto& a : automorphisms(q8))
    for (unsigned x = 0; x < q8.n; ++x) CHECK(order_of(q8, a[x]) == order_of(q8, x));
}

TEST_CASE("homomorphisms enumerate exactly the maps Z/4 -> Z/2") {
  auto h = homomorphisms(cyclic_table(4), cyclic_table(2), 100);
  CHECK(h.size() == 2);  // trivial and mod-2
}

TEST_CASE("closures return subgroups (finite cancellative submonoids)") {
  FiniteGroupTable d4 = dihedral_table(4);
  for (int seed : {1, 2, 3, 5, 6}) {
    auto cl = submonoid_closure(d4, {seed});
    CHECK(is_subgroup(d4, cl));
    auto cj = conjugation_closure(d4, cl);
    CHECK(is_subgroup(d4, cj));
  }
}
