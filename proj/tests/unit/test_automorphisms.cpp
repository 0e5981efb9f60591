#include "gaugecount/automorphisms.hpp"

#include <doctest.h>

#include <numeric>
#include <set>

using namespace gaugecount;

namespace {

std::size_t totient(std::size_t n) {
  std::size_t count = 0;
  for (std::size_t k = 1; k <= n; ++k) count += std::gcd(k, n) == 1;
  return count;
}

// All automorphisms of Z_n by brute force over images of the generator.
std::size_t brute_cyclic_auts(const GroupRef& g) {
  std::size_t count = 0;
  for (Element t = 0; t < g->order(); ++t) {
    std::vector<Element> img(g->order());
    for (Element k = 0; k < g->order(); ++k) img[k] = g->power(t, k);
    if (is_endomorphism(*g, img) && std::set<Element>(img.begin(), img.end()).size() == g->order()) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("endomorphism checks") {
  const auto z3 = builtin_group(GroupFamily::cyclic, {3});
  CHECK(is_endomorphism(*z3, identity_endomorphism(z3).image()));
  CHECK(is_endomorphism(*z3, trivial_endomorphism(z3).image()));
  CHECK(!is_endomorphism(*z3, std::vector<Element>{0, 2, 1, 0}));
  CHECK(!is_endomorphism(*z3, std::vector<Element>{1, 0, 2}));
  CHECK_THROWS_AS(GroupEndomorphism(z3, {1, 0, 2}), Error);
  CHECK_THROWS_AS(inversion_endomorphism(builtin_group(GroupFamily::symmetric, {3})), Error);
}

TEST_CASE("inner automorphisms") {
  const auto s3 = builtin_group(GroupFamily::symmetric, {3});
  CHECK(inner_automorphism(s3, s3->identity()) == identity_endomorphism(s3));
  const auto z5 = builtin_group(GroupFamily::cyclic, {5});
  CHECK(inner_automorphism(z5, 3) == identity_endomorphism(z5));
  // Conjugation by (0 1) swaps the other two transpositions.
  const Element t01 = s3->generators()[0];
  const auto tau = inner_automorphism(s3, t01);
  std::vector<Element> transpositions;
  for (Element x = 0; x < 6; ++x) {
    if (s3->element_order(x) == 2 && x != t01) transpositions.push_back(x);
  }
  REQUIRE(transpositions.size() == 2);
  CHECK(tau(transpositions[0]) == transpositions[1]);
  CHECK(tau(t01) == t01);
  CHECK(is_inner(tau));
  CHECK(is_involutory(tau));

  const auto inv5 = inversion_endomorphism(z5);
  CHECK(is_involutory(inv5));
  CHECK(!is_inner(inv5));
  CHECK_THROWS_AS(is_inner(trivial_endomorphism(z5)), Error);
}

TEST_CASE("automorphism enumeration") {
  for (std::int64_t n = 1; n <= 12; ++n) {
    const auto g = builtin_group(GroupFamily::cyclic, {n});
    const auto all = enumerate_automorphisms(g);
    CHECK(all.complete);
    CHECK(all.automorphisms.size() == totient(static_cast<std::size_t>(n)));
    CHECK(all.automorphisms.size() == brute_cyclic_auts(g));
  }
  CHECK(enumerate_automorphisms(builtin_group(GroupFamily::symmetric, {3})).automorphisms.size() == 6);
  CHECK(enumerate_automorphisms(builtin_group(GroupFamily::dihedral, {4})).automorphisms.size() == 8);
  CHECK(enumerate_automorphisms(builtin_group(GroupFamily::quaternion)).automorphisms.size() == 24);
  CHECK(enumerate_automorphisms(builtin_group(GroupFamily::binary_tetrahedral)).automorphisms.size() == 24);

  const auto truncated = enumerate_automorphisms(builtin_group(GroupFamily::binary_tetrahedral), 10);
  CHECK(!truncated.complete);
}

TEST_CASE("enumerated automorphisms form a group") {
  for (const auto& g : {builtin_group(GroupFamily::dihedral, {4}), builtin_group(GroupFamily::quaternion),
                        builtin_group(GroupFamily::symmetric, {4})}) {
    const auto all = enumerate_automorphisms(g);
    const std::set<GroupEndomorphism> set(all.automorphisms.begin(), all.automorphisms.end());
    const auto classes = conjugacy_classes(*g);
    for (const auto& a : all.automorphisms) {
      for (const auto& b : all.automorphisms) CHECK(set.count(compose(a, b)) == 1);
      for (Element x = 0; x < g->order(); ++x) {
        CHECK(g->element_order(a(x)) == g->element_order(x));
        CHECK(classes.sizes[classes.class_of[a(x)]] == classes.sizes[classes.class_of[x]]);
      }
    }
    // Inn(G) by brute force has order |G|/|Z(G)|.
    std::set<GroupEndomorphism> inner;
    for (Element h = 0; h < g->order(); ++h) inner.insert(inner_automorphism(g, h));
    CHECK(inner.size() == g->order() / center(g).order());
    for (const auto& tau : inner) CHECK(set.count(tau) == 1);
  }
}

TEST_CASE("class inversion and ambivalence") {
  const auto z3 = builtin_group(GroupFamily::cyclic, {3});
  const auto c3 = conjugacy_classes(*z3);
  CHECK(is_class_inverting(inversion_endomorphism(z3), c3));
  CHECK(!is_class_inverting(identity_endomorphism(z3), c3));
  CHECK(!is_ambivalent(c3));

  const auto d4 = builtin_group(GroupFamily::dihedral, {4});
  const auto cd4 = conjugacy_classes(*d4);
  CHECK(is_class_inverting(identity_endomorphism(d4), cd4));
  CHECK(is_ambivalent(cd4));
  CHECK(is_ambivalent(conjugacy_classes(*builtin_group(GroupFamily::quaternion))));

  for (const auto& g : {z3, d4, builtin_group(GroupFamily::binary_tetrahedral), builtin_group(GroupFamily::cyclic, {8})}) {
    const auto classes = conjugacy_classes(*g);
    CHECK(is_ambivalent(classes) == is_class_inverting(identity_endomorphism(g), classes));
  }
}

TEST_CASE("quasi-ambivalence") {
  const auto z4 = builtin_group(GroupFamily::cyclic, {4});
  const auto q4 = is_quasi_ambivalent(z4);
  CHECK(q4.verdict == Verdict::yes);
  REQUIRE(q4.witness);
  CHECK(*q4.witness == inversion_endomorphism(z4));

  const auto d4 = builtin_group(GroupFamily::dihedral, {4});
  const auto qd = is_quasi_ambivalent(d4);
  CHECK(qd.verdict == Verdict::yes);
  CHECK(*qd.witness == identity_endomorphism(d4));

  const auto bt = builtin_group(GroupFamily::binary_tetrahedral);
  const auto qb = is_quasi_ambivalent(bt);
  CHECK(qb.verdict == Verdict::yes);
  REQUIRE(qb.witness);
  CHECK(!is_inner(*qb.witness));
  CHECK(is_involutory(*qb.witness));
  CHECK(is_class_inverting(*qb.witness, conjugacy_classes(*bt)));

  CHECK(is_quasi_ambivalent(bt, 5).verdict == Verdict::unknown);
}

TEST_CASE("automorphism report") {
  const auto r = automorphism_report(builtin_group(GroupFamily::binary_tetrahedral));
  CHECK(r.group_order == 24);
  CHECK(r.center_order == 2);
  CHECK(r.inn_order == 12);
  REQUIRE(r.aut_order);
  CHECK(*r.aut_order == 24);
  CHECK(*r.out_order == 2);
  CHECK(!r.ambivalent);
  CHECK(r.quasi_ambivalent.verdict == Verdict::yes);
  CHECK(r.class_inverting_count == 12);
  CHECK(r.charge_conjugation_candidates.size() == 6);
}

TEST_CASE("Hamiltonian symmetry conditions") {
  const auto z3 = builtin_group(GroupFamily::cyclic, {3});
  const auto classes = conjugacy_classes(*z3);
  const std::vector<Element> gamma{1, 2};
  // h_B(x) != h_B(x^-1): inversion breaks condition 2.
  const ClassFunction hb{z3, {CycloRat(0), CycloRat(1), CycloRat(2)}};
  CHECK(hamiltonian_symmetry_check(identity_endomorphism(z3), gamma, hb, classes));
  CHECK(!hamiltonian_symmetry_check(inversion_endomorphism(z3), gamma, hb, classes));
  const ClassFunction real_hb{z3, {CycloRat(0), CycloRat(1), CycloRat(1)}};
  CHECK(hamiltonian_symmetry_check(inversion_endomorphism(z3), gamma, real_hb, classes));
  CHECK_THROWS_AS(hamiltonian_symmetry_check(identity_endomorphism(z3), std::vector<Element>{1}, hb, classes), Error);

  const auto s3 = builtin_group(GroupFamily::symmetric, {3});
  const auto cs3 = conjugacy_classes(*s3);
  const ClassFunction hs{s3, {CycloRat(3), CycloRat(-1), CycloRat(7)}};
  for (Element h = 0; h < 6; ++h) CHECK(hamiltonian_symmetry_check(inner_automorphism(s3, h), cs3.members[1], hs, cs3));
}

TEST_CASE("endomorphism file round trip") {
  const auto z6 = builtin_group(GroupFamily::cyclic, {6});
  const auto inv = inversion_endomorphism(z6);
  CHECK(parse_endomorphism(z6, emit_endomorphism(inv)) == inv);
  CHECK_THROWS_AS(parse_endomorphism(z6, "endo 6\n0 2 1 3 4 5\n"), Error);
  CHECK_THROWS_AS(parse_endomorphism(z6, "endo 5\n0 1 2 3 4\n"), Error);
}
