#include "gaugecount/cyclotomic.hpp"
#include "gaugecount/group.hpp"

#include <doctest.h>

#include <numeric>

using namespace gaugecount;

namespace {

// Cross-checks the table-derived class data against brute-force conjugation.
void check_classes(const FiniteGroup& g) {
  const auto t = conjugacy_classes(g);
  const std::size_t n = g.order();
  CHECK(std::accumulate(t.sizes.begin(), t.sizes.end(), std::size_t{0}) == n);
  CHECK(t.sizes[0] == 1);
  CHECK(t.reps[0] == g.identity());
  for (std::size_t c = 0; c < t.count(); ++c) {
    CHECK(t.sizes[c] * t.centralizer_sizes[c] == n);
    CHECK(t.inverse_class[t.inverse_class[c]] == c);
    std::size_t cent = 0;
    for (Element h = 0; h < n; ++h) cent += g.mul(h, t.reps[c]) == g.mul(t.reps[c], h);
    CHECK(cent == t.centralizer_sizes[c]);
  }
  for (Element x = 0; x < n; ++x) {
    for (Element h = 0; h < n; ++h) CHECK(t.class_of[g.conjugate(h, x)] == t.class_of[x]);
  }
}

}  // namespace

TEST_CASE("cyclotomic arithmetic is exact") {
  const CycloRat w = CycloRat::root_of_unity(3, 1);
  CHECK((CycloRat(1) + w + w * w).is_zero());
  CHECK(w.pow(3) == CycloRat(1));
  const CycloRat i = CycloRat::root_of_unity(4, 1);
  CHECK(i * i == CycloRat(-1));
  // Mixed orders meet in the lcm field: zeta_12^4 = omega.
  CHECK(CycloRat::root_of_unity(12, 4) == w);
  CHECK((w * i).order() == 12);
  const CycloRat z8 = CycloRat::root_of_unity(8, 1);
  const CycloRat sqrt2 = z8 + z8.conj();
  CHECK(sqrt2 * sqrt2 == CycloRat(2));
  CHECK(std::abs(sqrt2.to_complex().real() - std::sqrt(2.0)) < 1e-12);
  CHECK(cyclotomic_polynomial(105).size() == 49);
  CHECK(euler_phi(105) == 48);
}

TEST_CASE("builtin group orders") {
  CHECK(builtin_group(GroupFamily::cyclic, {6})->order() == 6);
  CHECK(builtin_group(GroupFamily::cyclic, {6})->is_abelian());
  CHECK(builtin_group(GroupFamily::dihedral, {4})->order() == 8);
  CHECK(builtin_group(GroupFamily::quaternion)->order() == 8);
  CHECK(builtin_group(GroupFamily::symmetric, {3})->order() == 6);
  CHECK(builtin_group(GroupFamily::symmetric, {4})->order() == 24);
  CHECK(builtin_group(GroupFamily::binary_tetrahedral)->order() == 24);
  CHECK(builtin_group(GroupFamily::binary_octahedral)->order() == 48);
  CHECK(builtin_group(GroupFamily::binary_icosahedral)->order() == 120);
  CHECK_THROWS_AS(builtin_group(GroupFamily::cyclic, {0}), Error);
  CHECK_THROWS_AS(builtin_group(GroupFamily::quaternion, {2}), Error);
  CHECK_THROWS_AS(parse_group_family("monster"), Error);
}

TEST_CASE("closure from abstract generators") {
  SUBCASE("one generator of order 4") {
    const std::vector<int> gens{1};
    auto g = build_from_generators<int>(std::span<const int>(gens), [](int a, int b) { return (a + b) % 4; },
                                        [](int a, int b) { return a == b; }, 100);
    CHECK(g->order() == 4);
    CHECK(g->identity() == 0);
    CHECK(g->is_abelian());
  }
  SUBCASE("D4 from r and s as permutations of the square") {
    using Perm = std::array<int, 4>;
    const std::vector<Perm> gens{Perm{1, 2, 3, 0}, Perm{0, 3, 2, 1}};
    auto compose = [](const Perm& p, const Perm& q) {
      Perm r{};
      for (int i = 0; i < 4; ++i) r[i] = p[q[i]];
      return r;
    };
    auto g = build_from_generators<Perm>(std::span<const Perm>(gens), compose, std::equal_to<Perm>(), 100);
    CHECK(g->order() == 8);
    CHECK(g->identity() == 0);
    const auto t = conjugacy_classes(*g);
    std::vector<std::size_t> sizes = t.sizes;
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<std::size_t>{1, 1, 2, 2, 2});
  }
  SUBCASE("empty generator list gives the trivial group") {
    const std::vector<int> gens;
    auto g = build_from_generators<int>(std::span<const int>(gens), [](int a, int b) { return a + b; },
                                        [](int a, int b) { return a == b; }, 10);
    CHECK(g->order() == 1);
  }
  SUBCASE("overflow") {
    const std::vector<long> gens{1};
    CHECK_THROWS_AS(build_from_generators<long>(std::span<const long>(gens), [](long a, long b) { return (a + b) % 50; },
                                                [](long a, long b) { return a == b; }, 10),
                    Error);
  }
}

TEST_CASE("conjugacy classes") {
  const auto z4 = builtin_group(GroupFamily::cyclic, {4});
  CHECK(conjugacy_classes(*z4).count() == 4);
  const auto d4 = builtin_group(GroupFamily::dihedral, {4});
  auto sizes = conjugacy_classes(*d4).sizes;
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{1, 1, 2, 2, 2});
  CHECK(conjugacy_classes(*builtin_group(GroupFamily::cyclic, {1})).count() == 1);
  CHECK(conjugacy_classes(*builtin_group(GroupFamily::binary_tetrahedral)).count() == 7);
  CHECK(conjugacy_classes(*builtin_group(GroupFamily::binary_octahedral)).count() == 8);
  CHECK(conjugacy_classes(*builtin_group(GroupFamily::binary_icosahedral)).count() == 9);
  for (const auto& g : {z4, d4, builtin_group(GroupFamily::symmetric, {4}), builtin_group(GroupFamily::quaternion),
                        builtin_group(GroupFamily::binary_tetrahedral)}) {
    check_classes(*g);
  }
  const auto prod = direct_product(builtin_group(GroupFamily::symmetric, {3}), d4);
  CHECK(conjugacy_classes(*prod).count() == 3 * 5);
}

TEST_CASE("centers, normalizers, cosets") {
  CHECK(center(builtin_group(GroupFamily::binary_tetrahedral)).order() == 2);
  CHECK(center(builtin_group(GroupFamily::binary_octahedral)).order() == 2);
  CHECK(center(builtin_group(GroupFamily::binary_icosahedral)).order() == 2);
  CHECK(center(builtin_group(GroupFamily::cyclic, {5})).order() == 5);
  const auto s3 = builtin_group(GroupFamily::symmetric, {3});
  CHECK(center(s3).order() == 1);

  // <(0 1)> in S3 is self-normalizing.
  const Element t = s3->generators()[0];
  const auto h = generated_subgroup(s3, std::vector<Element>{t});
  CHECK(h.order() == 2);
  CHECK(normalizer(s3, h).order() == 2);
  CHECK(normalizer(s3, whole_group(s3)).order() == 6);

  const auto d4 = builtin_group(GroupFamily::dihedral, {4});
  const auto rot = generated_subgroup(d4, std::vector<Element>{1});
  CHECK(rot.order() == 4);
  CHECK(normalizer(d4, rot).order() == 8);

  const auto z4 = builtin_group(GroupFamily::cyclic, {4});
  const auto sub = make_subgroup(z4, {true, false, true, false});
  const auto cosets = coset_space(z4, sub);
  REQUIRE(cosets.size() == 2);
  CHECK(cosets[0].members == std::vector<Element>{0, 2});
  CHECK(cosets[1].members == std::vector<Element>{1, 3});
  CHECK(coset_space(z4, trivial_subgroup(z4)).size() == 4);
  CHECK(coset_space(z4, whole_group(z4)).size() == 1);
  CHECK_THROWS_AS(make_subgroup(z4, {true, true, false, false}), Error);

  const auto as_group = subgroup_as_group(rot);
  CHECK(as_group.group->order() == 4);
  CHECK(as_group.group->is_abelian());
}

TEST_CASE("group axioms are enforced") {
  // Latin square but no identity.
  CHECK_THROWS_AS(FiniteGroup(3, {0, 2, 1, 2, 1, 0, 1, 0, 2}), Error);
  // Repeated row entry.
  CHECK_THROWS_AS(FiniteGroup(2, {0, 0, 1, 0}), Error);
  // A quasigroup with identity that is not associative (order 5 loop).
  const std::vector<Element> loop{0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0};
  CHECK_THROWS_AS(FiniteGroup(5, loop), Error);
  const auto d5 = builtin_group(GroupFamily::dihedral, {5});
  for (Element a = 0; a < d5->order(); ++a) {
    for (Element b = 0; b < d5->order(); ++b) CHECK(d5->inv(d5->mul(a, b)) == d5->mul(d5->inv(b), d5->inv(a)));
  }
}

TEST_CASE("Cayley table round trip") {
  const auto g = builtin_group(GroupFamily::binary_tetrahedral);
  const std::string text = emit_cayley_table(*g);
  const auto back = parse_cayley_table(text);
  CHECK(*back == *g);
  CHECK(emit_cayley_table(*back) == text);
  CHECK_THROWS_AS(parse_cayley_table("order 2\n0 1\n1\n"), Error);
  try {
    parse_cayley_table("order 2\n0 1\n1 7\n");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}
