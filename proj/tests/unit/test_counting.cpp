#include "gaugecount/counting.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace gaugecount;
using gaugecount::testing::thrown_kind;

namespace {

LatticeGraph periodic(std::vector<std::uint32_t> dims) {
  const bool flags[] = {true, true, true, true};
  return lattice_hypercubic(dims, std::span<const bool>(flags, dims.size()));
}

LatticeGraph open_chain(std::uint32_t n) {
  const std::uint32_t dims[] = {n};
  const bool flags[] = {false};
  return lattice_hypercubic(dims, flags);
}

GroupSpec spec_of(GroupFamily f, std::vector<std::int64_t> params = {}) { return {f, std::move(params), {}}; }

BigInt pure(const GroupRef& g, const LatticeGraph& l, const TwistSpec* t = nullptr) {
  return count_pure_gauge(g, conjugacy_classes(*g), l, t).total;
}

FermionMatter fermion(UnitaryRep rho, std::uint32_t ns = 1, VacuumKind vac = VacuumKind::trivial) {
  return FermionMatter{{std::move(rho)}, ns, vac, std::nullopt};
}

}  // namespace

TEST_CASE("pure gauge counts") {
  const auto z2 = builtin_group(GroupFamily::cyclic, {2});
  CHECK(pure(z2, periodic({1, 1})) == 4);

  const std::vector<GroupSpec> specs{spec_of(GroupFamily::cyclic, {5}), spec_of(GroupFamily::symmetric, {3}),
                                     spec_of(GroupFamily::dihedral, {4}), spec_of(GroupFamily::quaternion)};
  const auto tree = make_lattice(3, {{0, 1}, {0, 2}});
  for (const auto& s : specs) {
    const auto g = builtin_group(s);
    const auto classes = conjugacy_classes(*g);
    CHECK(pure(g, open_chain(2)) == 1);
    CHECK(pure(g, tree) == 1);
    CHECK(pure(g, periodic({2})) == classes.count());
    CHECK(pure(g, periodic({3})) == classes.count());
  }

  // Z_N on the 2x2 torus: every class contributes N^(E-V) = N^4.
  const auto z3 = builtin_group(GroupFamily::cyclic, {3});
  CHECK(pure(z3, periodic({2, 2})) == 243);
}

TEST_CASE("report structure") {
  const auto d4 = builtin_group(GroupFamily::dihedral, {4});
  const auto classes = conjugacy_classes(*d4);
  const auto r = count_pure_gauge(d4, classes, periodic({2, 2}));
  CHECK(r.formula == "pure_gauge");
  CHECK(r.per_class.size() == 5);
  CHECK(r.integrality_witness_holds());
  CycloRat sum;
  for (const auto& c : r.per_class) sum += c.value;
  CHECK(sum == CycloRat(BigRational(r.total)));
  CHECK(r.per_class[0].class_size == 1);
  CHECK(r.per_class[0].decimal == "4096");
  CHECK(r.total <= total_hilbert_dim(d4, periodic({2, 2}), NoMatter{}));
}

TEST_CASE("scalar counts") {
  const auto z2 = builtin_group(GroupFamily::cyclic, {2});
  const auto c2 = conjugacy_classes(*z2);
  CHECK(count_scalar(z2, c2, periodic({2}), action_left_mult(z2)).total == 4);

  const auto s3 = builtin_group(GroupFamily::symmetric, {3});
  const auto cs3 = conjugacy_classes(*s3);
  for (const auto& l : {periodic({2}), open_chain(3), periodic({2, 2})}) {
    CHECK(count_scalar(s3, cs3, l, action_trivial(s3, 1)).total == pure(s3, l));
    const auto r = count_scalar(s3, cs3, l, action_left_mult(s3));
    CHECK(r.total >= 1);
    CHECK(r.total <= total_hilbert_dim(s3, l, ScalarMatter{action_left_mult(s3)}));
  }

  const auto z4 = builtin_group(GroupFamily::cyclic, {4});
  const auto c4 = conjugacy_classes(*z4);
  const auto h = make_subgroup(z4, {true, false, true, false});
  const auto loop = make_lattice(1, {{0, 0}});
  CHECK(count_scalar(z4, c4, loop, action_coset(z4, h)).total == 4);

  CHECK(thrown_kind([&] {
          count_scalar_per_site(z2, c2, periodic({2}), {action_left_mult(z2)});
        }) == ErrorKind::InvalidConfig);
  CHECK(thrown_kind([&] { count_scalar(z2, c2, periodic({2}), action_left_mult(z4)); }) == ErrorKind::GroupMismatch);
}

TEST_CASE("fermion counts") {
  const auto d4spec = spec_of(GroupFamily::dihedral, {4});
  const auto d4 = builtin_group(d4spec);
  const auto classes = conjugacy_classes(*d4);
  const auto rho = builtin_rep(d4, d4spec, "fundamental");

  // det(1 + rho) is 4, 0, 2, 0, 0 on the five classes, so V = E = 2 gives 16 + 4.
  CHECK(count_fermion(d4, classes, periodic({2}), fermion(rho)).total == 20);
  CHECK(count_fermion(d4, classes, periodic({2}), fermion(rho)).total <=
        total_hilbert_dim(d4, periodic({2}), fermion(rho)));
  CHECK(total_hilbert_dim(d4, periodic({2}), fermion(rho)) == 1024);

  // Trivial rep: a free mode per site.
  const auto s3 = builtin_group(GroupFamily::symmetric, {3});
  const auto cs3 = conjugacy_classes(*s3);
  for (const auto& l : {periodic({2}), open_chain(3), periodic({1, 1})}) {
    const BigInt scale = ipow(BigInt(2), l.V());
    CHECK(count_fermion(s3, cs3, l, fermion(rep_trivial(s3))).total == scale * pure(s3, l));
  }

  // Z_3 charge-one fermion with the staggered vacuum: 2*2 + (1+w)^2 w^2 + conj = 4 + 1 + 1.
  const auto z3spec = spec_of(GroupFamily::cyclic, {3});
  const auto z3 = builtin_group(z3spec);
  const auto c3 = conjugacy_classes(*z3);
  const auto stag = fermion(builtin_rep(z3, z3spec, "charge", 1), 1, VacuumKind::staggered);
  const auto r = count_fermion(z3, c3, periodic({2}), stag);
  CHECK(r.total == 6);
  CHECK(r.per_class[1].value == CycloRat(1));
  CHECK_FALSE(fermion_site_character(stag.flavours[0], 1, c3)[1].is_rational());
  CHECK(r.integrality_witness_holds());
  CHECK(thrown_kind([&] { count_fermion(z3, c3, open_chain(3), stag); }) == ErrorKind::OddSitesForStaggered);

  // Explicit vacuum equal to the trivial one-dim rep changes nothing.
  auto explicit_vac = fermion(builtin_rep(z3, z3spec, "charge", 1), 2, VacuumKind::explicit_rep);
  explicit_vac.vacuum_rep = OneDimRep(z3, 1, {0});
  CHECK(count_fermion(z3, c3, periodic({2}), explicit_vac).total ==
        count_fermion(z3, c3, periodic({2}), fermion(builtin_rep(z3, z3spec, "charge", 1), 2)).total);
}

TEST_CASE("fermion parity split") {
  const auto trivial = builtin_group(GroupFamily::cyclic, {1});
  const auto ct = conjugacy_classes(*trivial);
  const auto split = count_fermion_parity_split(trivial, ct, make_lattice(1, {}), fermion(rep_trivial(trivial)));
  CHECK(split.even == 1);
  CHECK(split.odd == 1);

  // Z_2 sign rep on a self-loop: only the empty mode is invariant.
  const auto z2spec = spec_of(GroupFamily::cyclic, {2});
  const auto z2 = builtin_group(z2spec);
  const auto c2 = conjugacy_classes(*z2);
  const auto s = count_fermion_parity_split(z2, c2, make_lattice(1, {{0, 0}}), fermion(builtin_rep(z2, z2spec, "charge", 1)));
  CHECK(s.plus.total == 2);
  CHECK(s.minus.total == 2);
  CHECK(s.even == 2);
  CHECK(s.odd == 0);

  const auto q8 = builtin_group(GroupFamily::quaternion);
  const auto cq = conjugacy_classes(*q8);
  const auto rho = builtin_rep(q8, spec_of(GroupFamily::quaternion), "fundamental");
  for (std::uint32_t ns : {1u, 2u}) {
    const auto p = count_fermion_parity_split(q8, cq, periodic({2}), fermion(rho, ns));
    CHECK(p.even + p.odd == p.plus.total);
    CHECK(p.plus.total == count_fermion(q8, cq, periodic({2}), fermion(rho, ns)).total);
  }
}

TEST_CASE("twists") {
  const auto d4 = builtin_group(GroupFamily::dihedral, {4});
  const auto classes = conjugacy_classes(*d4);
  const auto torus = periodic({2, 2});
  const auto id = make_twist(torus, identity_endomorphism(d4), WrapDirection{1});
  CHECK(pure(d4, torus, &id) == pure(d4, torus));
  const auto r = count_pure_gauge(d4, classes, torus, &id);
  CHECK(r.formula == "pure_gauge/twisted-automorphism");

  // Constant map on the last link of an open chain drops the end site's Gauss law;
  // left translation at site 0 alone still fixes the link, |G|^(E - V_bulk) = 1.
  const auto chain = open_chain(2);
  const auto dangling = make_twist(chain, trivial_endomorphism(d4), std::vector<std::size_t>{0});
  const auto rd = count_pure_gauge(d4, classes, chain, &dangling);
  CHECK(rd.total == 1);
  CHECK(rd.formula == "pure_gauge/twisted-homomorphism");

  // A twist whose only head is a boundary site contributes no alpha factor,
  // even on classes that phi moves.
  const auto z3 = builtin_group(GroupFamily::cyclic, {3});
  const auto leaf = make_twist(chain, inversion_endomorphism(z3), std::vector<std::size_t>{0});
  CHECK(count_pure_gauge(z3, conjugacy_classes(*z3), chain, &leaf).total == 1);

  // Interior twisted link disconnects the bulk.
  const auto chain3 = open_chain(3);
  const auto bad = make_twist(chain3, identity_endomorphism(d4), std::vector<std::size_t>{0});
  CHECK(thrown_kind([&] { pure(d4, chain3, &bad); }) == ErrorKind::BulkDisconnected);
  CHECK(thrown_kind([&] { pure(d4, make_lattice(2, {})); }) == ErrorKind::BulkDisconnected);
  CHECK(thrown_kind([&] { pure(d4, make_lattice(0, {})); }) == ErrorKind::BadParams);

  // Twisted self-loop is counted with the head convention and flagged.
  const auto loop = make_lattice(1, {{0, 0}});
  const auto tl = make_twist(loop, identity_endomorphism(d4), std::vector<std::size_t>{0});
  const auto rl = count_pure_gauge(d4, classes, loop, &tl);
  CHECK(rl.total == classes.count());
  CHECK_FALSE(rl.warnings.empty());
}

TEST_CASE("negative control: corrupted character") {
  const auto z2 = builtin_group(GroupFamily::cyclic, {2});
  const auto c2 = conjugacy_classes(*z2);
  ClassFunction broken{z2, {CycloRat(1), CycloRat(0)}};
  const std::vector<ClassFunction> chars(2, broken);
  CHECK(thrown_kind([&] { count_general(z2, c2, open_chain(2), chars, nullptr, nullptr); }) == ErrorKind::NonIntegralResult);
  ClassFunction negative{z2, {CycloRat(1), CycloRat(-3)}};
  CHECK(thrown_kind([&] {
          count_general(z2, c2, make_lattice(1, {{0, 0}}), {negative}, nullptr, nullptr);
        }) == ErrorKind::NonIntegralResult);
}

TEST_CASE("Z_N engine agrees with closed forms") {
  const std::vector<LatticeGraph> untwisted{periodic({2}), periodic({3}), periodic({2, 2}), open_chain(3)};
  for (std::int64_t n = 1; n <= 6; ++n) {
    const auto spec = spec_of(GroupFamily::cyclic, {n});
    const auto g = builtin_group(spec);
    const auto classes = conjugacy_classes(*g);
    std::vector<UnitaryRep> charge_reps;
    for (std::int64_t q = 0; q < n; ++q) charge_reps.push_back(builtin_rep(g, spec, "charge", q));

    auto for_each_charges = [&](std::size_t v, auto&& fn) {
      std::vector<std::int64_t> q(v, 0);
      while (true) {
        fn(q);
        std::size_t k = 0;
        while (k < v && ++q[k] == n) q[k++] = 0;
        if (k == v) break;
      }
    };
    auto engine = [&](const LatticeGraph& l, const std::vector<std::int64_t>& q, const TwistSpec* t) {
      std::vector<UnitaryRep> reps;
      for (auto x : q) reps.push_back(charge_reps[static_cast<std::size_t>(x)]);
      return count_static_charges(g, classes, l, reps, t).total;
    };

    for (const auto& l : untwisted) {
      for_each_charges(l.V(), [&](const std::vector<std::int64_t>& q) {
        CHECK(engine(l, q, nullptr) == count_zn_charged_closed_form(n, q, ZnBoundary::untwisted, l));
      });
    }

    // Dangling: a shared boundary site attached to selected sites.
    const std::vector<std::pair<LatticeGraph, std::vector<std::uint32_t>>> dangling{
        {open_chain(2), {1}}, {open_chain(3), {0, 2}}, {periodic({2}), {0, 1}}};
    for (const auto& [base, attach] : dangling) {
      const auto ext = dangling_boundary_extension(base, attach, g);
      for_each_charges(base.V(), [&](std::vector<std::int64_t> q) {
        q.push_back(0);
        CHECK(engine(ext.lattice, q, &ext.twist) ==
              count_zn_charged_closed_form(n, q, ZnBoundary::dangling, ext.lattice, &ext.twist));
      });
    }

    if (n >= 2) {
      const auto inv = inversion_endomorphism(g);
      for (const auto& l : {periodic({2}), periodic({3}), periodic({2, 2})}) {
        const auto t = make_twist(l, inv, WrapDirection{0});
        for_each_charges(l.V(), [&](const std::vector<std::int64_t>& q) {
          CHECK(engine(l, q, &t) == count_zn_charged_closed_form(n, q, ZnBoundary::c_periodic, l, &t));
        });
      }
    }
  }

  CHECK(count_zn_charged_closed_form(3, {1, 2, 0, 0}, ZnBoundary::untwisted, periodic({2, 2})) == 243);
  CHECK(count_zn_charged_closed_form(3, {1, 0, 0, 0}, ZnBoundary::untwisted, periodic({2, 2})) == 0);
  CHECK(count_zn_charged_closed_form(4, {1, 0, 0, 0}, ZnBoundary::c_periodic, periodic({2, 2})) == 0);
  CHECK(count_zn_charged_closed_form(4, {1, 1, 0, 0}, ZnBoundary::c_periodic, periodic({2, 2})) == 512);
  CHECK(thrown_kind([] { count_zn_charged_closed_form(3, {1}, ZnBoundary::untwisted, periodic({2})); }) ==
        ErrorKind::BadCharge);
  CHECK(parse_zn_boundary("c_periodic") == ZnBoundary::c_periodic);
  CHECK(thrown_kind([] { parse_zn_boundary("mirror"); }) == ErrorKind::InvalidConfig);
}

TEST_CASE("total Hilbert dimension") {
  const auto z2 = builtin_group(GroupFamily::cyclic, {2});
  CHECK(total_hilbert_dim(z2, periodic({1, 1}), NoMatter{}) == 4);
  CHECK(total_hilbert_dim(z2, periodic({2}), ScalarMatter{action_trivial(z2, 3)}) == 36);
}
