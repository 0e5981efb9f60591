#include "gaugecount/lattice.hpp"

#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace gaugecount;
using gaugecount::testing::thrown_kind;

namespace {

LatticeGraph hyper(std::vector<std::uint32_t> dims, bool periodic) {
  // std::vector<bool> has no contiguous storage.
  const std::unique_ptr<bool[]> flags(new bool[dims.size() + 1]);
  std::fill_n(flags.get(), dims.size(), periodic);
  return lattice_hypercubic(dims, std::span<const bool>(flags.get(), dims.size()));
}

}  // namespace

TEST_CASE("hypercubic sizes") {
  auto l = hyper({1, 1}, true);
  CHECK(l.V() == 1);
  CHECK(l.E() == 2);
  for (const auto& e : l.edges) CHECK(e.tail == e.head);

  CHECK(hyper({2}, true).E() == 2);
  CHECK(hyper({2}, false).E() == 1);
  CHECK(hyper({3, 3}, true).E() == 18);
  CHECK(hyper({3, 3}, true).V() == 9);

  // Periodic: E = d V. Open: E = sum_k (n_k - 1) prod_{j != k} n_j.
  const std::vector<std::vector<std::uint32_t>> shapes{{5}, {3, 4}, {3, 4, 2}, {1, 6}, {2, 2, 2, 2}};
  for (const auto& dims : shapes) {
    std::size_t v = 1;
    for (auto n : dims) v *= n;
    CHECK(hyper(dims, true).E() == dims.size() * v);
    std::size_t open = 0;
    for (auto n : dims) open += (n - 1) * (v / n);
    CHECK(hyper(dims, false).E() == open);
  }

  CHECK(thrown_kind([] { hyper({}, true); }) == ErrorKind::BadDims);
  CHECK(thrown_kind([] { hyper({3, 0}, true); }) == ErrorKind::BadDims);
  const std::uint32_t d[] = {2, 2};
  const bool p[] = {true};
  CHECK(thrown_kind([&] { lattice_hypercubic(d, p); }) == ErrorKind::BadDims);
}

TEST_CASE("wrap edges are tagged by direction") {
  auto l = hyper({3, 2}, true);
  std::size_t wraps0 = 0;
  std::size_t wraps1 = 0;
  for (const auto& e : l.edges) {
    wraps0 += e.wrap_direction == 0;
    wraps1 += e.wrap_direction == 1;
  }
  CHECK(wraps0 == 2);
  CHECK(wraps1 == 3);
}

TEST_CASE("edge list parse and emit") {
  auto f = lattice_from_edge_list("V 2\n0 1\n");
  CHECK(f.lattice.V() == 2);
  CHECK(f.lattice.E() == 1);
  CHECK(f.twisted_edges.empty());

  auto g = lattice_from_edge_list("# comment\nV 3\n0 1\n1 2 twisted # dangling\n\n2 2\n");
  CHECK(g.lattice.E() == 3);
  CHECK(g.twisted_edges == std::vector<std::size_t>{1});

  try {
    lattice_from_edge_list("V 2\n0 1\n0 2\n");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK(thrown_kind([] { lattice_from_edge_list("0 1\n"); }) == ErrorKind::ParseError);
  CHECK(thrown_kind([] { lattice_from_edge_list(""); }) == ErrorKind::ParseError);
  CHECK(thrown_kind([] { lattice_from_edge_list("V 2\n0 1 twisty\n"); }) == ErrorKind::ParseError);
  CHECK(thrown_kind([] { lattice_from_edge_list("V 2\n0\n"); }) == ErrorKind::ParseError);
  CHECK(thrown_kind([] { lattice_from_edge_list("V 2\nx 1\n"); }) == ErrorKind::ParseError);

  // Round trip on random multigraphs.
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t v = 1 + rng() % 6;
    std::vector<Edge> edges;
    std::vector<std::size_t> tw;
    const std::size_t e = rng() % 10;
    for (std::size_t i = 0; i < e; ++i) {
      edges.push_back({static_cast<std::uint32_t>(rng() % v), static_cast<std::uint32_t>(rng() % v), -1});
      if (rng() % 3 == 0) tw.push_back(i);
    }
    const auto l = make_lattice(v, edges);
    const auto text = emit_edge_list(l, tw);
    const auto back = lattice_from_edge_list(text);
    CHECK(back.lattice.V() == v);
    CHECK(back.lattice.edges == edges);
    CHECK(back.twisted_edges == tw);
    CHECK(emit_edge_list(back.lattice, back.twisted_edges) == text);
  }
}

TEST_CASE("connectivity") {
  CHECK(is_connected(make_lattice(1, {})));
  CHECK_FALSE(is_connected(make_lattice(4, {{0, 1}, {2, 3}})));
  CHECK(is_connected(hyper({3, 3}, true)));
  CHECK_FALSE(is_connected(make_lattice(2, {})));

  const auto g = builtin_group(GroupFamily::cyclic, {3});
  const auto torus = hyper({3, 3}, true);
  const auto t = make_twist(torus, identity_endomorphism(g), WrapDirection{0});
  CHECK(t.edges.size() == 3);
  CHECK(is_bulk_connected(torus, t));

  // Twisting the only link of a two-site chain: the head becomes boundary-only.
  const auto chain = hyper({2}, false);
  const auto tc = make_twist(chain, identity_endomorphism(g), std::vector<std::size_t>{0});
  const auto b = boundary_only_sites(chain, &tc);
  CHECK_FALSE(b[0]);
  CHECK(b[1]);
  CHECK(is_bulk_connected(chain, tc));

  // Twisting an interior link of a three-site chain disconnects the bulk.
  const auto chain3 = hyper({3}, false);
  const auto t3 = make_twist(chain3, identity_endomorphism(g), std::vector<std::size_t>{0});
  CHECK_FALSE(is_bulk_connected(chain3, t3));

  // Twisted self-loop: the site is a tail, never boundary-only.
  const auto loop = make_lattice(1, {{0, 0}});
  const auto tl = make_twist(loop, identity_endomorphism(g), std::vector<std::size_t>{0});
  CHECK_FALSE(boundary_only_sites(loop, &tl)[0]);
}

TEST_CASE("make_twist validation") {
  const auto g = builtin_group(GroupFamily::cyclic, {4});
  const auto l = hyper({2}, false);
  CHECK(thrown_kind([&] { make_twist(l, identity_endomorphism(g), WrapDirection{0}); }) == ErrorKind::BadParams);
  CHECK(thrown_kind([&] { make_twist(l, identity_endomorphism(g), std::vector<std::size_t>{1}); }) == ErrorKind::BadParams);
  CHECK(thrown_kind([&] { make_twist(l, g, {0, 2, 1, 3}, std::vector<std::size_t>{0}); }) == ErrorKind::NotAHomomorphism);
  const auto ok = make_twist(l, g, {0, 3, 2, 1}, std::vector<std::size_t>{0, 0});
  CHECK(ok.edges == std::vector<std::size_t>{0});
  CHECK(ok.is_twisted(0));
}

TEST_CASE("dangling boundary extension") {
  const auto g = builtin_group(GroupFamily::cyclic, {2});
  const auto chain = hyper({3}, false);

  const auto none = dangling_boundary_extension(chain, {}, g);
  CHECK(none.lattice.V() == chain.V());
  CHECK(none.lattice.edges == chain.edges);
  CHECK(none.twist.edges.empty());

  const std::uint32_t one[] = {0};
  const auto single = dangling_boundary_extension(make_lattice(1, {}), one, g);
  CHECK(single.lattice.V() == 2);
  CHECK(single.lattice.E() == 1);
  CHECK(boundary_only_sites(single.lattice, &single.twist)[1]);

  // 2D open lattice, one dangling link per top-row site into a shared boundary site.
  const auto grid = hyper({3, 2}, false);
  const std::uint32_t top[] = {3, 4, 5};
  const auto ext = dangling_boundary_extension(grid, top, g);
  CHECK(ext.lattice.V() == grid.V() + 1);
  CHECK(ext.lattice.E() == grid.E() + 3);
  CHECK(ext.twist.edges.size() == 3);
  CHECK_FALSE(ext.twist.phi.is_automorphism());
  CHECK(is_bulk_connected(ext.lattice, ext.twist));
  const auto b = boundary_only_sites(ext.lattice, &ext.twist);
  CHECK(std::count(b.begin(), b.end(), true) == 1);
  CHECK(b[grid.V()]);

  const std::uint32_t bad[] = {9};
  CHECK(thrown_kind([&] { dangling_boundary_extension(grid, bad, g); }) == ErrorKind::BadParams);
}
