#pragma once

#include "gaugecount/automorphisms.hpp"
#include "gaugecount/group.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gaugecount {

struct Edge {
  std::uint32_t tail = 0;
  std::uint32_t head = 0;
  int wrap_direction = -1;  // periodic wrap-around edge of this direction, -1 otherwise

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Oriented multigraph of sites and links. Self-loops and parallel edges are
/// allowed; edges are identified by index.
struct LatticeGraph {
  std::size_t site_count = 0;
  std::vector<Edge> edges;

  std::size_t V() const noexcept { return site_count; }
  std::size_t E() const noexcept { return edges.size(); }
};

/// Throws BadParams if an endpoint is out of range.
LatticeGraph make_lattice(std::size_t sites, std::vector<Edge> edges);

/// Row-major sites with the first dimension fastest; one +direction edge per
/// site and dimension, wrapping in periodic dimensions.
LatticeGraph lattice_hypercubic(std::span<const std::uint32_t> dims, std::span<const bool> periodic);

struct EdgeListFile {
  LatticeGraph lattice;
  std::vector<std::size_t> twisted_edges;
};

/// `V <int>` then one `tail head [twisted]` line per edge; '#' starts a comment.
EdgeListFile lattice_from_edge_list(std::string_view text);
std::string emit_edge_list(const LatticeGraph& l, std::span<const std::size_t> twisted_edges = {});

/// Twist on the head-site element of each selected edge.
struct TwistSpec {
  GroupEndomorphism phi;
  std::vector<std::size_t> edges;  // sorted, unique

  bool is_twisted(std::size_t e) const;
};

struct WrapDirection {
  int direction = 0;
};

using EdgeSelector = std::variant<std::vector<std::size_t>, WrapDirection>;

TwistSpec make_twist(const LatticeGraph& l, GroupEndomorphism phi, const EdgeSelector& selector);
/// Validates the image table first; throws NotAHomomorphism.
TwistSpec make_twist(const LatticeGraph& l, const GroupRef& g, std::vector<Element> image, const EdgeSelector& selector);

struct DanglingExtension {
  LatticeGraph lattice;
  TwistSpec twist;
};

/// Adds one boundary site as the head of a new link from each attach site,
/// twisted by the constant map g -> 1 (no Gauss law on the boundary site).
DanglingExtension dangling_boundary_extension(const LatticeGraph& l, std::span<const std::uint32_t> attach_sites,
                                              const GroupRef& g);

bool is_connected(const LatticeGraph& l);

/// Boundary-only sites: every incident link is twisted and has the site as
/// its head. Such sites only see the bulk through the twist.
std::vector<bool> boundary_only_sites(const LatticeGraph& l, const TwistSpec* twist);

/// Connectivity of the sites that are not boundary-only after removing twisted links.
bool is_bulk_connected(const LatticeGraph& l, const TwistSpec& twist);

}  // namespace gaugecount
