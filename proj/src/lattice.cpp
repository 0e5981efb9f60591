#include "gaugecount/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace gaugecount {

namespace {

// Union-find over sites restricted to `active`, joining along edges accepted by `use`.
template <typename Use>
bool connected_over(const LatticeGraph& l, const std::vector<bool>& active, Use use) {
  std::vector<std::size_t> parent(l.V());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t e = 0; e < l.E(); ++e) {
    const auto& ed = l.edges[e];
    if (!use(e) || !active[ed.tail] || !active[ed.head]) continue;
    parent[find(ed.tail)] = find(ed.head);
  }
  std::size_t roots = 0;
  for (std::size_t x = 0; x < l.V(); ++x) roots += active[x] && find(x) == x;
  return roots <= 1;
}

}  // namespace

LatticeGraph make_lattice(std::size_t sites, std::vector<Edge> edges) {
  for (const auto& e : edges) {
    if (e.tail >= sites || e.head >= sites) fail(ErrorKind::BadParams, "edge endpoint out of range");
  }
  return {sites, std::move(edges)};
}

LatticeGraph lattice_hypercubic(std::span<const std::uint32_t> dims, std::span<const bool> periodic) {
  if (dims.empty()) fail(ErrorKind::BadDims, "at least one dimension is required");
  if (periodic.size() != dims.size()) fail(ErrorKind::BadDims, "periodicity flags must match the number of dimensions");
  std::size_t volume = 1;
  std::vector<std::size_t> stride(dims.size());
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (dims[k] == 0) fail(ErrorKind::BadDims, "dimension extents must be positive");
    stride[k] = volume;
    volume *= dims[k];
    if (volume > 100'000'000) fail(ErrorKind::BadDims, "lattice too large");
  }
  LatticeGraph l{volume, {}};
  for (std::size_t s = 0; s < volume; ++s) {
    for (std::size_t k = 0; k < dims.size(); ++k) {
      const std::size_t xk = (s / stride[k]) % dims[k];
      if (xk + 1 < dims[k]) {
        l.edges.push_back({static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s + stride[k]), -1});
      } else if (periodic[k]) {
        l.edges.push_back({static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s - xk * stride[k]), static_cast<int>(k)});
      }
    }
  }
  return l;
}

EdgeListFile lattice_from_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  EdgeListFile out;
  auto parse_fail = [&](const std::string& msg) { fail(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": " + msg); };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (!have_header) {
      long long v = -1;
      if (first != "V" || !(ls >> v) || v < 0) parse_fail("expected 'V <sites>'");
      std::string extra;
      if (ls >> extra) parse_fail("unexpected token '" + extra + "'");
      out.lattice.site_count = static_cast<std::size_t>(v);
      have_header = true;
      continue;
    }
    long long t = -1;
    long long h = -1;
    try {
      std::size_t pos = 0;
      t = std::stoll(first, &pos);
      if (pos != first.size()) parse_fail("bad tail '" + first + "'");
    } catch (const std::logic_error&) {
      parse_fail("bad tail '" + first + "'");
    }
    if (!(ls >> h)) parse_fail("missing head");
    const auto v = static_cast<long long>(out.lattice.site_count);
    if (t < 0 || t >= v || h < 0 || h >= v) parse_fail("endpoint out of range for V = " + std::to_string(v));
    std::string flag;
    if (ls >> flag) {
      if (flag != "twisted") parse_fail("unexpected token '" + flag + "'");
      out.twisted_edges.push_back(out.lattice.edges.size());
      std::string extra;
      if (ls >> extra) parse_fail("unexpected token '" + extra + "'");
    }
    out.lattice.edges.push_back({static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(h), -1});
  }
  if (!have_header) fail(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": missing 'V <sites>' header");
  return out;
}

std::string emit_edge_list(const LatticeGraph& l, std::span<const std::size_t> twisted_edges) {
  std::vector<bool> tw(l.E(), false);
  for (auto e : twisted_edges) {
    if (e < l.E()) tw[e] = true;
  }
  std::ostringstream os;
  os << "V " << l.V() << "\n";
  for (std::size_t e = 0; e < l.E(); ++e) {
    os << l.edges[e].tail << " " << l.edges[e].head << (tw[e] ? " twisted" : "") << "\n";
  }
  return os.str();
}

bool TwistSpec::is_twisted(std::size_t e) const { return std::binary_search(edges.begin(), edges.end(), e); }

TwistSpec make_twist(const LatticeGraph& l, GroupEndomorphism phi, const EdgeSelector& selector) {
  std::vector<std::size_t> edges;
  if (const auto* list = std::get_if<std::vector<std::size_t>>(&selector)) {
    for (auto e : *list) {
      if (e >= l.E()) fail(ErrorKind::BadParams, "twisted edge index " + std::to_string(e) + " out of range");
    }
    edges = *list;
  } else {
    const int k = std::get<WrapDirection>(selector).direction;
    for (std::size_t e = 0; e < l.E(); ++e) {
      if (l.edges[e].wrap_direction == k) edges.push_back(e);
    }
    if (edges.empty()) fail(ErrorKind::BadParams, "lattice has no wrap edges in direction " + std::to_string(k));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return {std::move(phi), std::move(edges)};
}

TwistSpec make_twist(const LatticeGraph& l, const GroupRef& g, std::vector<Element> image, const EdgeSelector& selector) {
  return make_twist(l, GroupEndomorphism(g, std::move(image)), selector);
}

DanglingExtension dangling_boundary_extension(const LatticeGraph& l, std::span<const std::uint32_t> attach_sites,
                                              const GroupRef& g) {
  LatticeGraph out = l;
  std::vector<std::size_t> twisted;
  if (!attach_sites.empty()) {
    const auto boundary = static_cast<std::uint32_t>(l.V());
    out.site_count += 1;
    for (auto x : attach_sites) {
      if (x >= l.V()) fail(ErrorKind::BadParams, "attach site out of range");
      twisted.push_back(out.edges.size());
      out.edges.push_back({x, boundary, -1});
    }
  }
  return {out, TwistSpec{trivial_endomorphism(g), std::move(twisted)}};
}

bool is_connected(const LatticeGraph& l) {
  return connected_over(l, std::vector<bool>(l.V(), true), [](std::size_t) { return true; });
}

std::vector<bool> boundary_only_sites(const LatticeGraph& l, const TwistSpec* twist) {
  std::vector<bool> touched(l.V(), false);
  std::vector<bool> ok(l.V(), true);
  for (std::size_t e = 0; e < l.E(); ++e) {
    const auto& ed = l.edges[e];
    const bool tw = twist && twist->is_twisted(e);
    touched[ed.tail] = touched[ed.head] = true;
    ok[ed.tail] = false;  // tails (including self-loops) are never boundary-only
    if (!tw) ok[ed.head] = false;
  }
  std::vector<bool> out(l.V());
  for (std::size_t x = 0; x < l.V(); ++x) out[x] = touched[x] && ok[x];
  return out;
}

bool is_bulk_connected(const LatticeGraph& l, const TwistSpec& twist) {
  const auto boundary = boundary_only_sites(l, &twist);
  std::vector<bool> active(l.V());
  for (std::size_t x = 0; x < l.V(); ++x) active[x] = !boundary[x];
  return connected_over(l, active, [&](std::size_t e) { return !twist.is_twisted(e); });
}

}  // namespace gaugecount
