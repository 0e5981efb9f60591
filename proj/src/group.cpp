#include "gaugecount/group.hpp"

#include "gaugecount/detail/quaternion.hpp"
#include "gaugecount/numeric.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>

namespace gaugecount {

namespace {

std::vector<bool> closure_mask(std::size_t n, std::span<const Element> table, Element identity,
                               std::span<const Element> gens) {
  std::vector<bool> seen(n, false);
  std::vector<Element> queue{identity};
  seen[identity] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (Element s : gens) {
      const Element x = table[static_cast<std::size_t>(queue[head]) * n + s];
      if (!seen[x]) {
        seen[x] = true;
        queue.push_back(x);
      }
    }
  }
  return seen;
}

std::size_t popcount(const std::vector<bool>& mask) { return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true)); }

}  // namespace

FiniteGroup::FiniteGroup(std::size_t order, std::vector<Element> mul_table, std::vector<std::string> labels,
                         std::vector<Element> generators)
    : order_(order), table_(std::move(mul_table)) {
  const std::size_t n = order_;
  if (n == 0) fail(ErrorKind::NotAGroup, "empty table");
  if (n > kMaxGroupOrder) fail(ErrorKind::BadParams, "group order " + std::to_string(n) + " exceeds " + std::to_string(kMaxGroupOrder));
  if (table_.size() != n * n) fail(ErrorKind::NotAGroup, "table has " + std::to_string(table_.size()) + " entries, expected " + std::to_string(n * n));

  std::vector<char> seen(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t b = 0; b < n; ++b) {
      const Element x = table_[a * n + b];
      if (x >= n) fail(ErrorKind::NotAGroup, "entry out of range at row " + std::to_string(a));
      if (seen[x]) fail(ErrorKind::NotAGroup, "row " + std::to_string(a) + " repeats element " + std::to_string(x));
      seen[x] = 1;
    }
  }
  for (std::size_t b = 0; b < n; ++b) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t a = 0; a < n; ++a) {
      const Element x = table_[a * n + b];
      if (seen[x]) fail(ErrorKind::NotAGroup, "column " + std::to_string(b) + " repeats element " + std::to_string(x));
      seen[x] = 1;
    }
  }

  bool found = false;
  for (std::size_t e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = table_[e * n + x] == x && table_[x * n + e] == x;
    if (ok) {
      identity_ = static_cast<Element>(e);
      found = true;
    }
  }
  if (!found) fail(ErrorKind::NotAGroup, "no two-sided identity");

  inv_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (table_[a * n + b] == identity_) {
        if (table_[b * n + a] != identity_) fail(ErrorKind::NotAGroup, "left and right inverses differ for " + std::to_string(a));
        inv_[a] = static_cast<Element>(b);
        break;
      }
    }
  }

  auto check_triple = [&](std::size_t a, std::size_t b, std::size_t c) {
    if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
      fail(ErrorKind::NotAGroup, "associativity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
    }
  };
  if (n <= 200) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) check_triple(a, b, c);
  } else {
    std::mt19937_64 rng(0x5eed1234abcdULL);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int t = 0; t < 100000; ++t) check_triple(pick(rng), pick(rng), pick(rng));
  }

  element_orders_.resize(n);
  exponent_ = 1;
  for (std::size_t g = 0; g < n; ++g) {
    std::uint32_t k = 1;
    Element p = static_cast<Element>(g);
    while (p != identity_) {
      p = mul(p, static_cast<Element>(g));
      ++k;
    }
    element_orders_[g] = k;
    exponent_ = static_cast<std::uint32_t>(lcm_u64(exponent_, k));
  }

  for (std::size_t a = 0; a < n && abelian_; ++a)
    for (std::size_t b = a + 1; b < n && abelian_; ++b) abelian_ = mul(a, b) == mul(b, a);

  if (labels.empty()) {
    labels.resize(n);
    for (std::size_t g = 0; g < n; ++g) labels[g] = std::to_string(g);
  }
  if (labels.size() != n) fail(ErrorKind::NotAGroup, "expected " + std::to_string(n) + " labels, got " + std::to_string(labels.size()));
  labels_ = std::move(labels);

  if (!generators.empty()) {
    for (Element s : generators) {
      if (s >= n) fail(ErrorKind::BadParams, "generator index out of range");
    }
    if (popcount(closure_mask(n, table_, identity_, generators)) != n) {
      fail(ErrorKind::BadParams, "given generators do not generate the group");
    }
    generators_ = std::move(generators);
  } else if (n > 1) {
    // Greedy: highest-order elements first, skip anything already generated.
    std::vector<Element> by_order(n);
    std::iota(by_order.begin(), by_order.end(), 0);
    std::stable_sort(by_order.begin(), by_order.end(),
                     [&](Element a, Element b) { return element_orders_[a] > element_orders_[b]; });
    std::vector<bool> current(n, false);
    current[identity_] = true;
    for (Element g : by_order) {
      if (current[g]) continue;
      generators_.push_back(g);
      current = closure_mask(n, table_, identity_, generators_);
      if (popcount(current) == n) break;
    }
  }
}

Element FiniteGroup::power(Element g, std::int64_t k) const {
  const auto ord = static_cast<std::int64_t>(element_orders_[g]);
  k = ((k % ord) + ord) % ord;
  Element r = identity_;
  for (std::int64_t i = 0; i < k; ++i) r = mul(r, g);
  return r;
}

void require_same_group(const GroupRef& a, const GroupRef& b, std::string_view what) {
  if (!same_group(a, b)) fail(ErrorKind::GroupMismatch, std::string(what) + " refer to different groups");
}

WordTree word_tree(const FiniteGroup& g) {
  const std::size_t n = g.order();
  WordTree t;
  t.parent.assign(n, g.identity());
  t.gen_index.assign(n, -1);
  std::vector<bool> seen(n, false);
  seen[g.identity()] = true;
  t.bfs_order.push_back(g.identity());
  const auto gens = g.generators();
  for (std::size_t head = 0; head < t.bfs_order.size(); ++head) {
    const Element x = t.bfs_order[head];
    for (std::size_t s = 0; s < gens.size(); ++s) {
      const Element y = g.mul(x, gens[s]);
      if (seen[y]) continue;
      seen[y] = true;
      t.parent[y] = x;
      t.gen_index[y] = static_cast<int>(s);
      t.bfs_order.push_back(y);
    }
  }
  return t;
}

ConjugacyClassTable conjugacy_classes(const FiniteGroup& g) {
  const std::size_t n = g.order();
  const auto gens = g.generators();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  ConjugacyClassTable t;
  t.class_of.assign(n, kNone);

  auto add_class = [&](Element start) {
    const std::size_t id = t.reps.size();
    std::vector<Element> orbit{start};
    t.class_of[start] = id;
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      for (Element s : gens) {
        const Element y = g.conjugate(s, orbit[head]);
        if (t.class_of[y] == kNone) {
          t.class_of[y] = id;
          orbit.push_back(y);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    t.reps.push_back(orbit.front());
    t.sizes.push_back(orbit.size());
    t.centralizer_sizes.push_back(n / orbit.size());
    t.members.push_back(std::move(orbit));
  };

  add_class(g.identity());
  for (Element x = 0; x < n; ++x) {
    if (t.class_of[x] == kNone) add_class(x);
  }
  t.inverse_class.resize(t.count());
  for (std::size_t c = 0; c < t.count(); ++c) t.inverse_class[c] = t.class_of[g.inv(t.reps[c])];
  return t;
}

// ---------------------------------------------------------------------------

SubgroupHandle::SubgroupHandle(GroupRef parent, std::vector<bool> member_mask)
    : parent_(std::move(parent)), mask_(std::move(member_mask)), order_(popcount(mask_)) {}

std::vector<Element> SubgroupHandle::elements() const {
  std::vector<Element> out;
  out.reserve(order_);
  for (Element g = 0; g < mask_.size(); ++g) {
    if (mask_[g]) out.push_back(g);
  }
  return out;
}

SubgroupHandle make_subgroup(const GroupRef& g, std::vector<bool> mask) {
  if (mask.size() != g->order()) fail(ErrorKind::NotASubgroup, "mask size does not match group order");
  if (!mask[g->identity()]) fail(ErrorKind::NotASubgroup, "subset misses the identity");
  std::vector<Element> elems;
  for (Element x = 0; x < mask.size(); ++x) {
    if (mask[x]) elems.push_back(x);
  }
  for (Element a : elems) {
    if (!mask[g->inv(a)]) fail(ErrorKind::NotASubgroup, "subset not closed under inverses");
    for (Element b : elems) {
      if (!mask[g->mul(a, b)]) fail(ErrorKind::NotASubgroup, "subset not closed under multiplication");
    }
  }
  return SubgroupHandle(g, std::move(mask));
}

SubgroupHandle generated_subgroup(const GroupRef& g, std::span<const Element> elems) {
  for (Element x : elems) {
    if (x >= g->order()) fail(ErrorKind::NotASubgroup, "element index out of range");
  }
  return SubgroupHandle(g, closure_mask(g->order(), g->mul_table(), g->identity(), elems));
}

SubgroupHandle trivial_subgroup(const GroupRef& g) {
  std::vector<bool> mask(g->order(), false);
  mask[g->identity()] = true;
  return SubgroupHandle(g, std::move(mask));
}

SubgroupHandle whole_group(const GroupRef& g) { return SubgroupHandle(g, std::vector<bool>(g->order(), true)); }

SubgroupHandle centralizer(const GroupRef& g, Element x) {
  std::vector<bool> mask(g->order(), false);
  for (Element h = 0; h < g->order(); ++h) mask[h] = g->mul(h, x) == g->mul(x, h);
  return SubgroupHandle(g, std::move(mask));
}

SubgroupHandle center(const GroupRef& g) {
  std::vector<bool> mask(g->order(), true);
  const auto gens = g->generators();
  for (Element h = 0; h < g->order(); ++h) {
    for (Element s : gens) {
      if (g->mul(h, s) != g->mul(s, h)) {
        mask[h] = false;
        break;
      }
    }
  }
  return SubgroupHandle(g, std::move(mask));
}

SubgroupHandle normalizer(const GroupRef& g, const SubgroupHandle& h) {
  require_same_group(g, h.parent(), "group and subgroup");
  const auto members = h.elements();
  std::vector<bool> mask(g->order(), false);
  for (Element x = 0; x < g->order(); ++x) {
    bool ok = true;
    for (Element m : members) {
      if (!h.contains(g->conjugate(x, m))) {
        ok = false;
        break;
      }
    }
    mask[x] = ok;
  }
  return SubgroupHandle(g, std::move(mask));
}

std::vector<Coset> coset_space(const GroupRef& g, const SubgroupHandle& h) {
  require_same_group(g, h.parent(), "group and subgroup");
  const auto members = h.elements();
  std::vector<bool> assigned(g->order(), false);
  std::vector<Coset> out;
  for (Element x = 0; x < g->order(); ++x) {
    if (assigned[x]) continue;
    Coset c{x, {}};
    for (Element m : members) {
      const Element y = g->mul(x, m);
      assigned[y] = true;
      c.members.push_back(y);
    }
    std::sort(c.members.begin(), c.members.end());
    c.representative = c.members.front();
    out.push_back(std::move(c));
  }
  return out;
}

SubgroupAsGroup subgroup_as_group(const SubgroupHandle& h) {
  const auto& g = *h.parent();
  std::vector<Element> emb{g.identity()};
  for (Element x : h.elements()) {
    if (x != g.identity()) emb.push_back(x);
  }
  const std::size_t m = emb.size();
  std::vector<Element> back(g.order(), 0);
  for (std::size_t i = 0; i < m; ++i) back[emb[i]] = static_cast<Element>(i);
  std::vector<Element> table(m * m);
  std::vector<std::string> labels(m);
  for (std::size_t i = 0; i < m; ++i) {
    labels[i] = g.label(emb[i]);
    for (std::size_t j = 0; j < m; ++j) table[i * m + j] = back[g.mul(emb[i], emb[j])];
  }
  return {make_group(FiniteGroup(m, std::move(table), std::move(labels))), std::move(emb)};
}

// ---------------------------------------------------------------------------
// Built-in families

GroupFamily parse_group_family(std::string_view name) {
  static const std::map<std::string_view, GroupFamily> kNames = {
      {"cyclic", GroupFamily::cyclic},
      {"dihedral", GroupFamily::dihedral},
      {"quaternion", GroupFamily::quaternion},
      {"symmetric", GroupFamily::symmetric},
      {"binary_tetrahedral", GroupFamily::binary_tetrahedral},
      {"binary_octahedral", GroupFamily::binary_octahedral},
      {"binary_icosahedral", GroupFamily::binary_icosahedral},
      {"direct_product", GroupFamily::direct_product},
  };
  const auto it = kNames.find(name);
  if (it == kNames.end()) fail(ErrorKind::UnknownFamily, "unknown group family '" + std::string(name) + "'");
  return it->second;
}

std::string_view to_string(GroupFamily f) noexcept {
  switch (f) {
    case GroupFamily::cyclic: return "cyclic";
    case GroupFamily::dihedral: return "dihedral";
    case GroupFamily::quaternion: return "quaternion";
    case GroupFamily::symmetric: return "symmetric";
    case GroupFamily::binary_tetrahedral: return "binary_tetrahedral";
    case GroupFamily::binary_octahedral: return "binary_octahedral";
    case GroupFamily::binary_icosahedral: return "binary_icosahedral";
    case GroupFamily::direct_product: return "direct_product";
  }
  return "unknown";
}

namespace {

std::int64_t single_param(const GroupSpec& spec, std::int64_t lo) {
  if (spec.params.size() != 1) {
    fail(ErrorKind::BadParams, std::string(to_string(spec.family)) + " takes exactly one parameter");
  }
  const auto n = spec.params[0];
  if (n < lo) fail(ErrorKind::BadParams, std::string(to_string(spec.family)) + " parameter must be >= " + std::to_string(lo));
  return n;
}

void require_no_params(const GroupSpec& spec) {
  if (!spec.params.empty()) fail(ErrorKind::BadParams, std::string(to_string(spec.family)) + " takes no parameters");
}

GroupRef cyclic_group(std::int64_t n64) {
  if (n64 > static_cast<std::int64_t>(kMaxGroupOrder)) fail(ErrorKind::BadParams, "cyclic order too large");
  const auto n = static_cast<std::size_t>(n64);
  std::vector<Element> table(n * n);
  std::vector<std::string> labels(n);
  for (std::size_t a = 0; a < n; ++a) {
    labels[a] = a == 0 ? "e" : a == 1 ? "x" : "x^" + std::to_string(a);
    for (std::size_t b = 0; b < n; ++b) table[a * n + b] = static_cast<Element>((a + b) % n);
  }
  std::vector<Element> gens;
  if (n > 1) gens.push_back(1);
  return make_group(FiniteGroup(n, std::move(table), std::move(labels), std::move(gens)));
}

// s^m r^k has index m*N + k.
GroupRef dihedral_group(std::int64_t n64) {
  if (2 * n64 > static_cast<std::int64_t>(kMaxGroupOrder)) fail(ErrorKind::BadParams, "dihedral order too large");
  const auto n = static_cast<std::size_t>(n64);
  const std::size_t order = 2 * n;
  std::vector<Element> table(order * order);
  std::vector<std::string> labels(order);
  for (std::size_t a = 0; a < order; ++a) {
    const std::size_t ma = a / n;
    const std::size_t ka = a % n;
    std::string rk = ka == 0 ? "" : ka == 1 ? "r" : "r^" + std::to_string(ka);
    labels[a] = ma == 0 ? (rk.empty() ? "e" : rk) : (rk.empty() ? "s" : "s" + rk);
    for (std::size_t b = 0; b < order; ++b) {
      const std::size_t mb = b / n;
      const std::size_t kb = b % n;
      // (s^ma r^ka)(s^mb r^kb) = s^(ma+mb) r^((-1)^mb ka + kb)
      const std::size_t k = ((mb == 0 ? ka : (n - ka) % n) + kb) % n;
      table[a * order + b] = static_cast<Element>(((ma + mb) % 2) * n + k);
    }
  }
  std::vector<Element> gens;
  if (n > 1) gens.push_back(1);
  gens.push_back(static_cast<Element>(n));
  return make_group(FiniteGroup(order, std::move(table), std::move(labels), std::move(gens)));
}

std::string cycle_notation(const std::vector<int>& p) {
  std::vector<bool> seen(p.size(), false);
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    out += "(";
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out += " ";
      out += std::to_string(j);
      first = false;
      j = static_cast<std::size_t>(p[j]);
    }
    out += ")";
  }
  return out.empty() ? "e" : out;
}

// Permutations in lexicographic order; (p*q)(i) = p(q(i)).
GroupRef symmetric_group(std::int64_t n64) {
  if (n64 > 7) fail(ErrorKind::BadParams, "symmetric degree above 7 exceeds the order cap");
  const auto n = static_cast<int>(n64);
  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const std::size_t order = perms.size();
  std::map<std::vector<int>, Element> index;
  for (std::size_t i = 0; i < order; ++i) index.emplace(perms[i], static_cast<Element>(i));
  std::vector<Element> table(order * order);
  std::vector<int> c(static_cast<std::size_t>(n));
  for (std::size_t a = 0; a < order; ++a) {
    for (std::size_t b = 0; b < order; ++b) {
      for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = perms[a][static_cast<std::size_t>(perms[b][static_cast<std::size_t>(i)])];
      table[a * order + b] = index.at(c);
    }
  }
  std::vector<std::string> labels(order);
  for (std::size_t i = 0; i < order; ++i) labels[i] = cycle_notation(perms[i]);
  std::vector<Element> gens;
  if (n >= 2) {
    std::vector<int> t(static_cast<std::size_t>(n));
    std::iota(t.begin(), t.end(), 0);
    std::swap(t[0], t[1]);
    gens.push_back(index.at(t));
    if (n >= 3) {
      std::vector<int> cyc(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) cyc[static_cast<std::size_t>(i)] = (i + 1) % n;
      gens.push_back(index.at(cyc));
    }
  }
  return make_group(FiniteGroup(order, std::move(table), std::move(labels), std::move(gens)));
}

struct QuaternionGroup {
  GroupRef group;
  std::vector<detail::Quaternion> elements;
};

const QuaternionGroup& quaternion_family(GroupFamily family) {
  static std::mutex mu;
  static std::map<GroupFamily, QuaternionGroup> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(family);
  if (it != cache.end()) return it->second;
  const auto gens = detail::quaternion_generators(family);
  QuaternionGroup q;
  q.group = build_from_generators<detail::Quaternion>(
      std::span<const detail::Quaternion>(gens), [](const detail::Quaternion& a, const detail::Quaternion& b) { return a * b; },
      [](const detail::Quaternion& a, const detail::Quaternion& b) { return a == b; }, 200, &q.elements,
      [](const detail::Quaternion& x) { return x.to_string(); });
  return cache.emplace(family, std::move(q)).first->second;
}

}  // namespace

namespace detail {

std::vector<Quaternion> quaternion_generators(GroupFamily family) {
  const BigRational half(1, 2);
  const BigRational quarter(1, 4);
  const QField zero;
  const Quaternion i{zero, QField(1), zero, zero};
  const Quaternion j{zero, zero, QField(1), zero};
  const Quaternion t{QField(half), QField(half), QField(half), QField(half)};  // (1+i+j+k)/2
  switch (family) {
    case GroupFamily::quaternion:
      return {i, j};
    case GroupFamily::binary_tetrahedral:
      return {t, i};
    case GroupFamily::binary_octahedral: {
      const QField inv_sqrt2(0, half);  // sqrt2/2
      return {Quaternion{inv_sqrt2, inv_sqrt2, zero, zero}, t};
    }
    case GroupFamily::binary_icosahedral: {
      // ((1+sqrt5)/4) + ((sqrt5-1)/4) i + j/2
      const Quaternion y{QField(quarter, 0, quarter), QField(-quarter, 0, quarter), QField(half), zero};
      return {t, y};
    }
    default:
      fail(ErrorKind::UnknownFamily, "not a quaternionic family");
  }
}

const std::vector<Quaternion>& quaternion_elements(GroupFamily family) { return quaternion_family(family).elements; }

}  // namespace detail

GroupRef direct_product(const GroupRef& g1, const GroupRef& g2) {
  const std::size_t n1 = g1->order();
  const std::size_t n2 = g2->order();
  const std::size_t n = n1 * n2;
  if (n > kMaxGroupOrder) fail(ErrorKind::BadParams, "direct product order exceeds cap");
  std::vector<Element> table(n * n);
  std::vector<std::string> labels(n);
  for (std::size_t a = 0; a < n; ++a) {
    const Element a1 = static_cast<Element>(a / n2);
    const Element a2 = static_cast<Element>(a % n2);
    labels[a] = "(" + g1->label(a1) + "," + g2->label(a2) + ")";
    for (std::size_t b = 0; b < n; ++b) {
      const Element b1 = static_cast<Element>(b / n2);
      const Element b2 = static_cast<Element>(b % n2);
      table[a * n + b] = static_cast<Element>(g1->mul(a1, b1) * n2 + g2->mul(a2, b2));
    }
  }
  std::vector<Element> gens;
  for (Element s : g1->generators()) gens.push_back(static_cast<Element>(s * n2 + g2->identity()));
  for (Element s : g2->generators()) gens.push_back(static_cast<Element>(g1->identity() * n2 + s));
  return make_group(FiniteGroup(n, std::move(table), std::move(labels), std::move(gens)));
}

GroupRef builtin_group(const GroupSpec& spec) {
  switch (spec.family) {
    case GroupFamily::cyclic:
      return cyclic_group(single_param(spec, 1));
    case GroupFamily::dihedral:
      return dihedral_group(single_param(spec, 1));
    case GroupFamily::symmetric:
      return symmetric_group(single_param(spec, 1));
    case GroupFamily::quaternion:
    case GroupFamily::binary_tetrahedral:
    case GroupFamily::binary_octahedral:
    case GroupFamily::binary_icosahedral:
      require_no_params(spec);
      return quaternion_family(spec.family).group;
    case GroupFamily::direct_product: {
      if (spec.factors.size() < 2) fail(ErrorKind::BadParams, "direct_product needs at least two factors");
      GroupRef acc = builtin_group(spec.factors[0]);
      for (std::size_t i = 1; i < spec.factors.size(); ++i) acc = direct_product(acc, builtin_group(spec.factors[i]));
      return acc;
    }
  }
  fail(ErrorKind::UnknownFamily, "unhandled family");
}

GroupRef builtin_group(GroupFamily family, std::vector<std::int64_t> params) {
  return builtin_group(GroupSpec{family, std::move(params), {}});
}

// ---------------------------------------------------------------------------
// Cayley-table text format

std::string emit_cayley_table(const FiniteGroup& g) {
  std::ostringstream os;
  const std::size_t n = g.order();
  os << "order " << n << "\n";
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) os << (b ? " " : "") << g.mul(a, b);
    os << "\n";
  }
  os << "labels\n";
  for (Element a = 0; a < n; ++a) os << g.label(a) << "\n";
  return os.str();
}

GroupRef parse_cayley_table(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, line)) {
      ++lineno;
      const auto start = line.find_first_not_of(" \t\r");
      if (start == std::string::npos || line[start] == '#') continue;
      const auto end = line.find_last_not_of(" \t\r");
      out = line.substr(start, end - start + 1);
      return true;
    }
    return false;
  };
  auto parse_fail = [&](const std::string& msg) -> void {
    fail(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": " + msg);
  };

  std::string cur;
  if (!next_line(cur)) parse_fail("empty input");
  std::size_t n = 0;
  {
    std::istringstream hs(cur);
    std::string kw;
    long long v = -1;
    if (!(hs >> kw >> v) || kw != "order" || v <= 0) parse_fail("expected 'order N'");
    if (static_cast<std::size_t>(v) > kMaxGroupOrder) parse_fail("order exceeds cap");
    n = static_cast<std::size_t>(v);
  }
  std::vector<Element> table;
  table.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!next_line(cur)) parse_fail("missing table row " + std::to_string(r));
    std::istringstream rs(cur);
    long long v = 0;
    std::size_t count = 0;
    while (rs >> v) {
      if (v < 0 || static_cast<std::size_t>(v) >= n) parse_fail("entry out of range");
      table.push_back(static_cast<Element>(v));
      ++count;
    }
    if (!rs.eof()) parse_fail("non-integer entry");
    if (count != n) parse_fail("row has " + std::to_string(count) + " entries, expected " + std::to_string(n));
  }
  std::vector<std::string> labels;
  if (next_line(cur)) {
    if (cur != "labels") parse_fail("expected 'labels' or end of input");
    for (std::size_t r = 0; r < n; ++r) {
      if (!next_line(cur)) parse_fail("missing label " + std::to_string(r));
      labels.push_back(cur);
    }
    if (next_line(cur)) parse_fail("trailing content");
  }
  return make_group(FiniteGroup(n, std::move(table), std::move(labels)));
}

}  // namespace gaugecount
