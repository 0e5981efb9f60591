#pragma once

#include "gaugecount/error.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gaugecount {

using Element = std::uint32_t;

inline constexpr std::size_t kMaxGroupOrder = 10000;

/// A finite group stored as an explicit Cayley table over element indices.
///
/// Immutable after construction. The constructor checks the group axioms:
/// Latin-square rows and columns, a two-sided identity, and associativity
/// (every triple for order <= 200, 10^5 seeded random triples above).
class FiniteGroup {
 public:
  /// `mul_table` is row-major: entry a*order+b is a*b. Missing labels are
  /// replaced by the element index; missing generators are chosen greedily.
  FiniteGroup(std::size_t order, std::vector<Element> mul_table, std::vector<std::string> labels = {},
              std::vector<Element> generators = {});

  std::size_t order() const noexcept { return order_; }
  Element identity() const noexcept { return identity_; }
  Element mul(Element a, Element b) const noexcept { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  Element inv(Element a) const noexcept { return inv_[a]; }
  /// h g h^-1
  Element conjugate(Element h, Element g) const noexcept { return mul(mul(h, g), inv(h)); }
  Element power(Element g, std::int64_t k) const;

  std::uint32_t element_order(Element g) const noexcept { return element_orders_[g]; }
  /// lcm of element orders.
  std::uint32_t exponent() const noexcept { return exponent_; }
  bool is_abelian() const noexcept { return abelian_; }

  const std::string& label(Element g) const { return labels_[g]; }
  std::span<const std::string> labels() const noexcept { return labels_; }
  std::span<const Element> generators() const noexcept { return generators_; }
  std::span<const Element> mul_table() const noexcept { return table_; }
  std::span<const Element> inv_table() const noexcept { return inv_; }

  /// Equal Cayley tables (labels and generators are presentation detail).
  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.order_ == b.order_ && a.table_ == b.table_;
  }

 private:
  std::size_t order_;
  std::vector<Element> table_;
  std::vector<Element> inv_;
  Element identity_ = 0;
  std::vector<std::uint32_t> element_orders_;
  std::uint32_t exponent_ = 1;
  bool abelian_ = true;
  std::vector<std::string> labels_;
  std::vector<Element> generators_;
};

using GroupRef = std::shared_ptr<const FiniteGroup>;

inline GroupRef make_group(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

/// Same object or identical Cayley table.
inline bool same_group(const GroupRef& a, const GroupRef& b) { return a == b || (a && b && *a == *b); }

/// Throws GroupMismatch unless the two references describe the same group.
void require_same_group(const GroupRef& a, const GroupRef& b, std::string_view what);

/// Breadth-first spanning tree of the right Cayley graph over generators():
/// every element is parent[e] * generators()[gen_index[e]].
struct WordTree {
  std::vector<Element> bfs_order;
  std::vector<Element> parent;
  std::vector<int> gen_index;  // -1 for the identity
};

WordTree word_tree(const FiniteGroup& g);

// ---------------------------------------------------------------------------
// Closure of abstract generators

/// Closes `gens` under `mul` using only `eq` to identify elements.
///
/// The result has the identity at index 0 and its generators in the given
/// order (duplicates and the identity dropped). `elements_out`, when given,
/// receives the abstract element behind each index. For at most 200 elements
/// the derived table is cross-checked against `mul` on every pair.
template <typename T, typename Mul, typename Eq>
GroupRef build_from_generators(std::span<const T> gens, Mul mul, Eq eq, std::size_t max_order,
                               std::vector<T>* elements_out = nullptr,
                               std::function<std::string(const T&)> label_fn = {});

// ---------------------------------------------------------------------------
// Conjugacy classes

struct ConjugacyClassTable {
  std::vector<std::size_t> class_of;
  std::vector<Element> reps;
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> inverse_class;
  std::vector<std::size_t> centralizer_sizes;
  std::vector<std::vector<Element>> members;

  std::size_t count() const noexcept { return reps.size(); }
};

/// Identity class first, then classes ordered by their minimal element.
ConjugacyClassTable conjugacy_classes(const FiniteGroup& g);

// ---------------------------------------------------------------------------
// Subgroups

class SubgroupHandle {
 public:
  SubgroupHandle(GroupRef parent, std::vector<bool> member_mask);

  const GroupRef& parent() const noexcept { return parent_; }
  std::size_t order() const noexcept { return order_; }
  bool contains(Element g) const { return mask_[g]; }
  const std::vector<bool>& member_mask() const noexcept { return mask_; }
  std::vector<Element> elements() const;

 private:
  GroupRef parent_;
  std::vector<bool> mask_;
  std::size_t order_ = 0;
};

/// Throws NotASubgroup if the mask is not closed or misses the identity.
SubgroupHandle make_subgroup(const GroupRef& g, std::vector<bool> mask);
SubgroupHandle generated_subgroup(const GroupRef& g, std::span<const Element> elems);
SubgroupHandle trivial_subgroup(const GroupRef& g);
SubgroupHandle whole_group(const GroupRef& g);

SubgroupHandle center(const GroupRef& g);
SubgroupHandle centralizer(const GroupRef& g, Element x);
SubgroupHandle normalizer(const GroupRef& g, const SubgroupHandle& h);

struct Coset {
  Element representative;  // minimal member
  std::vector<Element> members;
};

/// Left cosets xH ordered by minimal element.
std::vector<Coset> coset_space(const GroupRef& g, const SubgroupHandle& h);

/// The subgroup as a standalone group; embedding[i] is the parent element
/// behind subgroup index i (index 0 is the identity).
struct SubgroupAsGroup {
  GroupRef group;
  std::vector<Element> embedding;
};

SubgroupAsGroup subgroup_as_group(const SubgroupHandle& h);

// ---------------------------------------------------------------------------
// Built-in families

enum class GroupFamily {
  cyclic,
  dihedral,
  quaternion,
  symmetric,
  binary_tetrahedral,
  binary_octahedral,
  binary_icosahedral,
  direct_product,
};

GroupFamily parse_group_family(std::string_view name);
std::string_view to_string(GroupFamily f) noexcept;

struct GroupSpec {
  GroupFamily family = GroupFamily::cyclic;
  std::vector<std::int64_t> params;
  std::vector<GroupSpec> factors;  // direct_product only
};

/// cyclic N (order N), dihedral N (order 2N), quaternion (8), symmetric n
/// (n!), binary polyhedral (24/48/120) and direct products.
GroupRef builtin_group(const GroupSpec& spec);
GroupRef builtin_group(GroupFamily family, std::vector<std::int64_t> params = {});

/// Component-wise product; element (a,b) has index a*|G2|+b.
GroupRef direct_product(const GroupRef& g1, const GroupRef& g2);

// ---------------------------------------------------------------------------
// Cayley-table text format

std::string emit_cayley_table(const FiniteGroup& g);
GroupRef parse_cayley_table(std::string_view text);

}  // namespace gaugecount

#include "gaugecount/detail/closure.hpp"
