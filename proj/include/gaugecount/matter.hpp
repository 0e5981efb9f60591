#pragma once

#include "gaugecount/cyclotomic.hpp"
#include "gaugecount/group.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gaugecount {

// ---------------------------------------------------------------------------
// Class functions

/// One exact value per conjugacy class.
struct ClassFunction {
  GroupRef group;
  std::vector<CycloRat> values;

  const CycloRat& operator[](std::size_t c) const { return values[c]; }
  std::size_t size() const noexcept { return values.size(); }
};

ClassFunction constant_class_function(const GroupRef& g, const ConjugacyClassTable& classes, const CycloRat& v);

// ---------------------------------------------------------------------------
// Group actions (scalar matter)

/// Left action of G on {0, ..., set_size-1}; act(g, s) = table[g*set_size + s].
class GroupAction {
 public:
  GroupAction(GroupRef group, std::size_t set_size, std::vector<std::uint32_t> act_table);

  const GroupRef& group() const noexcept { return group_; }
  std::size_t set_size() const noexcept { return set_size_; }
  std::uint32_t act(Element g, std::uint32_t s) const { return table_[static_cast<std::size_t>(g) * set_size_ + s]; }
  std::span<const std::uint32_t> table() const noexcept { return table_; }

 private:
  GroupRef group_;
  std::size_t set_size_;
  std::vector<std::uint32_t> table_;
};

struct ActionViolation {
  Element g1 = 0;
  Element g2 = 0;
  std::uint32_t point = 0;
  std::string description;
};

/// Exhaustive check of act(1,s) = s and act(g1, act(g2, s)) = act(g1 g2, s).
std::optional<ActionViolation> validate_action(const GroupAction& a);

GroupAction action_left_mult(const GroupRef& g);
GroupAction action_coset(const GroupRef& g, const SubgroupHandle& h);
GroupAction action_product(const GroupAction& a, const GroupAction& b);
GroupAction action_trivial(const GroupRef& g, std::size_t n);
/// Restriction to a subgroup, re-indexed onto subgroup_as_group(h).
GroupAction action_restrict(const GroupAction& a, const SubgroupHandle& h);

struct PrincipalChiral {
  GroupRef product_group;  // G x G, element (gL, gR) at index gL*|G| + gR
  GroupAction action;      // (gL, gR) . g = gL g gR^-1
  std::size_t kernel_size;
};

PrincipalChiral action_principal_chiral(const GroupRef& g);

/// |Fix(rep_c)| per class. Every member is checked for |G| <= 48, three
/// sampled members otherwise; disagreement throws ClassInconsistency.
ClassFunction fixed_point_character(const GroupAction& a, const ConjugacyClassTable& classes);

std::size_t count_orbits(const GroupAction& a);

std::string emit_action(const GroupAction& a);
/// `action |G| |S|` header then |G| rows of |S| indices; validated on load.
GroupAction parse_action(const GroupRef& g, std::string_view text);

// ---------------------------------------------------------------------------
// Unitary representations (fermionic matter)

/// Matrices for every group element, numeric always and exact when the
/// representation was built from cyclotomic entries.
class UnitaryRep {
 public:
  /// Validates homomorphism on generators and unitarity exactly.
  static UnitaryRep from_exact(GroupRef group, std::vector<ExactMatrix> matrices);
  /// Validates homomorphism and unitarity entrywise to 1e-9.
  static UnitaryRep from_numeric(GroupRef group, std::vector<Eigen::MatrixXcd> matrices);

  const GroupRef& group() const noexcept { return group_; }
  std::size_t dim() const noexcept { return dim_; }
  bool is_exact() const noexcept { return !exact_.empty(); }
  const Eigen::MatrixXcd& numeric(Element g) const { return numeric_[g]; }
  /// Throws InvalidRepresentation for numeric-only representations.
  const ExactMatrix& exact(Element g) const;

 private:
  UnitaryRep() = default;

  GroupRef group_;
  std::size_t dim_ = 0;
  std::vector<Eigen::MatrixXcd> numeric_;
  std::vector<ExactMatrix> exact_;
};

/// Extends generator images (one per g.generators() entry) along the word tree.
UnitaryRep rep_from_generators(const GroupRef& g, const std::vector<ExactMatrix>& gen_images);

UnitaryRep rep_trivial(const GroupRef& g, std::size_t dim = 1);
/// Permutation matrices of an action; the regular representation for action_left_mult.
UnitaryRep rep_permutation(const GroupAction& a);
UnitaryRep rep_direct_sum(const UnitaryRep& a, const UnitaryRep& b);
UnitaryRep rep_restrict(const UnitaryRep& r, const SubgroupHandle& h);

/// Family representations of builtin groups: trivial, charge (cyclic),
/// fundamental (cyclic, dihedral, quaternionic, S3), sign and permutation
/// (symmetric), regular (any).
UnitaryRep builtin_rep(const GroupRef& g, const GroupSpec& spec, std::string_view name, std::int64_t param = 1);

std::string emit_rep(const UnitaryRep& r);
/// `rep |G| dim` header then, per element, dim rows of dim `re im` pairs.
UnitaryRep parse_rep(const GroupRef& g, std::string_view text);

/// Eigenvalues of rho(g) as exponents of zeta_k, k = order(g).
struct SnappedSpectrum {
  std::uint32_t order = 1;
  std::vector<std::uint32_t> exponents;
};

inline constexpr double kSnapTolerance = 1e-6;

/// Throws SnapFailure when an eigenvalue is not within kSnapTolerance of a k-th root of unity.
SnappedSpectrum snapped_eigenvalues(const UnitaryRep& r, Element g);

ClassFunction rep_character(const UnitaryRep& r, const ConjugacyClassTable& classes);
/// det(1 + sign*rho(C)) per class, exact via snapped eigenvalues.
ClassFunction fermion_site_character(const UnitaryRep& r, int sign, const ConjugacyClassTable& classes);
/// det rho(C) per class.
ClassFunction rep_determinant(const UnitaryRep& r, const ConjugacyClassTable& classes);

// ---------------------------------------------------------------------------
// One-dimensional representations

/// g -> zeta_n^exponent(g).
class OneDimRep {
 public:
  /// Extends generator images zeta_n^k_s; throws InvalidRepresentation if not multiplicative.
  OneDimRep(GroupRef group, std::uint32_t n, const std::vector<std::int64_t>& generator_exponents);

  const GroupRef& group() const noexcept { return group_; }
  std::uint32_t root_order() const noexcept { return n_; }
  std::uint32_t exponent(Element g) const { return exps_[g]; }
  CycloRat value(Element g) const { return CycloRat::root_of_unity(n_, exps_[g]); }

 private:
  GroupRef group_;
  std::uint32_t n_;
  std::vector<std::uint32_t> exps_;
};

UnitaryRep to_unitary_rep(const OneDimRep& r);
ClassFunction one_dim_character(const OneDimRep& r, const ConjugacyClassTable& classes);

// ---------------------------------------------------------------------------
// Matter content

struct NoMatter {};

struct ScalarMatter {
  GroupAction action;
};

struct ScalarPerSite {
  std::vector<GroupAction> actions;
};

/// Static charges: the site transforms in rho_x, character tr rho_x.
struct RepPerSite {
  std::vector<UnitaryRep> reps;
};

enum class VacuumKind { trivial, staggered, explicit_rep };

struct FermionMatter {
  std::vector<UnitaryRep> flavours;
  std::uint32_t spinor_count = 1;
  VacuumKind vacuum = VacuumKind::trivial;
  std::optional<OneDimRep> vacuum_rep;  // explicit_rep only
};

using MatterSpec = std::variant<NoMatter, ScalarMatter, ScalarPerSite, RepPerSite, FermionMatter>;

/// Throws GroupMismatch or InvalidConfig when the spec is inconsistent with G.
void validate_matter(const GroupRef& g, const MatterSpec& m);

}  // namespace gaugecount
