#pragma once

#include "gaugecount/group.hpp"
#include "gaugecount/matter.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gaugecount {

/// Multiplicativity check over every pair.
bool is_endomorphism(const FiniteGroup& g, std::span<const Element> image);

/// A group homomorphism G -> G given by its image table.
class GroupEndomorphism {
 public:
  /// Throws NotAHomomorphism unless `image` respects multiplication.
  GroupEndomorphism(GroupRef group, std::vector<Element> image);

  const GroupRef& group() const noexcept { return group_; }
  Element operator()(Element g) const { return image_[g]; }
  std::span<const Element> image() const noexcept { return image_; }
  bool is_automorphism() const noexcept { return bijective_; }

  friend bool operator==(const GroupEndomorphism& a, const GroupEndomorphism& b) { return a.image_ == b.image_; }
  friend bool operator<(const GroupEndomorphism& a, const GroupEndomorphism& b) { return a.image_ < b.image_; }

 private:
  struct Unchecked {};
  GroupEndomorphism(GroupRef group, std::vector<Element> image, Unchecked);

  GroupRef group_;
  std::vector<Element> image_;
  bool bijective_ = false;

  friend struct AutomorphismSearch;
};

GroupEndomorphism identity_endomorphism(const GroupRef& g);
/// g -> 1 for every g.
GroupEndomorphism trivial_endomorphism(const GroupRef& g);
/// g -> g^-1; throws NotAHomomorphism for non-abelian groups.
GroupEndomorphism inversion_endomorphism(const GroupRef& g);
/// g -> h g h^-1
GroupEndomorphism inner_automorphism(const GroupRef& g, Element h);
/// (a after b)(g) = a(b(g))
GroupEndomorphism compose(const GroupEndomorphism& a, const GroupEndomorphism& b);

inline constexpr std::uint64_t kDefaultAutBudget = 10'000'000;

struct AutEnumeration {
  std::vector<GroupEndomorphism> automorphisms;  // sorted by image table
  bool complete = true;
  std::uint64_t nodes = 0;
};

/// Backtracking over generator images restricted to elements of equal order
/// and class size. Stops and flags the result incomplete past `budget` nodes.
AutEnumeration enumerate_automorphisms(const GroupRef& g, std::uint64_t budget = kDefaultAutBudget);

/// The predicates below throw NotAnAutomorphism for non-bijective maps.
bool is_inner(const GroupEndomorphism& tau);
bool is_involutory(const GroupEndomorphism& tau);
bool is_class_inverting(const GroupEndomorphism& tau, const ConjugacyClassTable& classes);

bool is_ambivalent(const ConjugacyClassTable& classes);

enum class Verdict { no, yes, unknown };

std::string_view to_string(Verdict v) noexcept;

struct QuasiAmbivalence {
  Verdict verdict = Verdict::unknown;
  std::optional<GroupEndomorphism> witness;
};

/// Prefers the identity (ambivalent groups) or inversion (abelian groups) as
/// witnesses before falling back to a full search; `unknown` when the search
/// is truncated without a witness.
QuasiAmbivalence is_quasi_ambivalent(const GroupRef& g, std::uint64_t budget = kDefaultAutBudget);

struct AutReport {
  std::size_t group_order = 0;
  std::size_t center_order = 0;
  std::size_t class_count = 0;
  std::optional<std::size_t> aut_order;  // empty when enumeration was truncated
  std::size_t inn_order = 0;
  std::optional<std::size_t> out_order;
  bool ambivalent = false;
  QuasiAmbivalence quasi_ambivalent;
  std::size_t class_inverting_count = 0;
  /// Involutory class-inverting automorphisms: the charge-conjugation candidates.
  std::vector<GroupEndomorphism> charge_conjugation_candidates;
  bool enumeration_complete = false;
  std::uint64_t search_nodes = 0;
};

AutReport automorphism_report(const GroupRef& g, std::uint64_t budget = kDefaultAutBudget);

/// tau preserves the magnetic subset Gamma and the class function h_B.
/// Throws InvalidGammaSet if Gamma is not closed under inversion and conjugation.
bool hamiltonian_symmetry_check(const GroupEndomorphism& tau, std::span<const Element> gamma, const ClassFunction& h_b,
                                const ConjugacyClassTable& classes);

std::string emit_endomorphism(const GroupEndomorphism& phi);
/// `endo |G|` header then |G| image indices.
GroupEndomorphism parse_endomorphism(const GroupRef& g, std::string_view text);

}  // namespace gaugecount
