#pragma once

#include "gaugecount/cyclotomic.hpp"
#include "gaugecount/group.hpp"
#include "gaugecount/lattice.hpp"
#include "gaugecount/matter.hpp"
#include "gaugecount/numeric.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace gaugecount {

// Brute-force counts straight from the definition of the physical subspace:
// (1/|G|^V) sum over all gauge transformations of the trace of its action.
// Nothing here uses conjugacy classes, centralizers or characters.

struct OracleOptions {
  /// Upper bound on |G|^V * (E + V); larger instances throw BudgetExceeded.
  std::uint64_t budget = 10'000'000;
  std::size_t threads = 1;
};

struct OracleResult {
  BigInt total;
  /// False when a numeric-only representation forced floating-point traces;
  /// the total is then the rounded average.
  bool exact = true;
  std::uint64_t transformations = 0;  // |G|^V
};

/// Orbit count of gauge transformations on link configurations times site
/// configurations. `site_actions` holds one action per site, a single action
/// used on every site, or nothing for pure gauge.
OracleResult burnside_count(const GroupRef& g, const LatticeGraph& l, const std::vector<GroupAction>& site_actions,
                            const TwistSpec* twist = nullptr, const OracleOptions& options = {});

/// Static charges: site x carries the representation space of reps[x].
OracleResult rep_trace_count(const GroupRef& g, const LatticeGraph& l, const std::vector<UnitaryRep>& reps,
                             const TwistSpec* twist = nullptr, const OracleOptions& options = {});

inline constexpr std::size_t kMaxFockModes = 6;

/// Action of rho(g) on the fermionic Fock space of dim rho modes: block
/// diagonal over occupation number k, block k being the k-th compound matrix
/// (k x k minors over subsets ordered lexicographically). Requires an exact
/// representation; throws DimTooLarge above kMaxFockModes.
ExactMatrix fock_site_matrix(const UnitaryRep& rho, Element g);
Eigen::MatrixXcd fock_site_matrix_numeric(const UnitaryRep& rho, Element g);

/// Occupation number of each Fock basis state, in fock_site_matrix order.
std::vector<std::uint32_t> fock_occupations(std::size_t modes);

/// Traces the gauge action over the fermionic Fock space built site by site
/// from fock_site_matrix, with the vacuum character of the spec. With
/// `parity_weight` every state is weighted by (-1)^(fermion number); the total
/// may then be negative.
OracleResult fock_trace_count(const GroupRef& g, const LatticeGraph& l, const FermionMatter& spec,
                              const TwistSpec* twist = nullptr, bool parity_weight = false,
                              const OracleOptions& options = {});

// ---------------------------------------------------------------------------
// Transitive and free actions

/// A transitive action is isomorphic to left multiplication on G/H with H the
/// stabilizer of the base point (index 0).
struct CosetIdentification {
  SubgroupHandle stabilizer;
  std::vector<Coset> cosets;
  std::vector<std::size_t> coset_of_point;  // s -> index into cosets
};

/// Throws NotTransitive. The equivariance f(g s) = g f(s) is checked for every g and s.
CosetIdentification transitive_to_coset(const GroupAction& a);

/// A free action is isomorphic to G x (orbit set); point s = g * orbit_reps[i].
struct ProductIdentification {
  std::vector<std::uint32_t> orbit_reps;  // minimal point of each orbit
  std::vector<Element> element_of_point;
  std::vector<std::size_t> orbit_of_point;

  std::size_t orbit_count() const noexcept { return orbit_reps.size(); }
};

/// Throws NotFree. Bijectivity and equivariance are checked exhaustively.
ProductIdentification free_to_product(const GroupAction& a);

}  // namespace gaugecount
