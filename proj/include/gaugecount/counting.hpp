#pragma once

#include "gaugecount/cyclotomic.hpp"
#include "gaugecount/group.hpp"
#include "gaugecount/lattice.hpp"
#include "gaugecount/matter.hpp"
#include "gaugecount/numeric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gaugecount {

struct ClassContribution {
  std::size_t class_id = 0;
  std::size_t class_size = 0;
  std::string representative;
  CycloRat value;
  std::string decimal;  // real part, for display
};

struct CountReport {
  std::string formula;
  BigInt total;
  std::vector<ClassContribution> per_class;
  /// Exact sum of the per-class contributions; every coefficient beyond the
  /// constant term vanishes and the constant term is an integer.
  CycloRat exact_sum;
  std::vector<std::string> warnings;

  bool integrality_witness_holds() const { return exact_sum.is_rational() && is_integer(exact_sum.rational_part()); }
};

struct CountOptions {
  std::size_t threads = 1;
  /// Allows signed totals; used for the parity-weighted sum.
  bool allow_negative = false;
  std::string formula_name = "general";
};

/// Sum over classes C of (|G|/|C|)^(E - V) * prod_x chi_x(C) * vacuum(C),
/// with twisted links contributing alpha(C) per distinct bulk head site.
///
/// Boundary-only sites (see boundary_only_sites) are summed out exactly: each
/// contributes sum_{C'} |C'|/|G| chi_v(C') [phi(C') = C] and is excluded from V.
/// Throws BulkDisconnected, GroupMismatch, NonIntegralResult.
CountReport count_general(const GroupRef& g, const ConjugacyClassTable& classes, const LatticeGraph& l,
                          const std::vector<ClassFunction>& site_chars, const ClassFunction* vacuum,
                          const TwistSpec* twist, const CountOptions& options = {});

CountReport count_pure_gauge(const GroupRef& g, const ConjugacyClassTable& classes, const LatticeGraph& l,
                             const TwistSpec* twist = nullptr, const CountOptions& options = {});

CountReport count_scalar(const GroupRef& g, const ConjugacyClassTable& classes, const LatticeGraph& l,
                         const GroupAction& action, const TwistSpec* twist = nullptr, const CountOptions& options = {});

/// One action per site; length mismatch throws InvalidConfig.
CountReport count_scalar_per_site(const GroupRef& g, const ConjugacyClassTable& classes, const LatticeGraph& l,
                                  const std::vector<GroupAction>& actions, const TwistSpec* twist = nullptr,
                                  const CountOptions& options = {});

/// Static charges: site x carries the representation space of reps[x].
CountReport count_static_charges(const GroupRef& g, const ConjugacyClassTable& classes, const LatticeGraph& l,
                                 const std::vector<UnitaryRep>& reps, const TwistSpec* twist = nullptr,
                                 const CountOptions& options = {});

/// Site character sigma_x(C) prod_f det(1 + sign rho_f(C))^N_s. The staggered
/// vacuum puts prod_f det rho_f(C^-1)^N_s on odd-index sites and needs even V.
CountReport count_fermion(const GroupRef& g, const ConjugacyClassTable& classes, const LatticeGraph& l,
                          const FermionMatter& spec, const TwistSpec* twist = nullptr, const CountOptions& options = {},
                          int sign = 1);

struct ParitySplit {
  BigInt even;  // dim_+
  BigInt odd;   // dim_-
  CountReport plus;
  CountReport minus;  // the (-1)^F weighted sum
};

ParitySplit count_fermion_parity_split(const GroupRef& g, const ConjugacyClassTable& classes, const LatticeGraph& l,
                                       const FermionMatter& spec, const TwistSpec* twist = nullptr,
                                       const CountOptions& options = {});

/// Dispatches on the matter kind.
CountReport count(const GroupRef& g, const ConjugacyClassTable& classes, const LatticeGraph& l, const MatterSpec& matter,
                  const TwistSpec* twist = nullptr, const CountOptions& options = {});

enum class ZnBoundary { untwisted, dangling, c_periodic };

ZnBoundary parse_zn_boundary(std::string_view name);

/// Closed forms for Z_N with static charges q_x (one per site of `l`).
/// dangling needs the twist that marks the boundary-only sites, whose charges must be 0.
BigInt count_zn_charged_closed_form(std::int64_t n, const std::vector<std::int64_t>& charges, ZnBoundary boundary,
                                    const LatticeGraph& l, const TwistSpec* twist = nullptr);

/// |G|^E times the matter factor: |S|^V, prod |S_x|, prod dim rho_x or 2^(N_s V sum_f dim rho_f).
BigInt total_hilbert_dim(const GroupRef& g, const LatticeGraph& l, const MatterSpec& matter);

}  // namespace gaugecount
