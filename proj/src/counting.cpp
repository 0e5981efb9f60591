#include "gaugecount/counting.hpp"

#include "gaugecount/detail/parallel.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

namespace gaugecount {

namespace {

std::string decimal_of(const CycloRat& v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v.to_complex().real());
  return buf;
}

void check_class_function(const GroupRef& g, const ConjugacyClassTable& classes, const ClassFunction& f,
                          const char* what) {
  require_same_group(g, f.group, what);
  if (f.size() != classes.count()) fail(ErrorKind::BadParams, std::string(what) + " has the wrong number of classes");
}

std::int64_t signed_diff(std::size_t a, std::size_t b) { return static_cast<std::int64_t>(a) - static_cast<std::int64_t>(b); }

}  // namespace

CountReport count_general(const GroupRef& g, const ConjugacyClassTable& classes, const LatticeGraph& l,
                          const std::vector<ClassFunction>& site_chars, const ClassFunction* vacuum,
                          const TwistSpec* twist, const CountOptions& options) {
  const std::size_t n_classes = classes.count();
  if (l.V() == 0) fail(ErrorKind::BadParams, "lattice has no sites");
  if (site_chars.size() != l.V()) {
    fail(ErrorKind::InvalidConfig, "expected " + std::to_string(l.V()) + " site characters, got " + std::to_string(site_chars.size()));
  }
  for (const auto& f : site_chars) check_class_function(g, classes, f, "site character");
  if (vacuum) check_class_function(g, classes, *vacuum, "vacuum character");
  if (twist) require_same_group(g, twist->phi.group(), "gauge group and twist");

  CountReport report;
  const bool twisted = twist && !twist->edges.empty();
  std::vector<bool> boundary(l.V(), false);
  if (twisted) {
    boundary = boundary_only_sites(l, twist);
    if (!is_bulk_connected(l, *twist)) {
      fail(ErrorKind::BulkDisconnected, "lattice is not connected after removing twisted links (is_bulk_connected)");
    }
  } else if (!is_connected(l)) {
    fail(ErrorKind::BulkDisconnected, "lattice is not connected (is_connected)");
  }

  std::size_t v_bulk = 0;
  for (std::size_t x = 0; x < l.V(); ++x) v_bulk += !boundary[x];
  const std::int64_t exponent = signed_diff(l.E(), v_bulk);

  // Twist data: class images, alpha(C), distinct bulk heads.
  std::vector<std::size_t> phi_class(n_classes);
  std::vector<BigRational> alpha(n_classes, BigRational(1));
  std::size_t bulk_heads = 0;
  std::vector<std::size_t> boundary_sites;
  if (twisted) {
    const auto& phi = twist->phi;
    for (std::size_t c = 0; c < n_classes; ++c) {
      phi_class[c] = classes.class_of[phi(classes.reps[c])];
      std::size_t inside = 0;
      for (Element x : classes.members[c]) inside += classes.class_of[phi(x)] == c;
      alpha[c] = BigRational(inside, classes.sizes[c]);
    }
    std::set<std::uint32_t> heads;
    for (auto e : twist->edges) {
      const auto& ed = l.edges[e];
      if (ed.tail == ed.head) {
        report.warnings.push_back("twisted self-loop at site " + std::to_string(ed.head) +
                                  ": head convention applied, boundary set ambiguous");
      }
      if (!boundary[ed.head]) heads.insert(ed.head);
    }
    bulk_heads = heads.size();
    for (std::size_t x = 0; x < l.V(); ++x) {
      if (boundary[x]) boundary_sites.push_back(x);
    }
    if (!boundary_sites.empty()) {
      report.warnings.push_back(std::to_string(boundary_sites.size()) + " boundary-only site(s) summed out exactly");
    }
  }

  const auto order = static_cast<std::int64_t>(g->order());
  std::vector<CycloRat> terms(n_classes);
  detail::parallel_for(n_classes, options.threads, [&](std::size_t c) {
    CycloRat term(rational_pow(BigInt(classes.centralizer_sizes[c]), BigInt(1), exponent));
    // alpha only enters through twisted heads in the bulk.
    if (twisted && bulk_heads > 0) {
      if (alpha[c] == 0) {
        terms[c] = CycloRat(0);
        return;
      }
      if (alpha[c] != 1) term *= rational_pow(numerator(alpha[c]), denominator(alpha[c]), static_cast<std::int64_t>(bulk_heads));
    }
    for (std::size_t x = 0; x < l.V(); ++x) {
      if (boundary[x]) continue;
      term *= site_chars[x][c];
      if (term.is_zero()) break;
    }
    if (vacuum && !term.is_zero()) term *= (*vacuum)[c];
    for (std::size_t v : boundary_sites) {
      if (term.is_zero()) break;
      CycloRat beta;
      for (std::size_t cp = 0; cp < n_classes; ++cp) {
        if (phi_class[cp] != c) continue;
        beta += site_chars[v][cp] * BigRational(static_cast<long long>(classes.sizes[cp]), order);
      }
      term *= beta;
    }
    terms[c] = std::move(term);
  });

  CycloRat sum;
  for (std::size_t c = 0; c < n_classes; ++c) {
    sum += terms[c];
    report.per_class.push_back({c, classes.sizes[c], g->label(classes.reps[c]), terms[c], decimal_of(terms[c])});
  }
  report.exact_sum = sum;
  report.formula = options.formula_name;
  if (twisted) report.formula += twist->phi.is_automorphism() ? "/twisted-automorphism" : "/twisted-homomorphism";
  if (!report.integrality_witness_holds()) {
    fail(ErrorKind::NonIntegralResult, "class sum " + sum.to_string() + " is not an integer");
  }
  report.total = numerator(sum.rational_part());
  if (report.total < 0 && !options.allow_negative) {
    fail(ErrorKind::NonIntegralResult, "class sum " + report.total.str() + " is negative");
  }
  return report;
}

CountReport count_pure_gauge(const GroupRef& g, const ConjugacyClassTable& classes, const LatticeGraph& l,
                             const TwistSpec* twist, const CountOptions& options) {
  auto opts = options;
  opts.formula_name = "pure_gauge";
  const std::vector<ClassFunction> chars(l.V(), constant_class_function(g, classes, CycloRat(1)));
  return count_general(g, classes, l, chars, nullptr, twist, opts);
}

CountReport count_scalar(const GroupRef& g, const ConjugacyClassTable& classes, const LatticeGraph& l,
                         const GroupAction& action, const TwistSpec* twist, const CountOptions& options) {
  require_same_group(g, action.group(), "gauge group and scalar action");
  auto opts = options;
  opts.formula_name = "scalar";
  const std::vector<ClassFunction> chars(l.V(), fixed_point_character(action, classes));
  return count_general(g, classes, l, chars, nullptr, twist, opts);
}

CountReport count_scalar_per_site(const GroupRef& g, const ConjugacyClassTable& classes, const LatticeGraph& l,
                                  const std::vector<GroupAction>& actions, const TwistSpec* twist,
                                  const CountOptions& options) {
  if (actions.size() != l.V()) {
    fail(ErrorKind::InvalidConfig, "expected one action per site (" + std::to_string(l.V()) + "), got " + std::to_string(actions.size()));
  }
  auto opts = options;
  opts.formula_name = "scalar_per_site";
  std::vector<ClassFunction> chars;
  for (const auto& a : actions) {
    require_same_group(g, a.group(), "gauge group and site action");
    chars.push_back(fixed_point_character(a, classes));
  }
  return count_general(g, classes, l, chars, nullptr, twist, opts);
}

CountReport count_static_charges(const GroupRef& g, const ConjugacyClassTable& classes, const LatticeGraph& l,
                                 const std::vector<UnitaryRep>& reps, const TwistSpec* twist, const CountOptions& options) {
  if (reps.size() != l.V()) {
    fail(ErrorKind::InvalidConfig, "expected one representation per site (" + std::to_string(l.V()) + "), got " + std::to_string(reps.size()));
  }
  auto opts = options;
  opts.formula_name = "static_charges";
  std::vector<ClassFunction> chars;
  for (const auto& r : reps) {
    require_same_group(g, r.group(), "gauge group and site representation");
    chars.push_back(rep_character(r, classes));
  }
  return count_general(g, classes, l, chars, nullptr, twist, opts);
}

CountReport count_fermion(const GroupRef& g, const ConjugacyClassTable& classes, const LatticeGraph& l,
                          const FermionMatter& spec, const TwistSpec* twist, const CountOptions& options, int sign) {
  validate_matter(g, spec);
  const std::size_t n_classes = classes.count();
  if (spec.vacuum == VacuumKind::staggered && l.V() % 2 != 0) {
    fail(ErrorKind::OddSitesForStaggered, "staggered vacuum needs an even number of sites, got " + std::to_string(l.V()));
  }

  // Per-site character without vacuum: prod_f det(1 + sign rho_f)^N_s.
  ClassFunction site{g, std::vector<CycloRat>(n_classes, CycloRat(1))};
  ClassFunction det_inverse{g, std::vector<CycloRat>(n_classes, CycloRat(1))};
  for (const auto& rho : spec.flavours) {
    const auto f = fermion_site_character(rho, sign, classes);
    const auto det = rep_determinant(rho, classes);
    for (std::size_t c = 0; c < n_classes; ++c) {
      site.values[c] *= f[c].pow(spec.spinor_count);
      // det rho(C^-1) = conj(det rho(C)) for a unitary rho.
      det_inverse.values[c] *= det[c].conj().pow(spec.spinor_count);
    }
  }

  std::vector<ClassFunction> chars(l.V(), site);
  std::string name = sign > 0 ? "fermion" : "fermion_parity_weighted";
  switch (spec.vacuum) {
    case VacuumKind::trivial:
      break;
    case VacuumKind::staggered: {
      name += "/staggered";
      ClassFunction odd = site;
      for (std::size_t c = 0; c < n_classes; ++c) odd.values[c] *= det_inverse[c];
      for (std::size_t x = 1; x < l.V(); x += 2) chars[x] = odd;
      break;
    }
    case VacuumKind::explicit_rep: {
      name += "/explicit_vacuum";
      const auto sigma = one_dim_character(*spec.vacuum_rep, classes);
      ClassFunction with_vac = site;
      for (std::size_t c = 0; c < n_classes; ++c) with_vac.values[c] *= sigma[c];
      std::fill(chars.begin(), chars.end(), with_vac);
      break;
    }
  }
  auto opts = options;
  opts.formula_name = name;
  if (sign < 0) opts.allow_negative = true;
  return count_general(g, classes, l, chars, nullptr, twist, opts);
}

ParitySplit count_fermion_parity_split(const GroupRef& g, const ConjugacyClassTable& classes, const LatticeGraph& l,
                                       const FermionMatter& spec, const TwistSpec* twist, const CountOptions& options) {
  ParitySplit out{0, 0, count_fermion(g, classes, l, spec, twist, options, 1),
                  count_fermion(g, classes, l, spec, twist, options, -1)};
  const BigInt sum = out.plus.total + out.minus.total;
  const BigInt diff = out.plus.total - out.minus.total;
  if (sum % 2 != 0 || diff % 2 != 0) {
    fail(ErrorKind::NonIntegralResult, "parity sectors (" + sum.str() + ")/2 and (" + diff.str() + ")/2 are not integers");
  }
  out.even = sum / 2;
  out.odd = diff / 2;
  if (out.even < 0 || out.odd < 0) fail(ErrorKind::NonIntegralResult, "negative parity sector dimension");
  return out;
}

CountReport count(const GroupRef& g, const ConjugacyClassTable& classes, const LatticeGraph& l, const MatterSpec& matter,
                  const TwistSpec* twist, const CountOptions& options) {
  validate_matter(g, matter);
  return std::visit(
      [&](const auto& spec) -> CountReport {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, NoMatter>) {
          return count_pure_gauge(g, classes, l, twist, options);
        } else if constexpr (std::is_same_v<T, ScalarMatter>) {
          return count_scalar(g, classes, l, spec.action, twist, options);
        } else if constexpr (std::is_same_v<T, ScalarPerSite>) {
          return count_scalar_per_site(g, classes, l, spec.actions, twist, options);
        } else if constexpr (std::is_same_v<T, RepPerSite>) {
          return count_static_charges(g, classes, l, spec.reps, twist, options);
        } else {
          return count_fermion(g, classes, l, spec, twist, options);
        }
      },
      matter);
}

ZnBoundary parse_zn_boundary(std::string_view name) {
  if (name == "untwisted") return ZnBoundary::untwisted;
  if (name == "dangling") return ZnBoundary::dangling;
  if (name == "c_periodic") return ZnBoundary::c_periodic;
  fail(ErrorKind::InvalidConfig, "unknown boundary kind '" + std::string(name) + "'");
}

BigInt count_zn_charged_closed_form(std::int64_t n, const std::vector<std::int64_t>& charges, ZnBoundary boundary,
                                    const LatticeGraph& l, const TwistSpec* twist) {
  if (n < 1) fail(ErrorKind::BadParams, "N must be >= 1");
  if (charges.size() != l.V()) fail(ErrorKind::BadCharge, "expected one charge per site");
  std::vector<bool> boundary_site(l.V(), false);
  if (boundary == ZnBoundary::dangling) {
    if (!twist) fail(ErrorKind::InvalidConfig, "dangling closed form needs the boundary twist");
    boundary_site = boundary_only_sites(l, twist);
  }
  std::int64_t q = 0;
  std::size_t v = 0;
  for (std::size_t x = 0; x < l.V(); ++x) {
    const std::int64_t qx = ((charges[x] % n) + n) % n;
    if (boundary_site[x]) {
      if (qx != 0) fail(ErrorKind::BadCharge, "boundary site " + std::to_string(x) + " cannot carry charge");
      continue;
    }
    q = (q + qx) % n;
    ++v;
  }
  const std::int64_t e_minus_v = signed_diff(l.E(), v);
  auto power = [&](std::int64_t exp) {
    const BigRational r = rational_pow(BigInt(n), BigInt(1), exp);
    if (!is_integer(r)) fail(ErrorKind::NonIntegralResult, "closed form exponent is negative");
    return BigInt(numerator(r));
  };
  switch (boundary) {
    case ZnBoundary::untwisted:
      return q == 0 ? power(e_minus_v + 1) : BigInt(0);
    case ZnBoundary::dangling:
      return power(e_minus_v);
    case ZnBoundary::c_periodic:
      if (n % 2 == 1) return power(e_minus_v);
      return q % 2 == 0 ? BigInt(2) * power(e_minus_v) : BigInt(0);
  }
  return 0;
}

BigInt total_hilbert_dim(const GroupRef& g, const LatticeGraph& l, const MatterSpec& matter) {
  const BigInt links = ipow(BigInt(g->order()), l.E());
  return std::visit(
      [&](const auto& spec) -> BigInt {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, NoMatter>) {
          return links;
        } else if constexpr (std::is_same_v<T, ScalarMatter>) {
          return links * ipow(BigInt(spec.action.set_size()), l.V());
        } else if constexpr (std::is_same_v<T, ScalarPerSite>) {
          BigInt r = links;
          for (const auto& a : spec.actions) r *= a.set_size();
          return r;
        } else if constexpr (std::is_same_v<T, RepPerSite>) {
          BigInt r = links;
          for (const auto& rho : spec.reps) r *= rho.dim();
          return r;
        } else {
          std::uint64_t modes = 0;
          for (const auto& rho : spec.flavours) modes += rho.dim();
          return links * ipow(BigInt(2), static_cast<std::uint64_t>(spec.spinor_count) * l.V() * modes);
        }
      },
      matter);
}

}  // namespace gaugecount
