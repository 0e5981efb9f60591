#include "gaugecount/oracle.hpp"

#include "gaugecount/detail/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <numeric>

namespace gaugecount {

namespace {

using Complex = std::complex<double>;

// Leibniz expansion; the oracle avoids any eigenvalue or elimination shortcut.
template <typename T, typename Entry>
T leibniz_det(std::size_t k, Entry entry) {
  if (k == 0) return T(1);
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  T total(0);
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) inversions += perm[i] > perm[j];
    }
    T term(1);
    for (std::size_t i = 0; i < k && term != T(0); ++i) term *= entry(i, perm[i]);
    if (inversions % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Subsets of {0..n-1} as bitmasks, ordered by size then lexicographically.
std::vector<std::uint32_t> fock_basis(std::size_t modes) {
  if (modes > kMaxFockModes) {
    fail(ErrorKind::DimTooLarge, "Fock space of " + std::to_string(modes) + " modes exceeds the limit of " +
                                     std::to_string(kMaxFockModes));
  }
  std::vector<std::uint32_t> basis;
  for (std::uint32_t k = 0; k <= modes; ++k) {
    std::vector<std::uint32_t> level;
    for (std::uint32_t mask = 0; mask < (1U << modes); ++mask) {
      if (static_cast<std::uint32_t>(std::popcount(mask)) == k) level.push_back(mask);
    }
    std::sort(level.begin(), level.end(), [](std::uint32_t a, std::uint32_t b) {
      // Lexicographic on the sorted index lists.
      for (std::uint32_t bit = 0; bit < 32; ++bit) {
        const bool ia = a >> bit & 1U;
        const bool ib = b >> bit & 1U;
        if (ia != ib) return ia;
      }
      return false;
    });
    basis.insert(basis.end(), level.begin(), level.end());
  }
  return basis;
}

std::vector<std::size_t> bits_of(std::uint32_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t b = 0; mask >> b; ++b) {
    if (mask >> b & 1U) out.push_back(b);
  }
  return out;
}

template <typename T, typename Matrix>
Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> compound_blocks(const Matrix& m, std::size_t modes) {
  const auto basis = fock_basis(modes);
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> out(n, n);
  out.setConstant(T(0));
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto rows = bits_of(basis[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto cols = bits_of(basis[static_cast<std::size_t>(j)]);
      if (rows.size() != cols.size()) continue;
      out(i, j) = leibniz_det<T>(rows.size(), [&](std::size_t a, std::size_t b) {
        return m(static_cast<Eigen::Index>(rows[a]), static_cast<Eigen::Index>(cols[b]));
      });
    }
  }
  return out;
}

// Per-element weights at every site, either exact or floating point.
struct SiteWeights {
  bool exact = true;
  std::vector<std::vector<CycloRat>> exact_w;  // [site][element]
  std::vector<std::vector<Complex>> numeric_w;
};

std::uint64_t check_budget(const GroupRef& g, const LatticeGraph& l, const OracleOptions& options) {
  const long double work = std::pow(static_cast<long double>(g->order()), static_cast<long double>(l.V())) *
                           static_cast<long double>(l.E() + l.V());
  if (work > static_cast<long double>(options.budget)) {
    fail(ErrorKind::BudgetExceeded, "oracle needs about " + std::to_string(static_cast<double>(work)) +
                                        " steps, budget is " + std::to_string(options.budget));
  }
  std::uint64_t transforms = 1;
  for (std::size_t x = 0; x < l.V(); ++x) transforms *= g->order();
  return transforms;
}

// Link trace table: number of h with a h b^-1 = h.
std::vector<std::uint32_t> link_counts(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<std::uint32_t> out(n * n, 0);
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      const Element binv = g.inv(b);
      std::uint32_t c = 0;
      for (Element h = 0; h < n; ++h) c += g.mul(g.mul(a, h), binv) == h;
      out[a * n + b] = c;
    }
  }
  return out;
}

template <typename W>
W from_big(const BigInt& v) {
  if constexpr (std::is_same_v<W, Complex>) {
    return Complex(static_cast<double>(v), 0.0);
  } else if constexpr (std::is_same_v<W, CycloRat>) {
    return CycloRat(BigRational(v));
  } else {
    return v;
  }
}

template <typename W>
W sum_over_transformations(const GroupRef& gp, const LatticeGraph& l, const TwistSpec* twist,
                           const std::vector<std::vector<W>>& weights, std::size_t threads) {
  const auto& g = *gp;
  const std::size_t n = g.order();
  const std::size_t v = l.V();
  const auto lc = link_counts(g);
  std::vector<Element> phi(n);
  for (Element x = 0; x < n; ++x) phi[x] = x;
  std::vector<bool> twisted(l.E(), false);
  if (twist) {
    for (Element x = 0; x < n; ++x) phi[x] = twist->phi(x);
    for (auto e : twist->edges) twisted[e] = true;
  }
  // |G|^E fits in 62 bits: link products stay in machine integers.
  const bool small = static_cast<double>(l.E()) * std::log2(static_cast<double>(std::max<std::size_t>(n, 2))) < 62.0;

  std::vector<W> partial(n, W(0));
  detail::parallel_for(n, threads, [&](std::size_t first) {
    std::vector<Element> tuple(v, 0);
    tuple[0] = static_cast<Element>(first);
    W acc(0);
    while (true) {
      bool zero = false;
      std::uint64_t links_small = 1;
      BigInt links_big = 1;
      for (std::size_t e = 0; e < l.E() && !zero; ++e) {
        const auto& ed = l.edges[e];
        const Element head = twisted[e] ? phi[tuple[ed.head]] : tuple[ed.head];
        const std::uint32_t c = lc[tuple[ed.tail] * n + head];
        if (c == 0) zero = true;
        if (small) {
          links_small *= c;
        } else {
          links_big *= c;
        }
      }
      if (!zero) {
        W term = small ? W(static_cast<long long>(links_small)) : from_big<W>(links_big);
        for (std::size_t x = 0; x < v; ++x) {
          const W& w = weights[x][tuple[x]];
          if (w == W(0)) {
            zero = true;
            break;
          }
          term *= w;
        }
        if (!zero) acc += term;
      }
      std::size_t k = 1;
      while (k < v && ++tuple[k] == n) tuple[k++] = 0;
      if (k >= v) break;
    }
    partial[first] = std::move(acc);
  });
  W total(0);
  for (auto& p : partial) total += p;
  return total;
}

OracleResult run(const GroupRef& g, const LatticeGraph& l, const SiteWeights& w, const TwistSpec* twist,
                 const OracleOptions& options, bool allow_negative) {
  if (l.V() == 0) fail(ErrorKind::BadParams, "lattice has no sites");
  if (twist) require_same_group(g, twist->phi.group(), "gauge group and twist");
  OracleResult r;
  r.transformations = check_budget(g, l, options);
  const BigInt denom = ipow(BigInt(g->order()), l.V());
  if (w.exact) {
    bool all_integer = true;
    for (const auto& site : w.exact_w) {
      for (const auto& x : site) all_integer = all_integer && x.is_rational() && is_integer(x.rational_part());
    }
    BigRational sum;
    if (all_integer) {
      std::vector<std::vector<BigInt>> ints(w.exact_w.size());
      for (std::size_t s = 0; s < ints.size(); ++s) {
        for (const auto& x : w.exact_w[s]) ints[s].push_back(numerator(x.rational_part()));
      }
      sum = BigRational(sum_over_transformations<BigInt>(g, l, twist, ints, options.threads));
    } else {
      const auto total = sum_over_transformations<CycloRat>(g, l, twist, w.exact_w, options.threads);
      if (!total.is_rational()) fail(ErrorKind::NonIntegralResult, "oracle trace sum is not rational: " + total.to_string());
      sum = total.rational_part();
    }
    const BigRational avg = sum / BigRational(denom);
    if (!is_integer(avg)) fail(ErrorKind::NonIntegralResult, "oracle average " + to_string(avg) + " is not an integer");
    r.total = numerator(avg);
  } else {
    r.exact = false;
    const Complex total = sum_over_transformations<Complex>(g, l, twist, w.numeric_w, options.threads);
    const double avg = total.real() / static_cast<double>(denom);
    const double rounded = std::round(avg);
    if (std::abs(avg - rounded) > 1e-6 * std::max(1.0, std::abs(avg)) || std::abs(total.imag()) > 1e-6 * std::max(1.0, std::abs(total.real()))) {
      fail(ErrorKind::NonIntegralResult, "numeric oracle average " + std::to_string(avg) + " is not an integer");
    }
    r.total = BigInt(static_cast<long long>(rounded));
  }
  if (r.total < 0 && !allow_negative) fail(ErrorKind::NonIntegralResult, "oracle total is negative");
  return r;
}

}  // namespace

OracleResult burnside_count(const GroupRef& g, const LatticeGraph& l, const std::vector<GroupAction>& site_actions,
                            const TwistSpec* twist, const OracleOptions& options) {
  if (!site_actions.empty() && site_actions.size() != 1 && site_actions.size() != l.V()) {
    fail(ErrorKind::InvalidConfig, "expected 0, 1 or V site actions");
  }
  SiteWeights w;
  w.exact_w.assign(l.V(), std::vector<CycloRat>(g->order(), CycloRat(1)));
  std::vector<std::vector<CycloRat>> per_action;
  for (const auto& a : site_actions) {
    require_same_group(g, a.group(), "gauge group and site action");
    std::vector<CycloRat> fix(g->order());
    for (Element x = 0; x < g->order(); ++x) {
      long long c = 0;
      for (std::uint32_t s = 0; s < a.set_size(); ++s) c += a.act(x, s) == s;
      fix[x] = CycloRat(c);
    }
    per_action.push_back(std::move(fix));
  }
  for (std::size_t x = 0; x < l.V() && !per_action.empty(); ++x) {
    w.exact_w[x] = per_action[per_action.size() == 1 ? 0 : x];
  }
  return run(g, l, w, twist, options, false);
}

OracleResult rep_trace_count(const GroupRef& g, const LatticeGraph& l, const std::vector<UnitaryRep>& reps,
                             const TwistSpec* twist, const OracleOptions& options) {
  if (reps.size() != l.V()) fail(ErrorKind::InvalidConfig, "expected one representation per site");
  SiteWeights w;
  w.exact = std::all_of(reps.begin(), reps.end(), [](const UnitaryRep& r) { return r.is_exact(); });
  for (const auto& r : reps) {
    require_same_group(g, r.group(), "gauge group and site representation");
    std::vector<CycloRat> ex;
    std::vector<Complex> nu;
    for (Element x = 0; x < g->order(); ++x) {
      if (w.exact) {
        ex.push_back(r.exact(x).trace());
      } else {
        nu.push_back(r.numeric(x).trace());
      }
    }
    w.exact_w.push_back(std::move(ex));
    w.numeric_w.push_back(std::move(nu));
  }
  return run(g, l, w, twist, options, true);
}

ExactMatrix fock_site_matrix(const UnitaryRep& rho, Element g) {
  return compound_blocks<CycloRat>(rho.exact(g), rho.dim());
}

Eigen::MatrixXcd fock_site_matrix_numeric(const UnitaryRep& rho, Element g) {
  return compound_blocks<Complex>(rho.numeric(g), rho.dim());
}

std::vector<std::uint32_t> fock_occupations(std::size_t modes) {
  auto basis = fock_basis(modes);
  for (auto& m : basis) m = static_cast<std::uint32_t>(std::popcount(m));
  return basis;
}

OracleResult fock_trace_count(const GroupRef& g, const LatticeGraph& l, const FermionMatter& spec,
                              const TwistSpec* twist, bool parity_weight, const OracleOptions& options) {
  validate_matter(g, spec);
  if (spec.vacuum == VacuumKind::staggered && l.V() % 2 != 0) {
    fail(ErrorKind::OddSitesForStaggered, "staggered vacuum needs an even number of sites");
  }
  const std::size_t n = g->order();
  const bool exact = std::all_of(spec.flavours.begin(), spec.flavours.end(), [](const UnitaryRep& r) { return r.is_exact(); });

  // Per element: product over flavours of the (weighted) Fock trace, and of det rho(g^-1).
  std::vector<CycloRat> trace_ex(n, CycloRat(1));
  std::vector<CycloRat> det_inv_ex(n, CycloRat(1));
  std::vector<Complex> trace_nu(n, Complex(1));
  std::vector<Complex> det_inv_nu(n, Complex(1));
  for (const auto& rho : spec.flavours) {
    const auto occ = fock_occupations(rho.dim());
    const std::size_t d = rho.dim();
    for (Element x = 0; x < n; ++x) {
      if (exact) {
        const auto m = fock_site_matrix(rho, x);
        CycloRat tr;
        for (std::size_t i = 0; i < occ.size(); ++i) {
          const auto& diag = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
          if (parity_weight && occ[i] % 2 == 1) {
            tr -= diag;
          } else {
            tr += diag;
          }
        }
        trace_ex[x] *= tr.pow(spec.spinor_count);
        const auto& inv = rho.exact(g->inv(x));
        det_inv_ex[x] *= leibniz_det<CycloRat>(d, [&](std::size_t a, std::size_t b) {
                           return inv(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
                         }).pow(spec.spinor_count);
      } else {
        const auto m = fock_site_matrix_numeric(rho, x);
        Complex tr = 0;
        for (std::size_t i = 0; i < occ.size(); ++i) {
          tr += (parity_weight && occ[i] % 2 == 1 ? -1.0 : 1.0) * m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
        }
        trace_nu[x] *= std::pow(tr, static_cast<double>(spec.spinor_count));
        const auto& inv = rho.numeric(g->inv(x));
        det_inv_nu[x] *= std::pow(leibniz_det<Complex>(d, [&](std::size_t a, std::size_t b) {
                                    return inv(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
                                  }),
                                  static_cast<double>(spec.spinor_count));
      }
    }
  }

  SiteWeights w;
  w.exact = exact;
  for (std::size_t site = 0; site < l.V(); ++site) {
    std::vector<CycloRat> ex(exact ? n : 0);
    std::vector<Complex> nu(exact ? 0 : n);
    for (Element x = 0; x < n; ++x) {
      CycloRat sigma(1);
      if (spec.vacuum == VacuumKind::staggered && site % 2 == 1) sigma = det_inv_ex[x];
      if (spec.vacuum == VacuumKind::explicit_rep) sigma = spec.vacuum_rep->value(x);
      if (exact) {
        ex[x] = trace_ex[x] * sigma;
      } else {
        Complex s = sigma.to_complex();
        if (spec.vacuum == VacuumKind::staggered && site % 2 == 1) s = det_inv_nu[x];
        nu[x] = trace_nu[x] * s;
      }
    }
    w.exact_w.push_back(std::move(ex));
    w.numeric_w.push_back(std::move(nu));
  }
  return run(g, l, w, twist, options, parity_weight);
}

// ---------------------------------------------------------------------------

CosetIdentification transitive_to_coset(const GroupAction& a) {
  const auto& gp = a.group();
  const auto& g = *gp;
  if (a.set_size() == 0) fail(ErrorKind::NotTransitive, "empty set");
  const std::uint32_t base = 0;

  // g_s: minimal element carrying the base point to s.
  std::vector<Element> carrier(a.set_size(), 0);
  std::vector<bool> reached(a.set_size(), false);
  std::vector<bool> stab(g.order(), false);
  for (Element x = 0; x < g.order(); ++x) {
    const auto s = a.act(x, base);
    if (!reached[s]) {
      reached[s] = true;
      carrier[s] = x;
    }
    stab[x] = s == base;
  }
  for (std::uint32_t s = 0; s < a.set_size(); ++s) {
    if (!reached[s]) fail(ErrorKind::NotTransitive, "point " + std::to_string(s) + " is not in the orbit of point 0");
  }

  CosetIdentification out{make_subgroup(gp, stab), {}, {}};
  out.cosets = coset_space(gp, out.stabilizer);
  std::vector<std::size_t> coset_of(g.order());
  for (std::size_t i = 0; i < out.cosets.size(); ++i) {
    for (Element x : out.cosets[i].members) coset_of[x] = i;
  }
  out.coset_of_point.resize(a.set_size());
  std::vector<bool> hit(out.cosets.size(), false);
  for (std::uint32_t s = 0; s < a.set_size(); ++s) {
    const auto c = coset_of[carrier[s]];
    if (hit[c]) fail(ErrorKind::NotTransitive, "coset map is not injective");
    hit[c] = true;
    out.coset_of_point[s] = c;
  }
  if (out.cosets.size() != a.set_size()) fail(ErrorKind::NotTransitive, "coset map is not surjective");
  for (Element x = 0; x < g.order(); ++x) {
    for (std::uint32_t s = 0; s < a.set_size(); ++s) {
      if (out.coset_of_point[a.act(x, s)] != coset_of[g.mul(x, carrier[s])]) {
        fail(ErrorKind::NotTransitive, "coset map is not equivariant");
      }
    }
  }
  return out;
}

ProductIdentification free_to_product(const GroupAction& a) {
  const auto& g = *a.group();
  for (Element x = 0; x < g.order(); ++x) {
    if (x == g.identity()) continue;
    for (std::uint32_t s = 0; s < a.set_size(); ++s) {
      if (a.act(x, s) == s) {
        fail(ErrorKind::NotFree, "element " + g.label(x) + " fixes point " + std::to_string(s));
      }
    }
  }
  ProductIdentification out;
  constexpr auto unset = static_cast<std::size_t>(-1);
  out.orbit_of_point.assign(a.set_size(), unset);
  out.element_of_point.assign(a.set_size(), 0);
  for (std::uint32_t s = 0; s < a.set_size(); ++s) {
    if (out.orbit_of_point[s] != unset) continue;
    const std::size_t orbit = out.orbit_reps.size();
    out.orbit_reps.push_back(s);
    for (Element x = 0; x < g.order(); ++x) {
      const auto t = a.act(x, s);
      if (out.orbit_of_point[t] != unset) fail(ErrorKind::NotFree, "orbit of point " + std::to_string(s) + " is too small");
      out.orbit_of_point[t] = orbit;
      out.element_of_point[t] = x;
    }
  }
  if (out.orbit_count() * g.order() != a.set_size()) fail(ErrorKind::NotFree, "|S| is not |G| times the orbit count");
  for (Element h = 0; h < g.order(); ++h) {
    for (std::uint32_t s = 0; s < a.set_size(); ++s) {
      const auto t = a.act(h, s);
      if (out.orbit_of_point[t] != out.orbit_of_point[s] || out.element_of_point[t] != g.mul(h, out.element_of_point[s])) {
        fail(ErrorKind::NotFree, "product map is not equivariant");
      }
    }
  }
  return out;
}

}  // namespace gaugecount
