#include "gaugecount/matter.hpp"

#include "gaugecount/detail/quaternion.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <sstream>

namespace gaugecount {

namespace {

std::string fmt_index(std::size_t i) { return std::to_string(i); }

ExactMatrix exact_identity(std::size_t d) {
  ExactMatrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = CycloRat(i == j ? 1 : 0);
  return m;
}

ExactMatrix exact_product(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix r(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      CycloRat acc;
      for (Eigen::Index k = 0; k < a.cols(); ++k) {
        if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
        acc += a(i, k) * b(k, j);
      }
      r(i, j) = acc;
    }
  }
  return r;
}

bool exact_equal(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

// Permutation matrix with M(p[i], i) = 1.
ExactMatrix permutation_matrix(const std::vector<std::uint32_t>& p) {
  const auto d = static_cast<Eigen::Index>(p.size());
  ExactMatrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = CycloRat(0);
  for (Eigen::Index i = 0; i < d; ++i) m(static_cast<Eigen::Index>(p[static_cast<std::size_t>(i)]), i) = CycloRat(1);
  return m;
}

ExactMatrix scalar_matrix(const CycloRat& v) {
  ExactMatrix m(1, 1);
  m(0, 0) = v;
  return m;
}

std::int64_t require_single(const GroupSpec& spec, std::string_view what) {
  if (spec.params.size() != 1) fail(ErrorKind::BadParams, std::string(what) + " needs a single family parameter");
  return spec.params[0];
}

}  // namespace

ClassFunction constant_class_function(const GroupRef& g, const ConjugacyClassTable& classes, const CycloRat& v) {
  return {g, std::vector<CycloRat>(classes.count(), v)};
}

// ---------------------------------------------------------------------------

GroupAction::GroupAction(GroupRef group, std::size_t set_size, std::vector<std::uint32_t> act_table)
    : group_(std::move(group)), set_size_(set_size), table_(std::move(act_table)) {
  if (set_size_ == 0) fail(ErrorKind::BadParams, "action on an empty set");
  if (table_.size() != group_->order() * set_size_) fail(ErrorKind::BadParams, "action table has the wrong size");
  for (auto v : table_) {
    if (v >= set_size_) fail(ErrorKind::BadParams, "action table entry out of range");
  }
}

std::optional<ActionViolation> validate_action(const GroupAction& a) {
  const auto& g = *a.group();
  const auto n_s = static_cast<std::uint32_t>(a.set_size());
  for (std::uint32_t s = 0; s < n_s; ++s) {
    if (a.act(g.identity(), s) != s) {
      return ActionViolation{g.identity(), g.identity(), s, "identity moves point " + fmt_index(s)};
    }
  }
  for (Element g1 = 0; g1 < g.order(); ++g1) {
    for (Element g2 = 0; g2 < g.order(); ++g2) {
      const Element g12 = g.mul(g1, g2);
      for (std::uint32_t s = 0; s < n_s; ++s) {
        if (a.act(g1, a.act(g2, s)) != a.act(g12, s)) {
          return ActionViolation{g1, g2, s,
                                 "act(" + fmt_index(g1) + ", act(" + fmt_index(g2) + ", " + fmt_index(s) +
                                     ")) != act(" + fmt_index(g12) + ", " + fmt_index(s) + ")"};
        }
      }
    }
  }
  return std::nullopt;
}

GroupAction action_left_mult(const GroupRef& g) {
  const std::size_t n = g->order();
  std::vector<std::uint32_t> table(n * n);
  for (Element a = 0; a < n; ++a)
    for (Element s = 0; s < n; ++s) table[a * n + s] = g->mul(a, s);
  return GroupAction(g, n, std::move(table));
}

GroupAction action_coset(const GroupRef& g, const SubgroupHandle& h) {
  const auto cosets = coset_space(g, h);
  std::vector<std::uint32_t> coset_of(g->order());
  for (std::size_t c = 0; c < cosets.size(); ++c)
    for (Element x : cosets[c].members) coset_of[x] = static_cast<std::uint32_t>(c);
  const std::size_t m = cosets.size();
  std::vector<std::uint32_t> table(g->order() * m);
  for (Element a = 0; a < g->order(); ++a)
    for (std::size_t c = 0; c < m; ++c) table[a * m + c] = coset_of[g->mul(a, cosets[c].representative)];
  return GroupAction(g, m, std::move(table));
}

GroupAction action_product(const GroupAction& a, const GroupAction& b) {
  require_same_group(a.group(), b.group(), "product action factors");
  const std::size_t na = a.set_size();
  const std::size_t nb = b.set_size();
  const std::size_t n = a.group()->order();
  std::vector<std::uint32_t> table(n * na * nb);
  for (Element g = 0; g < n; ++g)
    for (std::uint32_t s = 0; s < na; ++s)
      for (std::uint32_t t = 0; t < nb; ++t)
        table[g * na * nb + s * nb + t] = static_cast<std::uint32_t>(a.act(g, s) * nb + b.act(g, t));
  return GroupAction(a.group(), na * nb, std::move(table));
}

GroupAction action_trivial(const GroupRef& g, std::size_t n) {
  if (n == 0) fail(ErrorKind::BadParams, "trivial action needs at least one point");
  std::vector<std::uint32_t> table(g->order() * n);
  for (Element a = 0; a < g->order(); ++a)
    for (std::size_t s = 0; s < n; ++s) table[a * n + s] = static_cast<std::uint32_t>(s);
  return GroupAction(g, n, std::move(table));
}

GroupAction action_restrict(const GroupAction& a, const SubgroupHandle& h) {
  require_same_group(a.group(), h.parent(), "action and subgroup");
  const auto sub = subgroup_as_group(h);
  const std::size_t m = a.set_size();
  std::vector<std::uint32_t> table(sub.embedding.size() * m);
  for (std::size_t i = 0; i < sub.embedding.size(); ++i)
    for (std::uint32_t s = 0; s < m; ++s) table[i * m + s] = a.act(sub.embedding[i], s);
  return GroupAction(sub.group, m, std::move(table));
}

PrincipalChiral action_principal_chiral(const GroupRef& g) {
  const std::size_t n = g->order();
  auto prod = direct_product(g, g);
  std::vector<std::uint32_t> table(n * n * n);
  std::size_t kernel = 0;
  for (Element gl = 0; gl < n; ++gl) {
    for (Element gr = 0; gr < n; ++gr) {
      const std::size_t row = (gl * n + gr) * n;
      bool trivial = true;
      for (Element x = 0; x < n; ++x) {
        table[row + x] = g->mul(g->mul(gl, x), g->inv(gr));
        trivial = trivial && table[row + x] == x;
      }
      kernel += trivial;
    }
  }
  GroupAction action(prod, n, std::move(table));
  return {std::move(prod), std::move(action), kernel};
}

ClassFunction fixed_point_character(const GroupAction& a, const ConjugacyClassTable& classes) {
  const auto& g = *a.group();
  auto fix = [&](Element x) {
    std::size_t count = 0;
    for (std::uint32_t s = 0; s < a.set_size(); ++s) count += a.act(x, s) == s;
    return count;
  };
  ClassFunction out{a.group(), {}};
  out.values.reserve(classes.count());
  for (std::size_t c = 0; c < classes.count(); ++c) {
    const auto& members = classes.members[c];
    const std::size_t value = fix(members.front());
    std::vector<Element> probe;
    if (g.order() <= 48) {
      probe = members;
    } else {
      probe = {members[members.size() / 2], members.back()};
    }
    for (Element x : probe) {
      if (fix(x) != value) {
        fail(ErrorKind::ClassInconsistency, "fixed-point count differs within class " + fmt_index(c) + " (element " +
                                                 g.label(x) + "); the action is not a group action");
      }
    }
    out.values.emplace_back(static_cast<long long>(value));
  }
  return out;
}

std::size_t count_orbits(const GroupAction& a) {
  const auto gens = a.group()->generators();
  std::vector<bool> seen(a.set_size(), false);
  std::size_t orbits = 0;
  for (std::uint32_t s = 0; s < a.set_size(); ++s) {
    if (seen[s]) continue;
    ++orbits;
    std::vector<std::uint32_t> queue{s};
    seen[s] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (Element x : gens) {
        const auto t = a.act(x, queue[head]);
        if (!seen[t]) {
          seen[t] = true;
          queue.push_back(t);
        }
      }
    }
  }
  return orbits;
}

std::string emit_action(const GroupAction& a) {
  std::ostringstream os;
  os << "action " << a.group()->order() << " " << a.set_size() << "\n";
  for (Element g = 0; g < a.group()->order(); ++g) {
    for (std::uint32_t s = 0; s < a.set_size(); ++s) os << (s ? " " : "") << a.act(g, s);
    os << "\n";
  }
  return os.str();
}

GroupAction parse_action(const GroupRef& g, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string kw;
  long long n = 0;
  long long m = 0;
  if (!(in >> kw >> n >> m) || kw != "action") fail(ErrorKind::ParseError, "expected 'action |G| |S|' header");
  if (n != static_cast<long long>(g->order())) fail(ErrorKind::GroupMismatch, "action file is for a group of order " + std::to_string(n));
  if (m <= 0) fail(ErrorKind::ParseError, "set size must be positive");
  std::vector<std::uint32_t> table(static_cast<std::size_t>(n * m));
  for (auto& v : table) {
    long long x = -1;
    if (!(in >> x) || x < 0 || x >= m) fail(ErrorKind::ParseError, "bad or missing action entry");
    v = static_cast<std::uint32_t>(x);
  }
  GroupAction a(g, static_cast<std::size_t>(m), std::move(table));
  if (auto v = validate_action(a)) fail(ErrorKind::InvalidConfig, "invalid action: " + v->description);
  return a;
}

// ---------------------------------------------------------------------------

UnitaryRep UnitaryRep::from_exact(GroupRef group, std::vector<ExactMatrix> matrices) {
  const auto& g = *group;
  if (matrices.size() != g.order()) fail(ErrorKind::InvalidRepresentation, "need one matrix per group element");
  const auto d = matrices[0].rows();
  if (d <= 0) fail(ErrorKind::InvalidRepresentation, "zero-dimensional representation");
  for (const auto& m : matrices) {
    if (m.rows() != d || m.cols() != d) fail(ErrorKind::InvalidRepresentation, "matrices must be square of equal size");
  }
  const ExactMatrix id = exact_identity(static_cast<std::size_t>(d));
  if (!exact_equal(matrices[g.identity()], id)) fail(ErrorKind::InvalidRepresentation, "rho(1) is not the identity");
  // rho(x s) = rho(x) rho(s) on generators implies the full homomorphism property.
  for (Element s : g.generators()) {
    if (!exact_equal(exact_product(matrices[s], exact_adjoint(matrices[s])), id)) {
      fail(ErrorKind::InvalidRepresentation, "rho(" + g.label(s) + ") is not unitary");
    }
    for (Element x = 0; x < g.order(); ++x) {
      if (!exact_equal(exact_product(matrices[x], matrices[s]), matrices[g.mul(x, s)])) {
        fail(ErrorKind::InvalidRepresentation, "rho(" + g.label(x) + ") rho(" + g.label(s) + ") != rho(" +
                                                   g.label(g.mul(x, s)) + ")");
      }
    }
  }
  UnitaryRep r;
  r.group_ = std::move(group);
  r.dim_ = static_cast<std::size_t>(d);
  r.numeric_.reserve(matrices.size());
  for (const auto& m : matrices) r.numeric_.push_back(to_complex_matrix(m));
  r.exact_ = std::move(matrices);
  return r;
}

UnitaryRep UnitaryRep::from_numeric(GroupRef group, std::vector<Eigen::MatrixXcd> matrices) {
  constexpr double kTol = 1e-9;
  const auto& g = *group;
  if (matrices.size() != g.order()) fail(ErrorKind::InvalidRepresentation, "need one matrix per group element");
  const auto d = matrices[0].rows();
  if (d <= 0) fail(ErrorKind::InvalidRepresentation, "zero-dimensional representation");
  for (const auto& m : matrices) {
    if (m.rows() != d || m.cols() != d) fail(ErrorKind::InvalidRepresentation, "matrices must be square of equal size");
  }
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  auto max_err = [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).cwiseAbs().maxCoeff(); };
  if (max_err(matrices[g.identity()], id) > kTol) fail(ErrorKind::InvalidRepresentation, "rho(1) is not the identity");
  for (Element x = 0; x < g.order(); ++x) {
    if (max_err(matrices[x] * matrices[x].adjoint(), id) > kTol) {
      fail(ErrorKind::InvalidRepresentation, "rho(" + g.label(x) + ") is not unitary within 1e-9");
    }
    for (Element s : g.generators()) {
      if (max_err(matrices[x] * matrices[s], matrices[g.mul(x, s)]) > kTol) {
        fail(ErrorKind::InvalidRepresentation, "rho(" + g.label(x) + ") rho(" + g.label(s) + ") != rho(" +
                                                   g.label(g.mul(x, s)) + ") within 1e-9");
      }
    }
  }
  UnitaryRep r;
  r.group_ = std::move(group);
  r.dim_ = static_cast<std::size_t>(d);
  r.numeric_ = std::move(matrices);
  return r;
}

const ExactMatrix& UnitaryRep::exact(Element g) const {
  if (exact_.empty()) fail(ErrorKind::InvalidRepresentation, "representation has no exact matrices");
  return exact_[g];
}

UnitaryRep rep_from_generators(const GroupRef& g, const std::vector<ExactMatrix>& gen_images) {
  if (gen_images.size() != g->generators().size()) {
    fail(ErrorKind::InvalidRepresentation, "expected " + fmt_index(g->generators().size()) + " generator images");
  }
  const auto d = gen_images.empty() ? Eigen::Index{1} : gen_images[0].rows();
  const auto tree = word_tree(*g);
  std::vector<ExactMatrix> mats(g->order());
  mats[g->identity()] = exact_identity(static_cast<std::size_t>(d));
  for (std::size_t i = 1; i < tree.bfs_order.size(); ++i) {
    const Element y = tree.bfs_order[i];
    mats[y] = exact_product(mats[tree.parent[y]], gen_images[static_cast<std::size_t>(tree.gen_index[y])]);
  }
  return UnitaryRep::from_exact(g, std::move(mats));
}

UnitaryRep rep_trivial(const GroupRef& g, std::size_t dim) {
  if (dim == 0) fail(ErrorKind::BadParams, "representation dimension must be positive");
  return UnitaryRep::from_exact(g, std::vector<ExactMatrix>(g->order(), exact_identity(dim)));
}

UnitaryRep rep_permutation(const GroupAction& a) {
  std::vector<ExactMatrix> mats;
  mats.reserve(a.group()->order());
  std::vector<std::uint32_t> p(a.set_size());
  for (Element g = 0; g < a.group()->order(); ++g) {
    for (std::uint32_t s = 0; s < a.set_size(); ++s) p[s] = a.act(g, s);
    mats.push_back(permutation_matrix(p));
  }
  return UnitaryRep::from_exact(a.group(), std::move(mats));
}

UnitaryRep rep_direct_sum(const UnitaryRep& a, const UnitaryRep& b) {
  require_same_group(a.group(), b.group(), "direct-sum summands");
  const auto da = static_cast<Eigen::Index>(a.dim());
  const auto db = static_cast<Eigen::Index>(b.dim());
  const std::size_t n = a.group()->order();
  if (a.is_exact() && b.is_exact()) {
    std::vector<ExactMatrix> mats(n);
    for (Element g = 0; g < n; ++g) {
      ExactMatrix m(da + db, da + db);
      for (Eigen::Index i = 0; i < da + db; ++i)
        for (Eigen::Index j = 0; j < da + db; ++j) m(i, j) = CycloRat(0);
      m.topLeftCorner(da, da) = a.exact(g);
      m.bottomRightCorner(db, db) = b.exact(g);
      mats[g] = std::move(m);
    }
    return UnitaryRep::from_exact(a.group(), std::move(mats));
  }
  std::vector<Eigen::MatrixXcd> mats(n);
  for (Element g = 0; g < n; ++g) {
    mats[g] = Eigen::MatrixXcd::Zero(da + db, da + db);
    mats[g].topLeftCorner(da, da) = a.numeric(g);
    mats[g].bottomRightCorner(db, db) = b.numeric(g);
  }
  return UnitaryRep::from_numeric(a.group(), std::move(mats));
}

UnitaryRep rep_restrict(const UnitaryRep& r, const SubgroupHandle& h) {
  require_same_group(r.group(), h.parent(), "representation and subgroup");
  const auto sub = subgroup_as_group(h);
  if (r.is_exact()) {
    std::vector<ExactMatrix> mats;
    for (Element x : sub.embedding) mats.push_back(r.exact(x));
    return UnitaryRep::from_exact(sub.group, std::move(mats));
  }
  std::vector<Eigen::MatrixXcd> mats;
  for (Element x : sub.embedding) mats.push_back(r.numeric(x));
  return UnitaryRep::from_numeric(sub.group, std::move(mats));
}

UnitaryRep builtin_rep(const GroupRef& g, const GroupSpec& spec, std::string_view name, std::int64_t param) {
  if (name == "trivial") {
    if (param < 1) fail(ErrorKind::BadParams, "trivial representation dimension must be >= 1");
    return rep_trivial(g, static_cast<std::size_t>(param));
  }
  if (name == "regular") return rep_permutation(action_left_mult(g));

  const std::string fam(to_string(spec.family));
  if (name == "charge" || (name == "fundamental" && spec.family == GroupFamily::cyclic)) {
    if (spec.family != GroupFamily::cyclic) fail(ErrorKind::BadParams, "charge representations need a cyclic group");
    const auto n = static_cast<std::uint32_t>(require_single(spec, "cyclic"));
    const std::int64_t q = name == "charge" ? param : 1;
    std::vector<ExactMatrix> mats;
    for (Element k = 0; k < g->order(); ++k) mats.push_back(scalar_matrix(CycloRat::root_of_unity(n, q * k)));
    return UnitaryRep::from_exact(g, std::move(mats));
  }
  if (name == "fundamental") {
    switch (spec.family) {
      case GroupFamily::dihedral: {
        const auto n = static_cast<std::uint32_t>(require_single(spec, "dihedral"));
        std::vector<ExactMatrix> mats;
        for (Element x = 0; x < g->order(); ++x) {
          const std::uint32_t m = x / n;
          const std::int64_t k = x % n;
          const CycloRat z = CycloRat::root_of_unity(n, k);
          const CycloRat zi = CycloRat::root_of_unity(n, -k);
          ExactMatrix mat(2, 2);
          if (m == 0) {
            mat << z, CycloRat(0), CycloRat(0), zi;
          } else {
            mat << CycloRat(0), zi, z, CycloRat(0);  // S R^k
          }
          mats.push_back(std::move(mat));
        }
        return UnitaryRep::from_exact(g, std::move(mats));
      }
      case GroupFamily::quaternion:
      case GroupFamily::binary_tetrahedral:
      case GroupFamily::binary_octahedral:
      case GroupFamily::binary_icosahedral: {
        const auto& elems = detail::quaternion_elements(spec.family);
        std::vector<ExactMatrix> mats;
        for (const auto& q : elems) mats.push_back(detail::su2_matrix(q));
        return UnitaryRep::from_exact(g, std::move(mats));
      }
      case GroupFamily::symmetric: {
        if (require_single(spec, "symmetric") != 3) {
          fail(ErrorKind::BadParams, "fundamental representation of symmetric n is only provided for n = 3");
        }
        // (0 1) -> swap, (0 1 2) -> diag(w, w^2)
        const CycloRat w = CycloRat::root_of_unity(3, 1);
        ExactMatrix t(2, 2);
        t << CycloRat(0), CycloRat(1), CycloRat(1), CycloRat(0);
        ExactMatrix c(2, 2);
        c << w, CycloRat(0), CycloRat(0), w * w;
        return rep_from_generators(g, {t, c});
      }
      default:
        fail(ErrorKind::BadParams, "no fundamental representation for family " + fam);
    }
  }
  if (name == "sign" || name == "permutation") {
    if (spec.family != GroupFamily::symmetric) fail(ErrorKind::BadParams, std::string(name) + " needs a symmetric group");
    const auto n = static_cast<std::uint32_t>(require_single(spec, "symmetric"));
    if (n < 2) return rep_trivial(g, name == "sign" ? 1 : n);
    std::vector<ExactMatrix> gens;
    if (name == "sign") {
      gens.push_back(scalar_matrix(CycloRat(-1)));
      if (n >= 3) gens.push_back(scalar_matrix(CycloRat(n % 2 == 1 ? 1 : -1)));
    } else {
      std::vector<std::uint32_t> t(n);
      std::iota(t.begin(), t.end(), 0U);
      std::swap(t[0], t[1]);
      gens.push_back(permutation_matrix(t));
      if (n >= 3) {
        std::vector<std::uint32_t> cyc(n);
        for (std::uint32_t i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
        gens.push_back(permutation_matrix(cyc));
      }
    }
    return rep_from_generators(g, gens);
  }
  fail(ErrorKind::BadParams, "unknown representation '" + std::string(name) + "'");
}

std::string emit_rep(const UnitaryRep& r) {
  std::ostringstream os;
  os << "rep " << r.group()->order() << " " << r.dim() << "\n";
  char buf[64];
  for (Element g = 0; g < r.group()->order(); ++g) {
    const auto& m = r.numeric(g);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        std::snprintf(buf, sizeof buf, "%s%.17g %.17g", j ? "  " : "", m(i, j).real(), m(i, j).imag());
        os << buf;
      }
      os << "\n";
    }
  }
  return os.str();
}

UnitaryRep parse_rep(const GroupRef& g, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string kw;
  long long n = 0;
  long long d = 0;
  if (!(in >> kw >> n >> d) || kw != "rep") fail(ErrorKind::ParseError, "expected 'rep |G| dim' header");
  if (n != static_cast<long long>(g->order())) fail(ErrorKind::GroupMismatch, "rep file is for a group of order " + std::to_string(n));
  if (d <= 0 || d > 64) fail(ErrorKind::ParseError, "representation dimension out of range");
  std::vector<Eigen::MatrixXcd> mats(g->order(), Eigen::MatrixXcd(d, d));
  for (auto& m : mats) {
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        double re = 0;
        double im = 0;
        if (!(in >> re >> im)) fail(ErrorKind::ParseError, "missing matrix entry");
        m(i, j) = {re, im};
      }
    }
  }
  return UnitaryRep::from_numeric(g, std::move(mats));
}

SnappedSpectrum snapped_eigenvalues(const UnitaryRep& r, Element g) {
  SnappedSpectrum out;
  out.order = r.group()->element_order(g);
  const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(r.numeric(g), false);
  if (solver.info() != Eigen::Success) fail(ErrorKind::SnapFailure, "eigenvalue solver did not converge");
  const double k = out.order;
  const double two_pi = 2.0 * std::numbers::pi;
  for (const auto& lambda : solver.eigenvalues()) {
    const double turns = std::arg(lambda) / two_pi * k;
    const auto j = static_cast<std::int64_t>(std::llround(turns));
    const auto e = static_cast<std::uint32_t>(((j % out.order) + out.order) % out.order);
    const std::complex<double> root = std::polar(1.0, two_pi * e / k);
    if (std::abs(lambda - root) > kSnapTolerance) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "eigenvalue (%.12g, %.12g) of rho(%s) is not a %u-th root of unity", lambda.real(),
                    lambda.imag(), r.group()->label(g).c_str(), out.order);
      fail(ErrorKind::SnapFailure, buf);
    }
    out.exponents.push_back(e);
  }
  return out;
}

ClassFunction rep_character(const UnitaryRep& r, const ConjugacyClassTable& classes) {
  ClassFunction out{r.group(), {}};
  for (Element rep : classes.reps) {
    CycloRat tr;
    if (r.is_exact()) {
      const auto& m = r.exact(rep);
      for (Eigen::Index i = 0; i < m.rows(); ++i) tr += m(i, i);
    } else {
      const auto spec = snapped_eigenvalues(r, rep);
      for (auto e : spec.exponents) tr += CycloRat::root_of_unity(spec.order, e);
    }
    out.values.push_back(std::move(tr));
  }
  return out;
}

ClassFunction fermion_site_character(const UnitaryRep& r, int sign, const ConjugacyClassTable& classes) {
  if (sign != 1 && sign != -1) fail(ErrorKind::BadParams, "sign must be +1 or -1");
  ClassFunction out{r.group(), {}};
  for (Element rep : classes.reps) {
    const auto spec = snapped_eigenvalues(r, rep);
    CycloRat det(1);
    for (auto e : spec.exponents) det *= CycloRat(1) + CycloRat::root_of_unity(spec.order, e) * BigRational(sign);
    out.values.push_back(std::move(det));
  }
  return out;
}

ClassFunction rep_determinant(const UnitaryRep& r, const ConjugacyClassTable& classes) {
  ClassFunction out{r.group(), {}};
  for (Element rep : classes.reps) {
    const auto spec = snapped_eigenvalues(r, rep);
    std::uint64_t total = 0;
    for (auto e : spec.exponents) total += e;
    out.values.push_back(CycloRat::root_of_unity(spec.order, static_cast<std::int64_t>(total % spec.order)));
  }
  return out;
}

// ---------------------------------------------------------------------------

OneDimRep::OneDimRep(GroupRef group, std::uint32_t n, const std::vector<std::int64_t>& generator_exponents)
    : group_(std::move(group)), n_(n) {
  if (n_ == 0) fail(ErrorKind::InvalidRepresentation, "root order must be positive");
  const auto gens = group_->generators();
  if (generator_exponents.size() != gens.size()) {
    fail(ErrorKind::InvalidRepresentation, "expected " + fmt_index(gens.size()) + " generator exponents");
  }
  const auto nn = static_cast<std::int64_t>(n_);
  std::vector<std::uint32_t> k(gens.size());
  for (std::size_t s = 0; s < gens.size(); ++s) {
    k[s] = static_cast<std::uint32_t>(((generator_exponents[s] % nn) + nn) % nn);
  }
  const auto tree = word_tree(*group_);
  exps_.assign(group_->order(), 0);
  for (std::size_t i = 1; i < tree.bfs_order.size(); ++i) {
    const Element y = tree.bfs_order[i];
    exps_[y] = (exps_[tree.parent[y]] + k[static_cast<std::size_t>(tree.gen_index[y])]) % n_;
  }
  for (Element x = 0; x < group_->order(); ++x) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      if (exps_[group_->mul(x, gens[s])] != (exps_[x] + k[s]) % n_) {
        fail(ErrorKind::InvalidRepresentation, "generator images do not define a one-dimensional representation");
      }
    }
  }
}

UnitaryRep to_unitary_rep(const OneDimRep& r) {
  std::vector<ExactMatrix> mats;
  for (Element g = 0; g < r.group()->order(); ++g) mats.push_back(scalar_matrix(r.value(g)));
  return UnitaryRep::from_exact(r.group(), std::move(mats));
}

ClassFunction one_dim_character(const OneDimRep& r, const ConjugacyClassTable& classes) {
  ClassFunction out{r.group(), {}};
  for (Element rep : classes.reps) out.values.push_back(r.value(rep));
  return out;
}

void validate_matter(const GroupRef& g, const MatterSpec& m) {
  std::visit(
      [&](const auto& spec) {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, ScalarMatter>) {
          require_same_group(g, spec.action.group(), "gauge group and scalar action");
        } else if constexpr (std::is_same_v<T, ScalarPerSite>) {
          for (const auto& a : spec.actions) require_same_group(g, a.group(), "gauge group and site action");
        } else if constexpr (std::is_same_v<T, RepPerSite>) {
          for (const auto& r : spec.reps) require_same_group(g, r.group(), "gauge group and site representation");
        } else if constexpr (std::is_same_v<T, FermionMatter>) {
          if (spec.flavours.empty()) fail(ErrorKind::InvalidConfig, "fermion matter needs at least one flavour");
          if (spec.spinor_count == 0) fail(ErrorKind::InvalidConfig, "spinor count must be positive");
          for (const auto& r : spec.flavours) require_same_group(g, r.group(), "gauge group and flavour representation");
          if (spec.vacuum == VacuumKind::explicit_rep) {
            if (!spec.vacuum_rep) fail(ErrorKind::InvalidConfig, "explicit vacuum needs a one-dimensional representation");
            require_same_group(g, spec.vacuum_rep->group(), "gauge group and vacuum representation");
          }
        }
      },
      m);
}

}  // namespace gaugecount
