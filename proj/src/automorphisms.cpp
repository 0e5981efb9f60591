#include "gaugecount/automorphisms.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gaugecount {

namespace {

void require_automorphism(const GroupEndomorphism& tau) {
  if (!tau.is_automorphism()) fail(ErrorKind::NotAnAutomorphism, "map is not bijective");
}

}  // namespace

bool is_endomorphism(const FiniteGroup& g, std::span<const Element> image) {
  const std::size_t n = g.order();
  if (image.size() != n) return false;
  for (Element x : image) {
    if (x >= n) return false;
  }
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (image[g.mul(a, b)] != g.mul(image[a], image[b])) return false;
    }
  }
  return true;
}

GroupEndomorphism::GroupEndomorphism(GroupRef group, std::vector<Element> image)
    : GroupEndomorphism(std::move(group), std::move(image), Unchecked{}) {
  if (!is_endomorphism(*group_, image_)) fail(ErrorKind::NotAHomomorphism, "map does not respect multiplication");
}

GroupEndomorphism::GroupEndomorphism(GroupRef group, std::vector<Element> image, Unchecked)
    : group_(std::move(group)), image_(std::move(image)) {
  if (image_.size() != group_->order()) fail(ErrorKind::NotAHomomorphism, "image table has the wrong size");
  std::vector<bool> hit(image_.size(), false);
  bijective_ = true;
  for (Element x : image_) {
    if (x >= image_.size()) fail(ErrorKind::NotAHomomorphism, "image index out of range");
    if (hit[x]) bijective_ = false;
    hit[x] = true;
  }
}

GroupEndomorphism identity_endomorphism(const GroupRef& g) {
  std::vector<Element> img(g->order());
  for (Element x = 0; x < g->order(); ++x) img[x] = x;
  return GroupEndomorphism(g, std::move(img));
}

GroupEndomorphism trivial_endomorphism(const GroupRef& g) {
  return GroupEndomorphism(g, std::vector<Element>(g->order(), g->identity()));
}

GroupEndomorphism inversion_endomorphism(const GroupRef& g) {
  if (!g->is_abelian()) fail(ErrorKind::NotAHomomorphism, "inversion is a homomorphism only for abelian groups");
  std::vector<Element> img(g->inv_table().begin(), g->inv_table().end());
  return GroupEndomorphism(g, std::move(img));
}

GroupEndomorphism inner_automorphism(const GroupRef& g, Element h) {
  if (h >= g->order()) fail(ErrorKind::BadParams, "element index out of range");
  std::vector<Element> img(g->order());
  for (Element x = 0; x < g->order(); ++x) img[x] = g->conjugate(h, x);
  return GroupEndomorphism(g, std::move(img));
}

GroupEndomorphism compose(const GroupEndomorphism& a, const GroupEndomorphism& b) {
  require_same_group(a.group(), b.group(), "composed maps");
  std::vector<Element> img(a.group()->order());
  for (Element x = 0; x < img.size(); ++x) img[x] = a(b(x));
  return GroupEndomorphism(a.group(), std::move(img));
}

// ---------------------------------------------------------------------------

struct AutomorphismSearch {
  const GroupRef& group;
  const FiniteGroup& g;
  std::uint64_t budget;
  std::vector<Element> gens;
  WordTree tree;
  std::vector<std::vector<Element>> candidates;
  std::vector<Element> chosen;
  std::vector<Element> phi;
  std::vector<bool> hit;
  AutEnumeration result;

  AutomorphismSearch(const GroupRef& grp, std::uint64_t b)
      : group(grp), g(*grp), budget(b), gens(grp->generators().begin(), grp->generators().end()), tree(word_tree(*grp)) {
    const auto classes = conjugacy_classes(g);
    for (Element s : gens) {
      std::vector<Element> c;
      const auto size = classes.sizes[classes.class_of[s]];
      for (Element x = 0; x < g.order(); ++x) {
        if (g.element_order(x) == g.element_order(s) && classes.sizes[classes.class_of[x]] == size) c.push_back(x);
      }
      candidates.push_back(std::move(c));
    }
    phi.resize(g.order());
    hit.resize(g.order());
  }

  // Extends the generator images along the word tree and checks phi(x s) = phi(x) phi(s).
  bool try_leaf() {
    phi[g.identity()] = g.identity();
    for (std::size_t i = 1; i < tree.bfs_order.size(); ++i) {
      const Element y = tree.bfs_order[i];
      phi[y] = g.mul(phi[tree.parent[y]], chosen[static_cast<std::size_t>(tree.gen_index[y])]);
    }
    std::fill(hit.begin(), hit.end(), false);
    for (Element x = 0; x < g.order(); ++x) {
      if (hit[phi[x]]) return false;
      hit[phi[x]] = true;
    }
    for (Element x = 0; x < g.order(); ++x) {
      for (std::size_t s = 0; s < gens.size(); ++s) {
        if (phi[g.mul(x, gens[s])] != g.mul(phi[x], chosen[s])) return false;
      }
    }
    return true;
  }

  bool descend(std::size_t depth) {
    if (depth == gens.size()) {
      if (try_leaf()) {
        result.automorphisms.push_back(GroupEndomorphism(group, phi, GroupEndomorphism::Unchecked{}));
      }
      return true;
    }
    for (Element c : candidates[depth]) {
      if (++result.nodes > budget) {
        result.complete = false;
        return false;
      }
      chosen[depth] = c;
      if (!descend(depth + 1)) return false;
    }
    return true;
  }

  AutEnumeration run() {
    chosen.resize(gens.size());
    descend(0);
    std::sort(result.automorphisms.begin(), result.automorphisms.end());
    return std::move(result);
  }
};

AutEnumeration enumerate_automorphisms(const GroupRef& g, std::uint64_t budget) {
  return AutomorphismSearch(g, budget).run();
}

bool is_inner(const GroupEndomorphism& tau) {
  require_automorphism(tau);
  const auto& g = *tau.group();
  for (Element h = 0; h < g.order(); ++h) {
    bool match = true;
    for (Element s : g.generators()) {
      if (g.conjugate(h, s) != tau(s)) {
        match = false;
        break;
      }
    }
    if (match) return true;
  }
  return false;
}

bool is_involutory(const GroupEndomorphism& tau) {
  require_automorphism(tau);
  for (Element x = 0; x < tau.group()->order(); ++x) {
    if (tau(tau(x)) != x) return false;
  }
  return true;
}

bool is_class_inverting(const GroupEndomorphism& tau, const ConjugacyClassTable& classes) {
  require_automorphism(tau);
  for (Element x = 0; x < tau.group()->order(); ++x) {
    if (classes.class_of[tau(x)] != classes.inverse_class[classes.class_of[x]]) return false;
  }
  return true;
}

bool is_ambivalent(const ConjugacyClassTable& classes) {
  for (std::size_t c = 0; c < classes.count(); ++c) {
    if (classes.inverse_class[c] != c) return false;
  }
  return true;
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::no: return "no";
    case Verdict::yes: return "yes";
    case Verdict::unknown: return "unknown";
  }
  return "unknown";
}

QuasiAmbivalence is_quasi_ambivalent(const GroupRef& g, std::uint64_t budget) {
  const auto classes = conjugacy_classes(*g);
  if (is_ambivalent(classes)) return {Verdict::yes, identity_endomorphism(g)};
  if (g->is_abelian()) return {Verdict::yes, inversion_endomorphism(g)};
  const auto all = enumerate_automorphisms(g, budget);
  for (const auto& tau : all.automorphisms) {
    if (is_involutory(tau) && is_class_inverting(tau, classes)) return {Verdict::yes, tau};
  }
  return {all.complete ? Verdict::no : Verdict::unknown, std::nullopt};
}

AutReport automorphism_report(const GroupRef& g, std::uint64_t budget) {
  const auto classes = conjugacy_classes(*g);
  AutReport r;
  r.group_order = g->order();
  r.center_order = center(g).order();
  r.class_count = classes.count();
  r.inn_order = r.group_order / r.center_order;
  r.ambivalent = is_ambivalent(classes);

  const auto all = enumerate_automorphisms(g, budget);
  r.enumeration_complete = all.complete;
  r.search_nodes = all.nodes;
  for (const auto& tau : all.automorphisms) {
    if (!is_class_inverting(tau, classes)) continue;
    ++r.class_inverting_count;
    if (is_involutory(tau)) r.charge_conjugation_candidates.push_back(tau);
  }
  if (all.complete) {
    r.aut_order = all.automorphisms.size();
    r.out_order = *r.aut_order / r.inn_order;
  }

  if (r.ambivalent) {
    r.quasi_ambivalent = {Verdict::yes, identity_endomorphism(g)};
  } else if (g->is_abelian()) {
    r.quasi_ambivalent = {Verdict::yes, inversion_endomorphism(g)};
  } else if (!r.charge_conjugation_candidates.empty()) {
    r.quasi_ambivalent = {Verdict::yes, r.charge_conjugation_candidates.front()};
  } else {
    r.quasi_ambivalent = {all.complete ? Verdict::no : Verdict::unknown, std::nullopt};
  }
  return r;
}

bool hamiltonian_symmetry_check(const GroupEndomorphism& tau, std::span<const Element> gamma, const ClassFunction& h_b,
                                const ConjugacyClassTable& classes) {
  require_automorphism(tau);
  const auto& g = *tau.group();
  std::vector<bool> in_gamma(g.order(), false);
  for (Element x : gamma) {
    if (x >= g.order()) fail(ErrorKind::InvalidGammaSet, "element index out of range");
    in_gamma[x] = true;
  }
  for (Element x : gamma) {
    if (!in_gamma[g.inv(x)]) fail(ErrorKind::InvalidGammaSet, "subset is not closed under inversion");
    for (Element s : g.generators()) {
      if (!in_gamma[g.conjugate(s, x)]) fail(ErrorKind::InvalidGammaSet, "subset is not closed under conjugation");
    }
  }
  if (h_b.size() != classes.count()) fail(ErrorKind::BadParams, "class function size does not match the class table");
  for (Element x = 0; x < g.order(); ++x) {
    if (in_gamma[tau(x)] != in_gamma[x]) return false;
    if (h_b[classes.class_of[tau(x)]] != h_b[classes.class_of[x]]) return false;
  }
  return true;
}

std::string emit_endomorphism(const GroupEndomorphism& phi) {
  std::ostringstream os;
  os << "endo " << phi.group()->order() << "\n";
  for (Element x = 0; x < phi.group()->order(); ++x) os << (x ? " " : "") << phi(x);
  os << "\n";
  return os.str();
}

GroupEndomorphism parse_endomorphism(const GroupRef& g, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string kw;
  long long n = 0;
  if (!(in >> kw >> n) || kw != "endo") fail(ErrorKind::ParseError, "expected 'endo |G|' header");
  if (n != static_cast<long long>(g->order())) fail(ErrorKind::GroupMismatch, "endomorphism file is for a group of order " + std::to_string(n));
  std::vector<Element> img(g->order());
  for (auto& v : img) {
    long long x = -1;
    if (!(in >> x) || x < 0 || x >= n) fail(ErrorKind::ParseError, "bad or missing image index");
    v = static_cast<Element>(x);
  }
  std::string extra;
  if (in >> extra) fail(ErrorKind::ParseError, "trailing content after image table");
  return GroupEndomorphism(g, std::move(img));
}

}  // namespace gaugecount
