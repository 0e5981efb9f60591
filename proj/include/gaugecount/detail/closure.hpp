#pragma once

// Implementation of build_from_generators; included from group.hpp.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace gaugecount {

namespace detail {

template <typename T, typename Eq>
std::int64_t find_element(const std::vector<T>& elems, const T& x, Eq& eq) {
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (eq(elems[i], x)) return static_cast<std::int64_t>(i);
  }
  return -1;
}

}  // namespace detail

template <typename T, typename Mul, typename Eq>
GroupRef build_from_generators(std::span<const T> gens, Mul mul, Eq eq, std::size_t max_order,
                               std::vector<T>* elements_out, std::function<std::string(const T&)> label_fn) {
  max_order = std::min(max_order, kMaxGroupOrder);
  if (gens.empty()) {
    if (elements_out) elements_out->clear();
    return make_group(FiniteGroup(1, {0}, {"e"}, {}));
  }

  // Identity: the first power of gens[0] that fixes gens[0] under multiplication.
  T identity = gens[0];
  {
    T p = gens[0];
    bool found = false;
    for (std::size_t k = 1; k <= max_order + 1; ++k) {
      T next = mul(p, gens[0]);
      if (eq(next, gens[0])) {
        identity = p;
        found = true;
        break;
      }
      p = std::move(next);
    }
    if (!found) fail(ErrorKind::ClosureOverflow, "generator order exceeds " + std::to_string(max_order));
  }

  std::vector<T> elems{identity};
  std::vector<T> gen_elems;
  for (const auto& g : gens) {
    if (eq(g, identity)) continue;
    if (detail::find_element(gen_elems, g, eq) >= 0) continue;
    gen_elems.push_back(g);
  }

  // BFS with right multiplication; parent/gen record a spanning word for each element.
  std::vector<std::size_t> parent{0};
  std::vector<int> gen_of{-1};
  std::vector<std::vector<Element>> right;  // right[e][s] = e * gen_elems[s]
  for (std::size_t head = 0; head < elems.size(); ++head) {
    std::vector<Element> row(gen_elems.size());
    for (std::size_t s = 0; s < gen_elems.size(); ++s) {
      T prod = mul(elems[head], gen_elems[s]);
      std::int64_t idx = detail::find_element(elems, prod, eq);
      if (idx < 0) {
        if (elems.size() >= max_order) {
          fail(ErrorKind::ClosureOverflow, "closure exceeds " + std::to_string(max_order) + " elements");
        }
        idx = static_cast<std::int64_t>(elems.size());
        elems.push_back(std::move(prod));
        parent.push_back(head);
        gen_of.push_back(static_cast<int>(s));
      }
      row[s] = static_cast<Element>(idx);
    }
    right.push_back(std::move(row));
  }

  const std::size_t n = elems.size();
  // a*b = (a * parent(b)) * gen(b); process b in BFS order so parents come first.
  std::vector<Element> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    table[a * n] = static_cast<Element>(a);
    for (std::size_t b = 1; b < n; ++b) {
      const Element ap = table[a * n + parent[b]];
      table[a * n + b] = right[ap][static_cast<std::size_t>(gen_of[b])];
    }
  }

  // Cross-check the derived table against the supplied multiplication.
  auto check_pair = [&](std::size_t a, std::size_t b) {
    if (!eq(mul(elems[a], elems[b]), elems[table[a * n + b]])) {
      fail(ErrorKind::NotAGroup, "multiplication is not associative on the generated set");
    }
  };
  if (n <= 200) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) check_pair(a, b);
    }
  } else {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int t = 0; t < 10000; ++t) check_pair(pick(rng), pick(rng));
  }

  std::vector<std::string> labels(n);
  std::vector<std::string> letters;
  for (std::size_t s = 0; s < gen_elems.size(); ++s) {
    letters.push_back(s < 26 ? std::string(1, static_cast<char>('a' + s)) : "g" + std::to_string(s));
  }
  for (std::size_t e = 0; e < n; ++e) {
    if (label_fn) {
      labels[e] = label_fn(elems[e]);
    } else if (e == 0) {
      labels[e] = "e";
    } else {
      const std::string& p = parent[e] == 0 ? std::string() : labels[parent[e]];
      labels[e] = p + letters[static_cast<std::size_t>(gen_of[e])];
    }
  }

  std::vector<Element> gen_idx;
  for (std::size_t s = 0; s < gen_elems.size(); ++s) gen_idx.push_back(right[0][s]);

  if (elements_out) *elements_out = std::move(elems);
  return make_group(FiniteGroup(n, std::move(table), std::move(labels), std::move(gen_idx)));
}

}  // namespace gaugecount
