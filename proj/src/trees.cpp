#include "shadowlab/trees.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace shadowlab {

// ---------------------------------------------------------------- RootedTree

RootedTree::RootedTree(std::vector<std::vector<std::size_t>> parents) : parents_(std::move(parents)) {
  sizes_.push_back(1);
  for (std::size_t n = 0; n < parents_.size(); ++n) {
    const auto& p = parents_[n];
    std::vector<bool> hit(sizes_.back(), false);
    for (auto v : p) {
      if (v >= sizes_.back()) throw Error(Errc::invalid_argument, "parent index out of range");
      hit[v] = true;
    }
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
      throw Error(Errc::invalid_argument, "projection onto level " + std::to_string(n) + " is not surjective");
    }
    if (p.size() <= sizes_.back()) {
      throw Error(Errc::invalid_argument, "level " + std::to_string(n + 1) + " must be larger than level " + std::to_string(n));
    }
    sizes_.push_back(p.size());
  }
}

RootedTree RootedTree::regular(unsigned k, unsigned depth) {
  if (k < 2) throw Error(Errc::invalid_argument, "regular trees need arity at least 2");
  std::vector<std::vector<std::size_t>> parents;
  std::size_t size = 1;
  for (unsigned n = 0; n < depth; ++n) {
    if (size > enumeration_cap() / k) throw Error(Errc::cap_exceeded, "tree level exceeds the enumeration cap");
    size *= k;
    std::vector<std::size_t> p(size);
    for (std::size_t v = 0; v < size; ++v) p[v] = v / k;
    parents.push_back(std::move(p));
  }
  RootedTree t(std::move(parents));
  t.arity_ = k;
  return t;
}

std::vector<unsigned> RootedTree::word(unsigned n, std::size_t v) const {
  if (!arity_) throw Error(Errc::invalid_argument, "words are defined on regular trees only");
  std::vector<unsigned> w(n);
  for (unsigned i = n; i > 0; --i) {
    w[i - 1] = static_cast<unsigned>(v % *arity_);
    v /= *arity_;
  }
  return w;
}

std::size_t RootedTree::vertex(const std::vector<unsigned>& word) const {
  if (!arity_) throw Error(Errc::invalid_argument, "words are defined on regular trees only");
  if (word.size() > depth()) throw Error(Errc::depth_mismatch, "word is longer than the tree depth");
  std::size_t v = 0;
  for (auto a : word) {
    if (a >= *arity_) throw Error(Errc::invalid_argument, "letter outside the alphabet");
    v = v * *arity_ + a;
  }
  return v;
}

std::size_t RootedTree::ancestor(unsigned n, std::size_t v, unsigned m) const {
  for (unsigned l = n; l > m; --l) v = parent(l, v);
  return v;
}

// ---------------------------------------------------------- TreeEndomorphism

TreeEndomorphism::TreeEndomorphism(std::shared_ptr<const RootedTree> tree, std::vector<PointMap> levels)
    : tree_(std::move(tree)), levels_(std::move(levels)) {
  if (levels_.size() != tree_->depth() + 1u) throw Error(Errc::depth_mismatch, "one level map per level is required");
  for (unsigned n = 0; n < levels_.size(); ++n) {
    if (levels_[n].size() != tree_->level_size(n)) throw Error(Errc::invalid_argument, "level map has the wrong size");
    for (auto v : levels_[n]) {
      if (v >= tree_->level_size(n)) throw Error(Errc::invalid_argument, "level map leaves its level");
    }
  }
}

TreeEndomorphism TreeEndomorphism::identity(std::shared_ptr<const RootedTree> tree) {
  std::vector<PointMap> levels;
  for (unsigned n = 0; n <= tree->depth(); ++n) {
    PointMap m(tree->level_size(n));
    std::iota(m.begin(), m.end(), std::size_t{0});
    levels.push_back(std::move(m));
  }
  return TreeEndomorphism(std::move(tree), std::move(levels));
}

bool TreeEndomorphism::is_automorphism() const {
  for (const auto& m : levels_) {
    std::vector<bool> hit(m.size(), false);
    for (auto v : m) hit[v] = true;
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) return false;
  }
  return true;
}

CompatibilityVerdict verify_compatibility(const TreeEndomorphism& f) {
  const auto& t = f.tree();
  for (unsigned n = 0; n < t.depth(); ++n) {
    for (std::size_t v = 0; v < t.level_size(n + 1); ++v) {
      if (t.parent(n + 1, f.level(n + 1)[v]) != f.level(n)[t.parent(n + 1, v)]) return {false, n};
    }
  }
  return {};
}

TreeEndomorphism compose_endomorphisms(const TreeEndomorphism& f, const TreeEndomorphism& g) {
  if (f.tree_ptr() != g.tree_ptr() && !(f.tree() == g.tree())) {
    throw Error(Errc::tree_mismatch, "endomorphisms act on different trees");
  }
  std::vector<PointMap> levels;
  for (unsigned n = 0; n <= f.depth(); ++n) {
    PointMap m(g.level(n).size());
    for (std::size_t v = 0; v < m.size(); ++v) m[v] = f.level(n)[g.level(n)[v]];
    levels.push_back(std::move(m));
  }
  return TreeEndomorphism(f.tree_ptr(), std::move(levels));
}

// -------------------------------------------------------------- MealyMachine

void MealyMachine::validate() const {
  if (arity < 2) throw Error(Errc::invalid_argument, "Mealy machine arity must be at least 2");
  if (states.empty()) throw Error(Errc::invalid_argument, "Mealy machine needs at least one state");
  if (transition.size() != states.size() || output.size() != states.size()) {
    throw Error(Errc::invalid_argument, "transition and output must be given for every state");
  }
  for (std::size_t q = 0; q < states.size(); ++q) {
    if (transition[q].size() != arity || output[q].size() != arity) {
      throw Error(Errc::invalid_argument, "state " + states[q] + " needs one entry per letter");
    }
    for (auto t : transition[q]) {
      if (t >= states.size()) throw Error(Errc::invalid_argument, "transition of " + states[q] + " leaves the machine");
    }
    for (auto a : output[q]) {
      if (a >= arity) throw Error(Errc::invalid_argument, "output of " + states[q] + " leaves the alphabet");
    }
  }
}

bool MealyMachine::invertible() const {
  for (const auto& out : output) {
    std::vector<bool> hit(arity, false);
    for (auto a : out) hit[a] = true;
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) return false;
  }
  return true;
}

std::size_t MealyMachine::state(const std::string& name) const {
  for (std::size_t q = 0; q < states.size(); ++q) {
    if (states[q] == name) return q;
  }
  throw Error(Errc::invalid_argument, "unknown state '" + name + "'");
}

MealyMachine MealyMachine::grigorchuk() {
  MealyMachine m;
  m.arity = 2;
  m.states = {"a", "b", "c", "d", "id"};
  enum : std::size_t { a, b, c, d, id };
  m.transition = {{id, id}, {a, c}, {a, d}, {id, b}, {id, id}};
  m.output = {{1, 0}, {0, 1}, {0, 1}, {0, 1}, {0, 1}};
  return m;
}

std::vector<TreeEndomorphism> mealy_endomorphisms(const MealyMachine& m, unsigned depth) {
  m.validate();
  auto tree = std::make_shared<const RootedTree>(RootedTree::regular(m.arity, depth));
  const std::size_t nq = m.states.size();
  // maps[q][n] = level-n map of F_q, built level by level from the level below.
  std::vector<std::vector<PointMap>> maps(nq, std::vector<PointMap>{PointMap{0}});
  std::size_t below = 1;  // k^{n-1}
  for (unsigned n = 1; n <= depth; ++n) {
    for (std::size_t q = 0; q < nq; ++q) {
      PointMap level(below * m.arity);
      for (unsigned a1 = 0; a1 < m.arity; ++a1) {
        const auto& rest = maps[m.transition[q][a1]][n - 1];
        for (std::size_t r = 0; r < below; ++r) level[a1 * below + r] = m.output[q][a1] * below + rest[r];
      }
      maps[q].push_back(std::move(level));
    }
    below *= m.arity;
  }
  std::vector<TreeEndomorphism> out;
  for (std::size_t q = 0; q < nq; ++q) out.emplace_back(tree, std::move(maps[q]));
  return out;
}

TreeEndomorphism mealy_endomorphism(const MealyMachine& m, std::size_t q, unsigned depth) {
  if (q >= m.states.size()) throw Error(Errc::invalid_argument, "state index out of range");
  return mealy_endomorphisms(m, depth)[q];
}

TreeEndomorphism mealy_endomorphism(const MealyMachine& m, std::size_t q, std::shared_ptr<const RootedTree> tree) {
  if (tree->arity() != m.arity) throw Error(Errc::tree_mismatch, "machine arity differs from the tree arity");
  auto f = mealy_endomorphism(m, q, tree->depth());
  return TreeEndomorphism(std::move(tree), f.levels());
}

// ---------------------------------------------------------------------- rays

Ray ray_from_leaf(const RootedTree& tree, std::size_t leaf) {
  Ray r;
  r.vertices.resize(tree.depth() + 1u);
  std::size_t v = leaf;
  for (unsigned n = tree.depth(); n > 0; --n) {
    r.vertices[n] = v;
    v = tree.parent(n, v);
  }
  r.vertices[0] = 0;
  return r;
}

Ray apply(const TreeEndomorphism& f, const Ray& xi) {
  if (xi.vertices.size() != f.depth() + 1u) throw Error(Errc::depth_mismatch, "ray depth differs from the tree depth");
  Ray out;
  for (unsigned n = 0; n < xi.vertices.size(); ++n) out.vertices.push_back(f.level(n)[xi.vertices[n]]);
  return out;
}

std::optional<unsigned> boundary_distance(const Ray& xi, const Ray& eta) {
  if (xi.vertices.size() != eta.vertices.size()) throw Error(Errc::depth_mismatch, "rays have different depths");
  for (unsigned n = 0; n < xi.vertices.size(); ++n) {
    if (xi.vertices[n] != eta.vertices[n]) return n;
  }
  return std::nullopt;
}

// ------------------------------------------------------------ level dynamics

namespace {

void require_level(const std::vector<TreeEndomorphism>& gens, unsigned n) {
  if (gens.empty()) throw Error(Errc::invalid_argument, "at least one generator is required");
  for (const auto& g : gens) {
    if (!(g.tree() == gens.front().tree())) throw Error(Errc::tree_mismatch, "generators act on different trees");
  }
  if (n > gens.front().depth()) throw Error(Errc::depth_mismatch, "level exceeds the tree depth");
}

// Tarjan's algorithm on v -> g_n(v).
std::vector<std::size_t> scc_labels(const std::vector<TreeEndomorphism>& gens, unsigned n, std::size_t& count) {
  const std::size_t size = gens.front().tree().level_size(n);
  std::vector<std::size_t> index(size, SIZE_MAX), low(size, 0), comp(size, SIZE_MAX);
  std::vector<std::size_t> stack;
  std::vector<bool> on_stack(size, false);
  std::size_t counter = 0;
  count = 0;
  auto strong = [&](auto&& self, std::size_t v) -> void {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (const auto& g : gens) {
      const auto w = g.level(n)[v];
      if (index[w] == SIZE_MAX) {
        self(self, w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = count;
      } while (w != v);
      ++count;
    }
  };
  for (std::size_t v = 0; v < size; ++v) {
    if (index[v] == SIZE_MAX) strong(strong, v);
  }
  return comp;
}

}  // namespace

OrbitPartition level_orbits(const std::vector<TreeEndomorphism>& gens, unsigned n) {
  require_level(gens, n);
  std::size_t count = 0;
  const auto comp = scc_labels(gens, n, count);
  // Relabel components by their least vertex.
  std::vector<std::size_t> order(count, SIZE_MAX);
  OrbitPartition out;
  out.block_of.resize(comp.size());
  for (std::size_t v = 0; v < comp.size(); ++v) {
    if (order[comp[v]] == SIZE_MAX) {
      order[comp[v]] = out.blocks.size();
      out.blocks.emplace_back();
    }
    out.block_of[v] = order[comp[v]];
    out.blocks[out.block_of[v]].push_back(v);
  }
  return out;
}

std::vector<std::size_t> semigroup_orbit(const std::vector<TreeEndomorphism>& gens, unsigned n, std::size_t v) {
  require_level(gens, n);
  std::vector<bool> seen(gens.front().tree().level_size(n), false);
  std::deque<std::size_t> queue;
  for (const auto& g : gens) {
    const auto w = g.level(n)[v];
    if (!seen[w]) {
      seen[w] = true;
      queue.push_back(w);
    }
  }
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      const auto w = g.level(n)[u];
      if (!seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t u = 0; u < seen.size(); ++u) {
    if (seen[u]) out.push_back(u);
  }
  return out;
}

std::size_t apply_power(const TreeEndomorphism& f, unsigned n, std::uint64_t e, std::size_t v) {
  PointMap base = f.level(n);
  PointMap result(base.size());
  std::iota(result.begin(), result.end(), std::size_t{0});
  while (e > 0) {
    if (e & 1u) {
      for (auto& r : result) r = base[r];
    }
    PointMap sq(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) sq[i] = base[base[i]];
    base = std::move(sq);
    e >>= 1u;
  }
  return result[v];
}

TransitivityWitness semigroup_transitivity_from_group(const std::vector<TreeEndomorphism>& gens, unsigned n,
                                                      std::optional<std::pair<std::size_t, std::size_t>> pair) {
  require_level(gens, n);
  const auto& tree = gens.front().tree();
  const std::size_t size = tree.level_size(n);
  std::vector<PointMap> inverses;
  std::uint64_t order_lcm = 1;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (unsigned l = 0; l <= n; ++l) {
      std::vector<bool> hit(tree.level_size(l), false);
      for (auto v : gens[i].level(l)) hit[v] = true;
      if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
        throw Error(Errc::generator_not_invertible,
                    "generator " + std::to_string(i) + " is not bijective on level " + std::to_string(l));
      }
    }
    const auto& m = gens[i].level(n);
    PointMap inv(size);
    for (std::size_t v = 0; v < size; ++v) inv[m[v]] = v;
    inverses.push_back(std::move(inv));
    // Order of the permutation = lcm of its cycle lengths.
    std::vector<bool> done(size, false);
    for (std::size_t v = 0; v < size; ++v) {
      if (done[v]) continue;
      std::uint64_t len = 0;
      for (std::size_t u = v; !done[u]; u = m[u]) {
        done[u] = true;
        ++len;
      }
      order_lcm = std::lcm(order_lcm, len);
    }
  }
  TransitivityWitness out;
  out.from = pair ? pair->first : 0;
  out.to = pair ? pair->second : size - 1;
  out.n_exponent = order_lcm;
  if (out.from >= size || out.to >= size) throw Error(Errc::invalid_argument, "vertex outside level " + std::to_string(n));

  // Breadth-first search in the group orbit; letters are (generator, ±1).
  struct Step {
    std::size_t prev;
    std::size_t gen;
    bool inverse;
  };
  std::vector<std::optional<Step>> step(size);
  std::vector<bool> seen(size, false);
  std::deque<std::size_t> queue{out.from};
  seen[out.from] = true;
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      for (bool inv : {false, true}) {
        const auto w = inv ? inverses[i][u] : gens[i].level(n)[u];
        if (seen[w]) continue;
        seen[w] = true;
        step[w] = Step{u, i, inv};
        queue.push_back(w);
      }
    }
  }
  const auto blocks = level_orbits(gens, n);
  out.transitive = std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  if (out.transitive != blocks.transitive()) {
    throw Error(Errc::invalid_argument, "group and semigroup orbit computations disagree");
  }
  if (!seen[out.to]) return out;
  // The path from `from` to `to` is applied first-to-last; the word is written
  // left to right as a composition, so the last step comes first.
  const std::uint64_t big = order_lcm;
  for (std::size_t v = out.to; v != out.from; v = step[v]->prev) {
    const auto& st = *step[v];
    std::uint64_t e = st.inverse ? big - 1 : big + 1;
    if (e == 0) e = big;  // σ has order 1 on V_n, so σ^{-1} = σ^N
    out.word.emplace_back(st.gen, e);
  }
  std::size_t v = out.from;
  for (auto it = out.word.rbegin(); it != out.word.rend(); ++it) v = apply_power(gens[it->first], n, it->second, v);
  out.verified = v == out.to;
  return out;
}

// ------------------------------------------------------------------ ρ and End

TreeEndomorphism rho_truncate(const TreeEndomorphism& f, unsigned n0) {
  const auto& t = f.tree();
  if (!t.arity()) throw Error(Errc::invalid_argument, "ρ-truncation is defined on regular trees");
  if (n0 > t.depth()) throw Error(Errc::depth_mismatch, "n0 exceeds the tree depth");
  const unsigned k = *t.arity();
  std::vector<PointMap> levels(f.levels().begin(), f.levels().begin() + n0 + 1);
  const auto& top = f.level(n0);
  std::size_t tail = 1;
  for (unsigned n = n0 + 1; n <= t.depth(); ++n) {
    tail *= k;
    PointMap m(t.level_size(n));
    for (std::size_t v = 0; v < m.size(); ++v) m[v] = top[v / tail] * tail + v % tail;
    levels.push_back(std::move(m));
  }
  TreeEndomorphism out(f.tree_ptr(), std::move(levels));
  if (!verify_compatibility(out).ok) throw Error(Errc::invalid_argument, "ρ-truncation broke compatibility");
  return out;
}

std::vector<TreeEndomorphism> all_endomorphisms(unsigned k, unsigned depth, std::size_t cap) {
  auto tree = std::make_shared<const RootedTree>(RootedTree::regular(k, depth));
  std::size_t inner = 0;
  for (unsigned n = 0; n < depth; ++n) inner += tree->level_size(n);
  std::size_t local_maps = 1;
  for (unsigned i = 0; i < k; ++i) local_maps *= k;
  std::size_t total = 1;
  for (std::size_t i = 0; i < inner; ++i) {
    if (total > cap / local_maps) throw Error(Errc::cap_exceeded, "End(T) at this depth exceeds the enumeration cap");
    total *= local_maps;
  }
  std::vector<TreeEndomorphism> out;
  out.reserve(total);
  // labels[i] indexes the local map A -> A at the i-th inner vertex (level
  // order); the local map with index c sends a to digit a of c in base k.
  std::vector<std::size_t> labels(inner, 0);
  for (std::size_t count = 0; count < total; ++count) {
    std::vector<PointMap> levels{PointMap{0}};
    std::size_t offset = 0;
    for (unsigned n = 0; n < depth; ++n) {
      const auto& prev = levels.back();
      PointMap next(prev.size() * k);
      for (std::size_t v = 0; v < prev.size(); ++v) {
        std::size_t code = labels[offset + v];
        for (unsigned a = 0; a < k; ++a) {
          next[v * k + a] = prev[v] * k + code % k;
          code /= k;
        }
      }
      offset += prev.size();
      levels.push_back(std::move(next));
    }
    out.emplace_back(tree, std::move(levels));
    for (std::size_t i = inner; i > 0; --i) {
      if (++labels[i - 1] < local_maps) break;
      labels[i - 1] = 0;
    }
  }
  return out;
}

namespace {

std::uint64_t rho_bound(unsigned k, unsigned n0) {
  std::uint64_t kn0 = 1;
  for (unsigned i = 0; i < n0; ++i) kn0 *= k;
  std::uint64_t b = 1;
  for (std::uint64_t i = 0; i < n0 * kn0; ++i) b *= k;
  return b;
}

}  // namespace

RhoImage rho_image(unsigned k, unsigned depth, unsigned n0, std::size_t cap) {
  const auto all = all_endomorphisms(k, depth, cap);
  std::set<std::vector<PointMap>> images;
  for (const auto& f : all) images.insert(rho_truncate(f, n0).levels());
  return RhoImage{all.size(), images.size(), rho_bound(k, n0)};
}

std::vector<TreeEndomorphism> semigroup_closure(const std::vector<TreeEndomorphism>& gens, std::size_t cap) {
  std::vector<TreeEndomorphism> out;
  std::set<std::vector<PointMap>> seen;
  for (const auto& g : gens) {
    if (out.size() >= cap) return out;
    if (seen.insert(g.levels()).second) out.push_back(g);
  }
  for (std::size_t i = 0; i < out.size() && out.size() < cap; ++i) {
    for (const auto& g : gens) {
      auto next = compose_endomorphisms(out[i], g);
      if (seen.insert(next.levels()).second) {
        out.push_back(std::move(next));
        if (out.size() >= cap) break;
      }
    }
  }
  return out;
}

NonstabilityReport nonstability_witness(const std::vector<TreeEndomorphism>& gens, unsigned n0, std::size_t closure_cap) {
  require_level(gens, 0);
  const auto& tree = gens.front().tree();
  const unsigned depth = tree.depth();
  if (!tree.arity()) throw Error(Errc::invalid_argument, "ρ-truncation is defined on regular trees");
  if (n0 > depth) throw Error(Errc::depth_mismatch, "n0 exceeds the tree depth");
  NonstabilityReport r;
  r.n0 = n0;
  r.depth = depth;

  // Premise: every α-orbit grows strictly from level to level.
  const std::size_t leaves = tree.level_size(depth);
  std::map<std::pair<unsigned, std::size_t>, std::size_t> orbit_size;
  r.premise = true;
  for (std::size_t leaf = 0; leaf < leaves && r.premise; ++leaf) {
    std::size_t prev = 0;
    for (unsigned n = 0; n <= depth; ++n) {
      const auto v = tree.ancestor(depth, leaf, n);
      auto [it, fresh] = orbit_size.try_emplace({n, v}, 0);
      if (fresh) it->second = semigroup_orbit(gens, n, v).size();
      if (n > 0 && it->second <= prev) {
        r.premise = false;
        break;
      }
      prev = it->second;
    }
  }
  for (unsigned n = 0; n <= depth; ++n) r.alpha_orbit_sizes.push_back(semigroup_orbit(gens, n, 0).size());
  if (!r.premise) {
    throw Error(Errc::premise_unverified, "some α-orbit does not grow up to depth " + std::to_string(depth));
  }

  // (i) multiplicativity of ρ on the first closure elements.
  const auto closure = semigroup_closure(gens, closure_cap);
  r.multiplicative = true;
  for (const auto& f : closure) {
    for (const auto& g : closure) {
      ++r.multiplicativity_pairs;
      if (!(rho_truncate(compose_endomorphisms(f, g), n0) ==
            compose_endomorphisms(rho_truncate(f, n0), rho_truncate(g, n0)))) {
        r.multiplicative = false;
      }
    }
  }

  // (ii) β = ρ∘α has finite image; its orbits are bounded by that image size.
  std::vector<TreeEndomorphism> beta;
  for (const auto& g : gens) beta.push_back(rho_truncate(g, n0));
  r.rho_image_size = semigroup_closure(beta, enumeration_cap()).size();
  r.rho_bound = rho_bound(*tree.arity(), n0);
  r.beta_bounded = r.rho_image_size <= r.rho_bound;
  for (std::size_t leaf = 0; leaf < leaves; ++leaf) {
    r.beta_orbit_sizes.push_back(semigroup_orbit(beta, depth, leaf).size());
    r.beta_bounded = r.beta_bounded && r.beta_orbit_sizes.back() <= r.rho_image_size;
  }

  // (iv) h(ξ) = y forces h(β_s ξ) = α_s y; search every y for a clash.
  r.no_semiconjugacy = true;
  const std::size_t xi = r.sample_ray;
  for (std::size_t y = 0; y < leaves; ++y) {
    ++r.candidates_checked;
    std::vector<std::optional<std::size_t>> forced(leaves);
    std::set<std::pair<std::size_t, std::size_t>> seen{{y, xi}};
    std::deque<std::pair<std::size_t, std::size_t>> queue{{y, xi}};
    forced[xi] = y;
    bool clash = false;
    while (!queue.empty() && !clash) {
      auto [a, b] = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const auto na = gens[i].level(depth)[a];
        const auto nb = beta[i].level(depth)[b];
        if (forced[nb] && *forced[nb] != na) {
          if (!r.conflict) r.conflict = std::array<std::size_t, 4>{y, nb, *forced[nb], na};
          clash = true;
          break;
        }
        forced[nb] = na;
        if (seen.insert({na, nb}).second) queue.emplace_back(na, nb);
      }
    }
    r.no_semiconjugacy = r.no_semiconjugacy && clash;
  }
  return r;
}

MinimalityVerdict minimality_check(const std::vector<TreeEndomorphism>& gens) {
  require_level(gens, 0);
  MinimalityVerdict v;
  for (unsigned n = 0; n <= gens.front().depth(); ++n) {
    const auto blocks = level_orbits(gens, n).blocks.size();
    v.block_counts.push_back(blocks);
    if (blocks != 1 && v.minimal) {
      v.minimal = false;
      v.first_failing_level = n;
    }
  }
  return v;
}

TreeEndomorphism product_embedding(const TreeEndomorphism& s, const TreeEndomorphism& s_prime) {
  const auto& t = s.tree();
  if (t.arity() != 2u) throw Error(Errc::invalid_argument, "the product embedding lives on the binary tree");
  if (!(t == s_prime.tree())) throw Error(Errc::tree_mismatch, "factors act on different trees");
  if (t.depth() == 0) return s;
  // Level n of the embedding uses level n-1 of each factor.
  std::vector<PointMap> levels{PointMap{0}};
  for (unsigned n = 1; n <= t.depth(); ++n) {
    const std::size_t half = t.level_size(n - 1);
    PointMap m(2 * half);
    for (std::size_t r = 0; r < half; ++r) {
      m[r] = s.level(n - 1)[r];
      m[half + r] = half + s_prime.level(n - 1)[r];
    }
    levels.push_back(std::move(m));
  }
  return TreeEndomorphism(s.tree_ptr(), std::move(levels));
}

std::optional<std::pair<std::size_t, std::size_t>> unseparated_pair(const std::vector<TreeEndomorphism>& gens,
                                                                    unsigned n) {
  require_level(gens, n);
  const auto& tree = gens.front().tree();
  const unsigned depth = tree.depth();
  const std::size_t leaves = tree.level_size(depth);
  auto agree = [&](std::size_t u, std::size_t v) { return tree.ancestor(depth, u, n) == tree.ancestor(depth, v, n); };
  for (std::size_t u = 0; u < leaves; ++u) {
    for (std::size_t v = u + 1; v < leaves; ++v) {
      if (!agree(u, v)) continue;
      std::set<std::pair<std::size_t, std::size_t>> seen{{u, v}};
      std::deque<std::pair<std::size_t, std::size_t>> queue{{u, v}};
      bool separated = false;
      while (!queue.empty() && !separated) {
        auto [a, b] = queue.front();
        queue.pop_front();
        for (const auto& g : gens) {
          const auto na = g.level(depth)[a];
          const auto nb = g.level(depth)[b];
          if (!agree(na, nb)) {
            separated = true;
            break;
          }
          if (seen.insert({na, nb}).second) queue.emplace_back(na, nb);
        }
      }
      if (!separated) return std::pair{u, v};
    }
  }
  return std::nullopt;
}

ActionTable boundary_action(const std::vector<TreeEndomorphism>& gens, const std::vector<std::string>& labels,
                            std::size_t horizon) {
  require_level(gens, 0);
  if (labels.size() != gens.size()) throw Error(Errc::invalid_argument, "one label per generator is required");
  const auto& tree = gens.front().tree();
  const unsigned depth = tree.depth();
  auto monoid = truncate_free_monoid(labels, horizon);
  auto carrier = std::make_shared<const Carrier>(monoid.carrier());
  const std::size_t leaves = tree.level_size(depth);
  std::vector<std::string> point_labels;
  std::vector<std::vector<int>> coords;
  for (std::size_t leaf = 0; leaf < leaves; ++leaf) {
    const auto ray = ray_from_leaf(tree, leaf);
    std::string label;
    if (tree.arity()) {
      for (auto a : tree.word(depth, leaf)) label += std::to_string(a);
    } else {
      label = std::to_string(leaf);
    }
    point_labels.push_back(label.empty() ? "root" : label);
    coords.emplace_back(ray.vertices.begin() + 1, ray.vertices.end());
  }
  std::vector<PointMap> gen_maps;
  for (const auto& g : gens) gen_maps.push_back(g.level(depth));
  auto table = ActionTable::from_generators(carrier, std::move(point_labels), gen_maps);
  std::vector<std::string> coord_labels;
  for (unsigned n = 1; n <= depth; ++n) coord_labels.push_back(std::to_string(n));
  table.set_coordinates(std::move(coord_labels), std::move(coords));
  return table;
}

ElementSet levels_up_to(unsigned n) {
  std::vector<Element> out;
  for (unsigned i = 0; i < n; ++i) out.push_back(i);
  return ElementSet(std::move(out));
}

}  // namespace shadowlab
