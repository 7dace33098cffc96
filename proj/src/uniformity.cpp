#include "shadowlab/uniformity.hpp"

namespace shadowlab {

RelationEntourage::RelationEntourage(std::size_t n, std::vector<std::uint8_t> rel) : n_(n), rel_(std::move(rel)) {
  if (rel_.size() != n * n) throw Error(Errc::invalid_argument, "relation matrix must be n x n");
  for (std::size_t i = 0; i < n; ++i) {
    if (!contains(i, i)) throw Error(Errc::invalid_argument, "relation entourage must contain the diagonal");
  }
}

RelationEntourage RelationEntourage::diagonal(std::size_t n) {
  std::vector<std::uint8_t> rel(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) rel[i * n + i] = 1;
  return RelationEntourage(n, std::move(rel));
}

RelationEntourage RelationEntourage::full(std::size_t n) { return RelationEntourage(n, std::vector<std::uint8_t>(n * n, 1)); }

RelationEntourage RelationEntourage::from_pairs(std::size_t n,
                                                const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  auto r = diagonal(n);
  for (auto [x, y] : pairs) {
    if (x >= n || y >= n) throw Error(Errc::invalid_argument, "relation pair names a point out of range");
    r.set(x, y, true);
    r.set(y, x, true);
  }
  return r;
}

bool RelationEntourage::is_symmetric() const {
  for (std::size_t x = 0; x < n_; ++x) {
    for (std::size_t y = x + 1; y < n_; ++y) {
      if (contains(x, y) != contains(y, x)) return false;
    }
  }
  return true;
}

std::vector<std::pair<std::size_t, std::size_t>> RelationEntourage::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t x = 0; x < n_; ++x) {
    for (std::size_t y = x + 1; y < n_; ++y) {
      if (contains(x, y) || contains(y, x)) out.emplace_back(x, y);
    }
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> RelationEntourage::all_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t x = 0; x < n_; ++x) {
    for (std::size_t y = 0; y < n_; ++y) {
      if (contains(x, y)) out.emplace_back(x, y);
    }
  }
  return out;
}

namespace {

const RelationEntourage& as_relation(const Entourage& e) { return std::get<RelationEntourage>(e); }

void require_same_backend(const Entourage& e, const Entourage& f) {
  if (e.index() != f.index()) throw Error(Errc::space_mismatch, "cannot combine coordinate and relation entourages");
  if (!is_coord(e) && as_relation(e).points() != as_relation(f).points()) {
    throw Error(Errc::space_mismatch, "relation entourages live on point sets of different sizes");
  }
}

RelationEntourage compose_rel(const RelationEntourage& e, const RelationEntourage& f) {
  const std::size_t n = e.points();
  std::vector<std::uint8_t> out(n * n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t z = 0; z < n; ++z) {
      if (!e.contains(x, z)) continue;
      for (std::size_t y = 0; y < n; ++y) {
        if (f.contains(z, y)) out[x * n + y] = 1;
      }
    }
  }
  return RelationEntourage(n, std::move(out));
}

}  // namespace

bool is_coord(const Entourage& e) noexcept { return std::holds_alternative<CoordEntourage>(e); }

Entourage compose(const Entourage& e, const Entourage& f) {
  require_same_backend(e, f);
  if (is_coord(e)) {
    return CoordEntourage{set_intersection(std::get<CoordEntourage>(e).coords, std::get<CoordEntourage>(f).coords)};
  }
  return compose_rel(as_relation(e), as_relation(f));
}

Entourage intersect(const Entourage& e, const Entourage& f) {
  require_same_backend(e, f);
  if (is_coord(e)) {
    return CoordEntourage{set_union(std::get<CoordEntourage>(e).coords, std::get<CoordEntourage>(f).coords)};
  }
  const auto& a = as_relation(e);
  const auto& b = as_relation(f);
  auto m = a.matrix();
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = m[i] & b.matrix()[i];
  return RelationEntourage(a.points(), std::move(m));
}

Entourage inverse(const Entourage& e) {
  if (is_coord(e)) return e;
  const auto& a = as_relation(e);
  const std::size_t n = a.points();
  std::vector<std::uint8_t> m(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) m[y * n + x] = a.contains(x, y) ? 1 : 0;
  }
  return RelationEntourage(n, std::move(m));
}

bool is_subset(const Entourage& e, const Entourage& f) {
  require_same_backend(e, f);
  if (is_coord(e)) return std::get<CoordEntourage>(f).coords.is_subset_of(std::get<CoordEntourage>(e).coords);
  const auto& a = as_relation(e).matrix();
  const auto& b = as_relation(f).matrix();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && !b[i]) return false;
  }
  return true;
}

bool is_symmetric(const Entourage& e) { return is_coord(e) || as_relation(e).is_symmetric(); }

Entourage symmetrize(const Entourage& e) {
  if (is_coord(e)) return e;
  auto a = as_relation(e);
  for (std::size_t x = 0; x < a.points(); ++x) {
    for (std::size_t y = 0; y < a.points(); ++y) {
      if (a.contains(x, y)) a.set(y, x, true);
    }
  }
  return a;
}

Entourage power(const Entourage& e, unsigned p) {
  if (p == 0) throw Error(Errc::invalid_argument, "entourage power must be at least 1");
  Entourage out = e;
  for (unsigned i = 1; i < p; ++i) out = compose(out, e);
  return out;
}

Entourage root(const Entourage& r, unsigned p) {
  if (is_coord(r)) return r;
  const auto& target = as_relation(r);
  const std::size_t n = target.points();
  // Start from the symmetric core of R; any symmetric V with V ⊆ V^p ⊆ R lives inside it.
  auto v = RelationEntourage::diagonal(n);
  for (auto [x, y] : target.pairs()) {
    if (target.contains(x, y) && target.contains(y, x)) {
      v.set(x, y, true);
      v.set(y, x, true);
    }
  }
  if (p <= 1) return v;
  while (true) {
    // powers[i] = V^i, with V^0 the diagonal.
    std::vector<RelationEntourage> powers{RelationEntourage::diagonal(n), v};
    for (unsigned i = 2; i <= p; ++i) powers.push_back(compose_rel(powers.back(), v));
    const auto& top = powers.back();
    std::optional<std::pair<std::size_t, std::size_t>> bad;
    for (std::size_t x = 0; x < n && !bad; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (top.contains(x, y) && !target.contains(x, y)) {
          bad = std::pair{x, y};
          break;
        }
      }
    }
    if (!bad) return v;
    // Lexicographically first witnessing path x = z0, z1, ..., zp = y; drop
    // its largest non-diagonal edge.
    auto [x, y] = *bad;
    std::vector<std::size_t> path{x};
    for (unsigned i = 0; i < p; ++i) {
      const auto& rest = powers[p - i - 1];
      for (std::size_t z = 0; z < n; ++z) {
        if (v.contains(path.back(), z) && rest.contains(z, y)) {
          path.push_back(z);
          break;
        }
      }
    }
    std::pair<std::size_t, std::size_t> drop{0, 0};
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      const auto a = path[i], b = path[i + 1];
      if (a == b) continue;
      drop = std::max(drop, std::pair{std::min(a, b), std::max(a, b)});
    }
    v.set(drop.first, drop.second, false);
    v.set(drop.second, drop.first, false);
  }
}

}  // namespace shadowlab
