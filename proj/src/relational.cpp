#include "fraisse/relational.hpp"

#include <algorithm>
#include <set>

#include "fraisse/error.hpp"

namespace fraisse {

Signature::Signature(std::vector<RelationSymbol> relations) : relations_(std::move(relations)) {
  std::set<std::string> seen;
  for (const auto& r : relations_) {
    if (r.name.empty()) throw invalid_input("relation name must be non-empty");
    if (r.arity == 0) throw invalid_input("relation " + r.name + " has arity 0");
    if (!seen.insert(r.name).second) throw invalid_input("duplicate relation name " + r.name);
  }
}

Signature Signature::graph() { return Signature({{"E", 2}}); }

Signature Signature::ldiag(std::size_t levels) {
  std::vector<RelationSymbol> rs;
  for (std::size_t i = 0; i < levels; ++i) rs.push_back({"L" + std::to_string(i), 1});
  rs.push_back({"S", 2});
  return Signature(std::move(rs));
}

std::optional<std::size_t> Signature::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < relations_.size(); ++i)
    if (relations_[i].name == name) return i;
  return std::nullopt;
}

std::size_t Signature::max_arity() const {
  std::size_t m = 0;
  for (const auto& r : relations_) m = std::max(m, r.arity);
  return m;
}

VertexSet::VertexSet(std::initializer_list<Vertex> xs) : VertexSet(std::vector<Vertex>(xs)) {}

VertexSet::VertexSet(std::vector<Vertex> xs) : xs_(std::move(xs)) {
  std::sort(xs_.begin(), xs_.end());
  xs_.erase(std::unique(xs_.begin(), xs_.end()), xs_.end());
}

bool VertexSet::contains(Vertex v) const { return std::binary_search(xs_.begin(), xs_.end(), v); }

bool VertexSet::intersects(const VertexSet& other) const {
  auto a = xs_.begin();
  auto b = other.xs_.begin();
  while (a != xs_.end() && b != other.xs_.end()) {
    if (*a == *b) return true;
    if (*a < *b) ++a; else ++b;
  }
  return false;
}

bool VertexSet::subset_of(const VertexSet& other) const {
  return std::includes(other.xs_.begin(), other.xs_.end(), xs_.begin(), xs_.end());
}

VertexSet VertexSet::with(Vertex v) const {
  VertexSet r = *this;
  auto it = std::lower_bound(r.xs_.begin(), r.xs_.end(), v);
  if (it == r.xs_.end() || *it != v) r.xs_.insert(it, v);
  return r;
}

VertexSet VertexSet::united(const VertexSet& other) const {
  VertexSet r;
  std::set_union(xs_.begin(), xs_.end(), other.xs_.begin(), other.xs_.end(),
                 std::back_inserter(r.xs_));
  return r;
}

std::optional<std::size_t> VertexSet::rank_of(Vertex v) const {
  auto it = std::lower_bound(xs_.begin(), xs_.end(), v);
  if (it == xs_.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - xs_.begin());
}

bool code_less(const VertexSet& a, const VertexSet& b) {
  const auto& x = a.elements();
  const auto& y = b.elements();
  auto i = x.rbegin();
  auto j = y.rbegin();
  for (; i != x.rend() && j != y.rend(); ++i, ++j) {
    if (*i != *j) return *i < *j;
  }
  return i == x.rend() && j != y.rend();
}

std::uint64_t encode_set(const VertexSet& w) {
  std::uint64_t code = 0;
  for (Vertex v : w) {
    if (v >= 64) throw invalid_input("set code does not fit in 64 bits");
    code |= std::uint64_t{1} << v;
  }
  return code;
}

VertexSet decode_set(std::uint64_t code) {
  std::vector<Vertex> xs;
  for (Vertex i = 0; i < 64; ++i)
    if ((code >> i) & 1U) xs.push_back(i);
  return VertexSet(std::move(xs));
}

Mapping::Mapping(std::initializer_list<std::pair<Vertex, Vertex>> pairs)
    : Mapping(std::vector<std::pair<Vertex, Vertex>>(pairs)) {}

Mapping::Mapping(std::vector<std::pair<Vertex, Vertex>> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  for (std::size_t i = 1; i < pairs_.size(); ++i)
    if (pairs_[i].first == pairs_[i - 1].first)
      throw invalid_input("mapping assigns two images to " + std::to_string(pairs_[i].first));
}

Mapping Mapping::from_images(const std::vector<Vertex>& images) {
  std::vector<std::pair<Vertex, Vertex>> ps;
  ps.reserve(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) ps.emplace_back(i, images[i]);
  return Mapping(std::move(ps));
}

std::optional<Vertex> Mapping::at(Vertex source) const {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), std::pair<Vertex, Vertex>{source, 0});
  if (it == pairs_.end() || it->first != source) return std::nullopt;
  return it->second;
}

Vertex Mapping::operator()(Vertex source) const {
  auto v = at(source);
  if (!v) throw Error(ErrorKind::precondition, "mapping undefined at " + std::to_string(source));
  return *v;
}

bool Mapping::injective() const {
  std::vector<Vertex> img;
  for (const auto& p : pairs_) img.push_back(p.second);
  std::sort(img.begin(), img.end());
  return std::adjacent_find(img.begin(), img.end()) == img.end();
}

bool Mapping::total_on(std::size_t n) const {
  if (pairs_.size() != n) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (pairs_[i].first != i) return false;
  return true;
}

VertexSet Mapping::image() const {
  std::vector<Vertex> img;
  for (const auto& p : pairs_) img.push_back(p.second);
  return VertexSet(std::move(img));
}

Mapping Mapping::with(Vertex source, Vertex target) const {
  auto ps = pairs_;
  ps.emplace_back(source, target);
  return Mapping(std::move(ps));
}

FinStructure::FinStructure(Signature sig, std::size_t size, std::vector<std::vector<Tuple>> tuples)
    : sig_(std::move(sig)), size_(size), tuples_(std::move(tuples)) {
  if (tuples_.size() != sig_.size()) throw invalid_input("tuple lists do not match signature");
  for (std::size_t r = 0; r < tuples_.size(); ++r) {
    for (const auto& t : tuples_[r]) {
      if (t.size() != sig_[r].arity)
        throw invalid_input("tuple of wrong arity for relation " + sig_[r].name);
      for (Vertex v : t)
        if (v >= size_)
          throw invalid_input("tuple entry " + std::to_string(v) + " out of range for relation " +
                              sig_[r].name);
    }
    std::sort(tuples_[r].begin(), tuples_[r].end());
    tuples_[r].erase(std::unique(tuples_[r].begin(), tuples_[r].end()), tuples_[r].end());
  }
}

FinStructure FinStructure::empty(Signature sig) {
  std::vector<std::vector<Tuple>> ts(sig.size());
  return FinStructure(std::move(sig), 0, std::move(ts));
}

FinStructure FinStructure::graph(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  std::vector<std::vector<Tuple>> ts(1);
  for (auto [a, b] : edges) {
    if (a == b) throw invalid_input("graph edges must join distinct vertices");
    ts[0].push_back({a, b});
    ts[0].push_back({b, a});
  }
  return FinStructure(Signature::graph(), n, std::move(ts));
}

FinStructure FinStructure::complete_graph(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> es;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) es.emplace_back(a, b);
  return graph(n, es);
}

bool FinStructure::holds(std::size_t relation, std::span<const Vertex> t) const {
  const auto& ts = tuples_[relation];
  return std::binary_search(ts.begin(), ts.end(), t, [](const auto& x, const auto& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  });
}

bool FinStructure::holds(std::size_t relation, std::initializer_list<Vertex> t) const {
  return holds(relation, std::span<const Vertex>(t.begin(), t.size()));
}

std::size_t FinStructure::tuple_count() const {
  std::size_t n = 0;
  for (const auto& ts : tuples_) n += ts.size();
  return n;
}

bool FinStructure::is_graph() const {
  if (sig_.size() != 1 || sig_[0].arity != 2) return false;
  for (const auto& t : tuples_[0]) {
    if (t[0] == t[1]) return false;
    if (!holds(0, {t[1], t[0]})) return false;
  }
  return true;
}

FinStructure FinStructure::restrict_to(const VertexSet& elements) const {
  std::vector<std::vector<Tuple>> ts(sig_.size());
  for (std::size_t r = 0; r < sig_.size(); ++r) {
    for (const auto& t : tuples_[r]) {
      Tuple u;
      bool inside = true;
      for (Vertex v : t) {
        auto k = elements.rank_of(v);
        if (!k) { inside = false; break; }
        u.push_back(*k);
      }
      if (inside) ts[r].push_back(std::move(u));
    }
  }
  return FinStructure(sig_, elements.size(), std::move(ts));
}

namespace {

class EmbeddingSearch {
 public:
  EmbeddingSearch(const FinStructure& a, const FinStructure& b)
      : a_(a), b_(b), images_(a.size()), used_(b.size(), false) {}

  std::optional<Mapping> run() {
    if (extend(0)) return Mapping::from_images(images_);
    return std::nullopt;
  }

 private:
  // Tuples over {0..t} that mention t agree under the partial map.
  bool consistent(std::size_t t) const {
    const auto& sig = a_.signature();
    Tuple mapped;
    for (std::size_t r = 0; r < sig.size(); ++r) {
      bool ok = true;
      for_each_tuple(t + 1, sig[r].arity, [&](const Tuple& tup) {
        if (!ok || std::find(tup.begin(), tup.end(), t) == tup.end()) return;
        mapped.resize(tup.size());
        for (std::size_t i = 0; i < tup.size(); ++i) mapped[i] = images_[tup[i]];
        if (a_.holds(r, tup) != b_.holds(r, mapped)) ok = false;
      });
      if (!ok) return false;
    }
    return true;
  }

  bool extend(std::size_t t) {
    if (t == a_.size()) return true;
    for (Vertex c = 0; c < b_.size(); ++c) {
      if (used_[c]) continue;
      images_[t] = c;
      used_[c] = true;
      if (consistent(t) && extend(t + 1)) return true;
      used_[c] = false;
    }
    return false;
  }

  const FinStructure& a_;
  const FinStructure& b_;
  std::vector<Vertex> images_;
  std::vector<bool> used_;
};

}  // namespace

std::optional<Mapping> find_embedding(const FinStructure& a, const FinStructure& b, std::size_t cap) {
  if (!(a.signature() == b.signature())) throw invalid_input("structures have different signatures");
  if (a.size() > cap || b.size() > cap)
    throw Error(ErrorKind::too_large, "structure too large for brute force (cap " +
                                          std::to_string(cap) + ")");
  if (a.size() > b.size()) return std::nullopt;
  return EmbeddingSearch(a, b).run();
}

std::optional<Mapping> find_isomorphism(const FinStructure& a, const FinStructure& b, std::size_t cap) {
  if (!(a.signature() == b.signature())) throw invalid_input("structures have different signatures");
  if (a.size() > cap)
    throw Error(ErrorKind::too_large, "structure too large for brute force (cap " +
                                          std::to_string(cap) + ")");
  if (a.size() != b.size()) return std::nullopt;
  for (std::size_t r = 0; r < a.signature().size(); ++r)
    if (a.tuples(r).size() != b.tuples(r).size()) return std::nullopt;
  return find_embedding(a, b, cap);
}

bool is_isomorphism(const Mapping& f, const FinStructure& a, const FinStructure& b) {
  if (!(a.signature() == b.signature()) || a.size() != b.size()) return false;
  if (!f.total_on(a.size()) || !f.injective()) return false;
  for (const auto& [s, t] : f.pairs())
    if (t >= b.size()) return false;
  for (std::size_t r = 0; r < a.signature().size(); ++r) {
    if (a.tuples(r).size() != b.tuples(r).size()) return false;
    for (const auto& t : a.tuples(r)) {
      Tuple u;
      for (Vertex v : t) u.push_back(f(v));
      if (!b.holds(r, u)) return false;
    }
  }
  return true;
}

}  // namespace fraisse
