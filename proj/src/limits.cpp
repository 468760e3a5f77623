#include "fraisse/limits.hpp"

#include <algorithm>
#include <bit>

#include "fraisse/error.hpp"
#include "fraisse/ranked.hpp"

namespace fraisse {

LimitPresentation LimitPresentation::rado() {
  LimitPresentation p;
  p.kind_ = PresentationKind::rado;
  p.sig_ = Signature::graph();
  return p;
}

LimitPresentation LimitPresentation::complete() {
  LimitPresentation p;
  p.kind_ = PresentationKind::complete;
  p.sig_ = Signature::graph();
  return p;
}

LimitPresentation LimitPresentation::ldiag_primes(std::size_t levels) {
  if (levels < 2) throw invalid_input("an l-diagram needs at least 2 levels");
  LimitPresentation p;
  p.kind_ = PresentationKind::ldiag_primes;
  p.sig_ = Signature::ldiag(levels);
  p.levels_ = levels;
  return p;
}

LimitPresentation LimitPresentation::ldiag_bits(std::size_t levels, BitSource alpha) {
  if (levels < 2) throw invalid_input("an l-diagram needs at least 2 levels");
  LimitPresentation p;
  p.kind_ = PresentationKind::ldiag_bits;
  p.sig_ = Signature::ldiag(levels);
  p.levels_ = levels;
  p.bits_ = std::move(alpha);
  return p;
}

bool rado_adjacent(Vertex m, Vertex n) {
  if (m == n) throw invalid_input("rado_adjacent: vertices must differ");
  Vertex a = std::min(m, n);
  Vertex b = std::max(m, n);
  return a < 64 && ((b >> a) & 1U);
}

bool LimitPresentation::adjacent(Vertex a, Vertex b) const {
  if (a == b) return false;
  return kind_ == PresentationKind::complete ? true : rado_adjacent(a, b);
}

Vertex LimitPresentation::vertex_at(std::size_t level, Vertex index) const {
  if (level >= levels_) throw invalid_input("level out of range");
  if (index > (UINT64_MAX - level) / levels_) throw Error(ErrorKind::too_large, "vertex id overflow");
  return level + levels_ * index;
}

bool LimitPresentation::holds(std::size_t relation, std::span<const Vertex> t) const {
  if (relation >= sig_.size()) throw invalid_input("relation index out of range");
  if (t.size() != sig_[relation].arity) throw invalid_input("query tuple has wrong arity");
  if (levels_ == 0) return adjacent(t[0], t[1]);
  if (relation < levels_) return level_of(t[0]) == relation;
  std::size_t lo = level_of(t[0]);
  std::size_t hi = level_of(t[1]);
  if (hi != lo + 1) return false;
  LevelVertex a{lo, index_of(t[0])};
  LevelVertex b{hi, index_of(t[1])};
  if (kind_ == PresentationKind::ldiag_primes) return prime_adjacent(PrimeTable(levels_), a, b);
  return bits_adjacent(*bits_, levels_, a, b);
}

std::vector<Vertex> LimitPresentation::lower_neighbors(Vertex v) const {
  if (kind_ != PresentationKind::rado) throw invalid_input("lower_neighbors: rado only");
  std::vector<Vertex> out;
  for (std::uint64_t bits = v; bits != 0; bits &= bits - 1)
    out.push_back(static_cast<Vertex>(std::countr_zero(bits)));
  return out;
}

ExtensionTask ExtensionTask::graph(const VertexSet& adjacent, const VertexSet& non_adjacent,
                                   VertexSet excluded) {
  ExtensionTask t;
  for (Vertex u : adjacent) t.positive.push_back({0, {std::nullopt, u}});
  for (Vertex v : non_adjacent) t.negative.push_back({0, {std::nullopt, v}});
  t.excluded = std::move(excluded);
  return t;
}

namespace {

void validate(const LimitPresentation& pres, const ExtensionTask& task) {
  const auto& sig = pres.signature();
  auto check = [&](const Constraint& c) {
    if (c.relation >= sig.size()) throw invalid_input("constraint relation out of range");
    if (c.tuple.size() != sig[c.relation].arity) throw invalid_input("constraint tuple has wrong arity");
    auto holes = std::count(c.tuple.begin(), c.tuple.end(), std::nullopt);
    if (holes != 1) throw invalid_input("constraint tuple must have exactly one hole");
  };
  for (const auto& c : task.positive) check(c);
  for (const auto& c : task.negative) check(c);
  for (const auto& c : task.positive)
    if (std::find(task.negative.begin(), task.negative.end(), c) != task.negative.end())
      throw Error(ErrorKind::inconsistent_task, "inconsistent task");
  if (!pres.is_graph_kind()) {
    if (!task.level) throw Error(ErrorKind::precondition, "l-diagram task needs a level");
    if (*task.level >= pres.levels()) throw invalid_input("task level out of range");
  }
}

bool satisfies(const LimitPresentation& pres, const ExtensionTask& task, Vertex z) {
  Tuple t;
  auto eval = [&](const Constraint& c) {
    t.resize(c.tuple.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = c.tuple[i] ? *c.tuple[i] : z;
    return pres.holds(c.relation, t);
  };
  for (const auto& c : task.positive)
    if (!eval(c)) return false;
  for (const auto& c : task.negative)
    if (eval(c)) return false;
  return true;
}

// Least z >= from with (z & mask) == pattern, if one fits in 64 bits.
std::optional<std::uint64_t> next_with_bits(std::uint64_t from, std::uint64_t mask, std::uint64_t pattern) {
  std::uint64_t bad = (from & mask) ^ pattern;
  if (bad == 0) return from;
  int hi = 63 - std::countl_zero(bad);
  int b = -1;
  if ((pattern >> hi) & 1U) {
    b = hi;
  } else {
    for (int c = hi + 1; c < 64; ++c) {
      bool from_zero = ((from >> c) & 1U) == 0;
      bool may_set = ((mask >> c) & 1U) == 0 || ((pattern >> c) & 1U);
      if (from_zero && may_set) { b = c; break; }
    }
    if (b < 0) return std::nullopt;
  }
  std::uint64_t low = (b == 0) ? 0 : ((std::uint64_t{1} << b) - 1);
  std::uint64_t above = (b == 63) ? 0 : (from & ~((low << 1) | 1U));
  return above | (std::uint64_t{1} << b) | (pattern & low);
}

// Same answer as the scan, but jumps over ids >= 64 using the bit pattern.
std::optional<Vertex> rado_witness(const LimitPresentation& pres, const ExtensionTask& task, Vertex bound) {
  for (Vertex z = 0; z <= std::min<Vertex>(bound, 63); ++z)
    if (!task.excluded.contains(z) && satisfies(pres, task, z)) return z;
  if (bound < 64) return std::nullopt;
  std::uint64_t mask = 0;
  std::uint64_t pattern = 0;
  VertexSet positives;
  auto other = [](const Constraint& c) { return c.tuple[0] ? *c.tuple[0] : *c.tuple[1]; };
  for (const auto& c : task.positive) {
    Vertex u = other(c);
    if (u >= 64) return std::nullopt;
    mask |= std::uint64_t{1} << u;
    pattern |= std::uint64_t{1} << u;
    positives = positives.with(u);
  }
  for (const auto& c : task.negative) {
    Vertex u = other(c);
    if (positives.contains(u)) return std::nullopt;
    if (u < 64) mask |= std::uint64_t{1} << u;
  }
  if (pattern & ~mask) return std::nullopt;
  std::uint64_t from = 64;
  while (true) {
    auto z = next_with_bits(from, mask, pattern);
    if (!z || *z > bound) return std::nullopt;
    if (!task.excluded.contains(*z) && !positives.contains(*z)) return *z;
    if (*z == UINT64_MAX) return std::nullopt;
    from = *z + 1;
  }
}

}  // namespace

std::optional<Vertex> extension_witness(const LimitPresentation& pres, const ExtensionTask& task, Vertex bound) {
  validate(pres, task);
  if (pres.kind() == PresentationKind::rado) return rado_witness(pres, task, bound);
  Vertex start = 0;
  Vertex step = 1;
  if (task.level) {
    start = *task.level;
    step = pres.levels();
  }
  for (Vertex z = start; z <= bound; z += step) {
    if (!task.excluded.contains(z) && satisfies(pres, task, z)) return z;
    if (z > UINT64_MAX - step) break;
  }
  return std::nullopt;
}

FinStructure induced(const LimitPresentation& pres, const VertexSet& a) {
  const auto& sig = pres.signature();
  std::vector<std::vector<Tuple>> ts(sig.size());
  Tuple mapped;
  for (std::size_t r = 0; r < sig.size(); ++r) {
    for_each_tuple(a.size(), sig[r].arity, [&](const Tuple& t) {
      mapped.resize(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) mapped[i] = a[t[i]];
      if (pres.holds(r, mapped)) ts[r].push_back(t);
    });
  }
  return FinStructure(sig, a.size(), std::move(ts));
}

bool is_embedding(const Mapping& f, const FinStructure& a, const LimitPresentation& pres) {
  if (!(a.signature() == pres.signature())) return false;
  if (!f.total_on(a.size()) || !f.injective()) return false;
  const auto& sig = a.signature();
  Tuple mapped;
  for (std::size_t r = 0; r < sig.size(); ++r) {
    bool ok = true;
    for_each_tuple(a.size(), sig[r].arity, [&](const Tuple& t) {
      if (!ok) return;
      mapped.resize(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) mapped[i] = f(t[i]);
      if (a.holds(r, t) != pres.holds(r, mapped)) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

ExtensionTask extension_type(const LimitPresentation& pres, const FinStructure& b, const Mapping& h) {
  if (b.size() == 0) throw Error(ErrorKind::precondition, "extension type of an empty structure");
  const Vertex last = b.size() - 1;
  const auto& sig = b.signature();
  ExtensionTask task;
  for (std::size_t r = 0; r < sig.size(); ++r) {
    for_each_tuple(b.size(), sig[r].arity, [&](const Tuple& t) {
      if (std::count(t.begin(), t.end(), last) != 1) return;
      Constraint c{r, {}};
      for (Vertex v : t) {
        if (v == last) c.tuple.push_back(std::nullopt);
        else c.tuple.push_back(h(v));
      }
      (b.holds(r, t) ? task.positive : task.negative).push_back(std::move(c));
    });
  }
  task.excluded = h.image();
  if (!pres.is_graph_kind()) {
    for (std::size_t i = 0; i < pres.levels(); ++i)
      if (b.holds(i, {last})) task.level = i;
    if (!task.level) throw Error(ErrorKind::precondition, "new element has no level");
  }
  return task;
}

std::optional<Mapping> check_homogeneity_sample(const LimitPresentation& pres, const FinStructure& a,
                                                const FinStructure& b, const Mapping& h, Vertex bound) {
  if (!(b.signature() == pres.signature()) || !(a.signature() == pres.signature()))
    throw invalid_input("structure signature does not match the presentation");
  if (b.size() != a.size() + 1) throw Error(ErrorKind::precondition, "B must have exactly one more element than A");
  std::vector<Vertex> prefix(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) prefix[i] = i;
  if (!(b.restrict_to(VertexSet(prefix)) == a))
    throw Error(ErrorKind::precondition, "A is not the substructure of B on its first elements");
  if (!is_embedding(h, a, pres)) throw Error(ErrorKind::precondition, "h does not embed A into the presentation");
  ExtensionTask task = extension_type(pres, b, h);
  while (true) {
    auto z = extension_witness(pres, task, bound);
    if (!z) return std::nullopt;
    Mapping g = h.with(a.size(), *z);
    // Tuples repeating the new element are not part of the task.
    if (is_embedding(g, b, pres)) return g;
    task.excluded = task.excluded.with(*z);
  }
}

}  // namespace fraisse
