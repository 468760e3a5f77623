#include "fraisse/ranked.hpp"

#include <algorithm>
#include <bit>
#include <mutex>

#include "fraisse/error.hpp"

namespace fraisse {

namespace {

constexpr std::uint64_t kMaxPrimeIndex = 50'000'000;

std::mutex prime_mutex;
std::vector<std::uint64_t> odd_primes;  // guarded by prime_mutex
std::uint64_t sieved_to = 2;

void sieve_to(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t p = 2; p * p <= limit; ++p)
    if (!composite[p])
      for (std::uint64_t q = p * p; q <= limit; q += p) composite[q] = true;
  odd_primes.clear();
  for (std::uint64_t n = 3; n <= limit; n += 2)
    if (!composite[n]) odd_primes.push_back(n);
  sieved_to = limit;
}

}  // namespace

std::uint64_t nth_odd_prime(std::uint64_t k) {
  if (k > kMaxPrimeIndex) throw Error(ErrorKind::too_large, "prime index " + std::to_string(k) + " beyond table cap");
  std::lock_guard lock(prime_mutex);
  while (odd_primes.size() <= k) sieve_to(std::max<std::uint64_t>(1024, sieved_to * 2));
  return odd_primes[k];
}

PrimeTable::PrimeTable(std::size_t levels) : levels_(levels) {
  if (levels < 2) throw invalid_input("prime table needs at least 2 levels");
}

std::uint64_t PrimeTable::operator()(std::size_t i, Vertex n) const {
  if (i >= levels_) throw invalid_input("prime table level out of range");
  if (n > (kMaxPrimeIndex - i) / levels_) throw Error(ErrorKind::too_large, "prime index beyond table cap");
  return nth_odd_prime(i + levels_ * n);
}

std::uint64_t PrimeTable::lower_bound(std::size_t i, Vertex n) const {
  // The k-th odd prime is at least the k-th odd number >= 3.
  unsigned __int128 k = static_cast<unsigned __int128>(levels_) * n + i;
  unsigned __int128 b = 2 * k + 3;
  return b > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(b);
}

namespace {

void require_adjacent_levels(LevelVertex lo, LevelVertex hi, std::size_t levels) {
  if (hi.level != lo.level + 1 || hi.level >= levels)
    throw invalid_input("succession is only defined between adjacent levels");
}

// p | x for x != 0, skipping the prime lookup when p must exceed x.
bool prime_divides(const PrimeTable& pt, std::size_t i, Vertex n, std::uint64_t x) {
  if (x == 0 || pt.lower_bound(i, n) > x) return false;
  return x % pt(i, n) == 0;
}

}  // namespace

bool prime_adjacent(const PrimeTable& pt, LevelVertex lo, LevelVertex hi) {
  require_adjacent_levels(lo, hi, pt.levels());
  return prime_divides(pt, lo.level, lo.index, hi.index) || prime_divides(pt, hi.level, hi.index, lo.index);
}

std::uint64_t psi(std::size_t levels, std::size_t i, Vertex n, Vertex m) {
  if (levels < 2 || i + 1 >= levels) throw invalid_input("psi: level out of range");
  using u128 = unsigned __int128;
  u128 s = static_cast<u128>(n) + m;
  u128 c = s * (s + 1) / 2 + m;
  u128 r = i + static_cast<u128>(levels - 1) * c;
  if (s > UINT64_MAX || r > UINT64_MAX) throw Error(ErrorKind::too_large, "psi index overflow");
  return static_cast<std::uint64_t>(r);
}

bool bits_adjacent(const BitSource& alpha, std::size_t levels, LevelVertex lo, LevelVertex hi) {
  require_adjacent_levels(lo, hi, levels);
  return alpha.bit(psi(levels, lo.level, lo.index, hi.index)) == 1;
}

namespace {

void check_instance(const ExtensionInstance& inst, std::size_t levels) {
  if (inst.level >= levels) throw invalid_input("instance level out of range");
  if (inst.x.intersects(inst.y)) throw invalid_input("X and Y must be disjoint");
  if (inst.xp.intersects(inst.yp)) throw invalid_input("X' and Y' must be disjoint");
  if (inst.level + 1 == levels && !(inst.x.empty() && inst.y.empty()))
    throw invalid_input("X and Y must be empty on the top level");
  if (inst.level == 0 && !(inst.xp.empty() && inst.yp.empty()))
    throw invalid_input("X' and Y' must be empty on the bottom level");
}

}  // namespace

std::uint64_t prime_witness(const PrimeTable& pt, const ExtensionInstance& inst) {
  check_instance(inst, pt.levels());
  const std::size_t i = inst.level;
  using u128 = unsigned __int128;
  u128 base = 1;
  auto times = [&](std::uint64_t p) {
    base *= p;
    if (base > UINT64_MAX) throw Error(ErrorKind::too_large, "prime witness overflow");
  };
  for (Vertex x : inst.x) times(pt(i + 1, x));
  for (Vertex x : inst.xp) times(pt(i - 1, x));
  std::uint64_t z = static_cast<std::uint64_t>(base);
  while (true) {
    bool ok = !inst.z.contains(z);
    for (Vertex y : inst.y) ok = ok && !prime_divides(pt, i, z, y);
    for (Vertex y : inst.yp) ok = ok && !prime_divides(pt, i, z, y);
    if (ok) break;
    if (z > UINT64_MAX / 2) throw Error(ErrorKind::too_large, "prime witness overflow");
    z *= 2;
  }
  // Audit the axiom (iv) conclusion.
  bool audit = z != 0 && !inst.z.contains(z);
  for (Vertex x : inst.x) audit = audit && prime_adjacent(pt, {i, z}, {i + 1, x});
  for (Vertex y : inst.y) audit = audit && !prime_adjacent(pt, {i, z}, {i + 1, y});
  for (Vertex x : inst.xp) audit = audit && prime_adjacent(pt, {i - 1, x}, {i, z});
  for (Vertex y : inst.yp) audit = audit && !prime_adjacent(pt, {i - 1, y}, {i, z});
  if (!audit) throw std::logic_error("prime witness failed its own audit");
  return z;
}

bool realizes(const LimitPresentation& pres, const ExtensionInstance& inst, Vertex z) {
  if (inst.z.contains(z)) return false;
  const std::size_t i = inst.level;
  const std::size_t s = pres.levels();
  const Vertex v = pres.vertex_at(i, z);
  for (Vertex x : inst.x)
    if (!pres.holds(s, {v, pres.vertex_at(i + 1, x)})) return false;
  for (Vertex y : inst.y)
    if (pres.holds(s, {v, pres.vertex_at(i + 1, y)})) return false;
  for (Vertex x : inst.xp)
    if (!pres.holds(s, {pres.vertex_at(i - 1, x), v})) return false;
  for (Vertex y : inst.yp)
    if (pres.holds(s, {pres.vertex_at(i - 1, y), v})) return false;
  return true;
}

bool check_rd_axioms(const FinStructure& s, const std::vector<std::size_t>& levels) {
  if (levels.size() != s.size()) return false;
  const auto& sig = s.signature();
  auto succ = sig.index_of("S");
  auto is_level_symbol = [&](std::size_t r) {
    const auto& name = sig[r].name;
    return sig[r].arity == 1 && name.size() >= 2 && name[0] == 'L';
  };
  bool labelled = false;
  for (std::size_t r = 0; r < sig.size(); ++r) labelled = labelled || is_level_symbol(r);
  for (Vertex e = 0; e < s.size() && labelled; ++e) {
    std::size_t count = 0;
    for (std::size_t r = 0; r < sig.size(); ++r) {
      if (!is_level_symbol(r) || !s.holds(r, {e})) continue;
      ++count;
      if (sig[r].name != "L" + std::to_string(levels[e])) return false;
    }
    if (count != 1) return false;
  }
  if (!succ) return true;
  for (const auto& t : s.tuples(*succ))
    if (levels[t[1]] != levels[t[0]] + 1) return false;
  return true;
}

std::size_t ProbeReport::satisfied() const {
  return static_cast<std::size_t>(std::count_if(outcomes.begin(), outcomes.end(),
                                                [](const ProbeOutcome& o) { return o.witness.has_value(); }));
}

std::vector<const ProbeOutcome*> ProbeReport::violated() const {
  std::vector<const ProbeOutcome*> out;
  for (const auto& o : outcomes)
    if (!o.witness && !o.exhausted_at) out.push_back(&o);
  return out;
}

std::size_t ProbeReport::exhausted() const {
  return static_cast<std::size_t>(std::count_if(outcomes.begin(), outcomes.end(),
                                                [](const ProbeOutcome& o) { return o.exhausted_at.has_value(); }));
}

namespace {

// All subsets of {0..max_index} with at most max_size elements, by code.
std::vector<VertexSet> small_subsets(Vertex max_index, std::size_t max_size) {
  std::vector<VertexSet> out;
  const std::uint64_t n = max_index + 1;
  if (n >= 32) throw invalid_input("probe index cap too large");
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code)
    if (static_cast<std::size_t>(std::popcount(code)) <= max_size) out.push_back(decode_set(code));
  return out;
}

// Disjoint pairs (A, B) drawn from the subsets.
std::vector<std::pair<VertexSet, VertexSet>> disjoint_pairs(const std::vector<VertexSet>& sets) {
  std::vector<std::pair<VertexSet, VertexSet>> out;
  for (const auto& a : sets)
    for (const auto& b : sets)
      if (!a.intersects(b)) out.emplace_back(a, b);
  return out;
}

}  // namespace

std::vector<ExtensionInstance> probe_instances(std::size_t levels, const ProbeCaps& caps) {
  const auto sets = small_subsets(caps.max_index, caps.max_set_size);
  const auto zs = small_subsets(caps.max_index, caps.max_z_size);
  const auto pairs = disjoint_pairs(sets);
  const std::vector<std::pair<VertexSet, VertexSet>> none{{VertexSet{}, VertexSet{}}};
  std::vector<ExtensionInstance> out;
  for (std::size_t i = 0; i < levels; ++i) {
    const auto& ups = (i + 1 < levels) ? pairs : none;
    const auto& downs = (i > 0) ? pairs : none;
    for (const auto& [x, y] : ups)
      for (const auto& [xp, yp] : downs) {
        std::size_t n = x.size() + y.size() + xp.size() + yp.size();
        if (caps.max_constrained && n > *caps.max_constrained) continue;
        for (const auto& z : zs) out.push_back({i, x, y, z, xp, yp});
      }
  }
  return out;
}

ProbeReport genericity_probe(const LimitPresentation& pres, const ProbeCaps& caps, Vertex z_bound) {
  if (pres.is_graph_kind()) throw invalid_input("genericity probe needs an l-diagram presentation");
  ProbeReport report;
  report.levels = pres.levels();
  report.caps = caps;
  report.z_bound = z_bound;
  for (auto& inst : probe_instances(pres.levels(), caps)) {
    ProbeOutcome o{std::move(inst), std::nullopt, std::nullopt};
    try {
      for (Vertex z = 0; z <= z_bound; ++z) {
        if (realizes(pres, o.instance, z)) {
          o.witness = z;
          break;
        }
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::prefix_exhausted) throw;
      o.exhausted_at = e.index();
    }
    report.outcomes.push_back(std::move(o));
  }
  return report;
}

}  // namespace fraisse
