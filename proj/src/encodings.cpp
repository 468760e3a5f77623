#include "fraisse/encodings.hpp"

#include <algorithm>

namespace fraisse {

EffectiveEncoding EffectiveEncoding::identity() {
  EffectiveEncoding e;
  e.contains = [](std::uint64_t j, const VertexSet& w) { return w.contains(j); };
  e.size = [](const VertexSet& w) { return static_cast<std::uint64_t>(w.size()); };
  e.index_bound = [](const VertexSet& w) { return w.max(); };
  e.members = [](const VertexSet& w) { return w.elements(); };
  return e;
}

bool b_event(const EffectiveEncoding& enc, const BitSource& eps, const VertexSet& w, Vertex k) {
  if (static_cast<std::int64_t>(k) <= w.max()) throw Error(ErrorKind::precondition, "b_event needs k > max w");
  const VertexSet wk = w.with(k);
  if (enc.members) {
    auto now = enc.members(wk);
    auto before = enc.members(w);
    for (std::uint64_t j : now)
      if (!std::binary_search(before.begin(), before.end(), j) && eps.bit(j) != 1) return false;
    return true;
  }
  const std::int64_t bound = enc.index_bound(wk);
  for (std::int64_t j = 0; j <= bound; ++j) {
    auto u = static_cast<std::uint64_t>(j);
    if (enc.contains(u, wk) && !enc.contains(u, w) && eps.bit(u) != 1) return false;
  }
  return true;
}

Vertex extend_chain(const EffectiveEncoding& enc, const BitSource& eps, const VertexSet& w,
                    std::uint64_t budget) {
  if (budget == 0) throw Error(ErrorKind::precondition, "budget must be at least 1");
  const auto size_w = enc.size(w);
  const Vertex first = static_cast<Vertex>(w.max() + 1);
  for (std::uint64_t d = 0; d < budget; ++d) {
    Vertex k = first + d;
    if (enc.size(w.with(k)) != size_w && b_event(enc, eps, w, k)) return k;
  }
  throw Error(ErrorKind::budget_exhausted, "no qualifying k within budget " + std::to_string(budget));
}

ChainAttempt try_build_chain(const EffectiveEncoding& enc, const BitSource& eps, std::size_t steps,
                             std::uint64_t budget) {
  ChainAttempt out;
  VertexSet w;
  for (std::size_t n = 1; n <= steps; ++n) {
    try {
      w = w.with(extend_chain(enc, eps, w, budget));
    } catch (const Error& e) {
      out.failure = e.at_step(n);
      return out;
    }
    out.chain.push_back(w);
  }
  return out;
}

Chain build_chain(const EffectiveEncoding& enc, const BitSource& eps, std::size_t steps,
                  std::uint64_t budget) {
  auto attempt = try_build_chain(enc, eps, steps, budget);
  if (attempt.failure) throw *attempt.failure;
  return attempt.chain;
}

}  // namespace fraisse
