#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fraisse/bits.hpp"
#include "fraisse/error.hpp"
#include "fraisse/relational.hpp"

namespace fraisse {

// π: Fin ω -> Fin Y given by its decidable membership relation.
struct EffectiveEncoding {
  std::function<bool(std::uint64_t, const VertexSet&)> contains;
  std::function<std::uint64_t(const VertexSet&)> size;
  std::function<std::int64_t(const VertexSet&)> index_bound;
  // Optional: the members of π(w), ascending. Must agree with contains.
  std::function<std::vector<std::uint64_t>(const VertexSet&)> members;

  // π(w) = w.
  static EffectiveEncoding identity();
};

using Chain = std::vector<VertexSet>;

bool b_event(const EffectiveEncoding& enc, const BitSource& eps, const VertexSet& w, Vertex k);
Vertex extend_chain(const EffectiveEncoding& enc, const BitSource& eps, const VertexSet& w,
                    std::uint64_t budget);
Chain build_chain(const EffectiveEncoding& enc, const BitSource& eps, std::size_t steps,
                  std::uint64_t budget);

// Keeps the prefix built before a failure.
struct ChainAttempt {
  Chain chain;
  std::optional<Error> failure;
};
ChainAttempt try_build_chain(const EffectiveEncoding& enc, const BitSource& eps, std::size_t steps,
                             std::uint64_t budget);

}  // namespace fraisse
