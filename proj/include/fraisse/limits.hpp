#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fraisse/bits.hpp"
#include "fraisse/relational.hpp"

namespace fraisse {

enum class PresentationKind { rado, complete, ldiag_primes, ldiag_bits };

// Decidable presentation of a countable homogeneous structure on vertex set ω.
class LimitPresentation {
 public:
  static LimitPresentation rado();
  static LimitPresentation complete();
  static LimitPresentation ldiag_primes(std::size_t levels);
  static LimitPresentation ldiag_bits(std::size_t levels, BitSource alpha);

  PresentationKind kind() const { return kind_; }
  const Signature& signature() const { return sig_; }
  // ℓ for diagram kinds, 0 for graphs.
  std::size_t levels() const { return levels_; }
  bool is_graph_kind() const { return levels_ == 0; }
  const BitSource* bits() const { return bits_ ? &*bits_ : nullptr; }

  bool holds(std::size_t relation, std::span<const Vertex> tuple) const;
  bool holds(std::size_t relation, std::initializer_list<Vertex> tuple) const {
    return holds(relation, std::span<const Vertex>(tuple.begin(), tuple.size()));
  }
  // Graph kinds only: E(a,b).
  bool adjacent(Vertex a, Vertex b) const;

  // Diagram kinds: level v mod ℓ and index v / ℓ; vertex id i + ℓ·n.
  std::size_t level_of(Vertex v) const { return static_cast<std::size_t>(v % levels_); }
  Vertex index_of(Vertex v) const { return v / levels_; }
  Vertex vertex_at(std::size_t level, Vertex index) const;

  // Rado only: the neighbours of v below v, ascending.
  bool has_lower_neighbors() const { return kind_ == PresentationKind::rado; }
  std::vector<Vertex> lower_neighbors(Vertex v) const;

 private:
  LimitPresentation() = default;
  PresentationKind kind_ = PresentationKind::rado;
  Signature sig_;
  std::size_t levels_ = 0;
  std::optional<BitSource> bits_;
};

bool rado_adjacent(Vertex m, Vertex n);

struct Constraint {
  std::size_t relation = 0;
  // Exactly one entry is empty: the hole.
  std::vector<std::optional<Vertex>> tuple;
  bool operator==(const Constraint&) const = default;
};

struct ExtensionTask {
  std::vector<Constraint> positive;
  std::vector<Constraint> negative;
  VertexSet excluded;
  std::optional<std::size_t> level;

  // Graph shorthand: E(hole,u) for u in adjacent, ¬E(hole,v) for v in non_adjacent.
  static ExtensionTask graph(const VertexSet& adjacent, const VertexSet& non_adjacent,
                             VertexSet excluded = {});
};

// Least z <= bound outside task.excluded satisfying every constraint.
std::optional<Vertex> extension_witness(const LimitPresentation& pres, const ExtensionTask& task,
                                        Vertex bound);

FinStructure induced(const LimitPresentation& pres, const VertexSet& a);
bool is_embedding(const Mapping& f, const FinStructure& a, const LimitPresentation& pres);

// Extends h over the last element of B. A must be B minus its last element.
std::optional<Mapping> check_homogeneity_sample(const LimitPresentation& pres, const FinStructure& a,
                                                const FinStructure& b, const Mapping& h, Vertex bound);

// The one-point extension type of element a.size() of B over h(A).
ExtensionTask extension_type(const LimitPresentation& pres, const FinStructure& b, const Mapping& h);

}  // namespace fraisse
