#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "fraisse/error.hpp"
#include "fraisse/limits.hpp"
#include "fraisse/relational.hpp"

namespace fraisse {

struct SearchLimits {
  // Largest vertex id any copy search may touch.
  Vertex max_vertex = Vertex{1} << 20;
  // Bound handed to extension_witness.
  Vertex witness_bound = Vertex{1} << 20;
  // Candidate checks one disjoint-copy search may spend.
  std::uint64_t max_work = std::uint64_t{1} << 26;
};

struct IndexedCopy {
  std::uint64_t j = 0;
  VertexSet set;
  bool operator==(const IndexedCopy&) const = default;
};

// The copies of beta in code order. Counts are kept per maximum vertex;
// the sets themselves are regenerated on demand.
class CopyEnumeration {
 public:
  CopyEnumeration(LimitPresentation pres, FinStructure beta, SearchLimits limits = {});

  const LimitPresentation& presentation() const { return pres_; }
  const FinStructure& beta() const { return beta_; }

  // The j-th copy.
  VertexSet at(std::uint64_t j);
  std::vector<IndexedCopy> take(std::uint64_t count);
  bool is_copy(const VertexSet& s) const;
  // Index of s if it is a copy.
  std::optional<std::uint64_t> index_of(const VertexSet& s);
  // Copies whose largest element is m, in code order.
  const std::vector<VertexSet>& with_max(Vertex m);
  // Number of copies with largest element below m.
  std::uint64_t count_below(Vertex m);
  Vertex scanned() const { return static_cast<Vertex>(below_.size()) - 1; }

 private:
  void scan_through(Vertex m);
  std::vector<VertexSet> list_with_max(Vertex m) const;
  std::uint64_t count_with_max(Vertex m) const;

  LimitPresentation pres_;
  FinStructure beta_;
  SearchLimits limits_;
  bool clique_beta_ = false;
  bool all_subsets_ = false;  // complete presentation with a clique: closed-form colex ranks
  // below_[m] = number of copies with max < m; size = scanned + 1.
  std::vector<std::uint64_t> below_{0};
  std::map<Vertex, std::vector<VertexSet>> cache_;
};

std::vector<IndexedCopy> enumerate_copies(const LimitPresentation& pres, const FinStructure& beta,
                                          std::uint64_t count, SearchLimits limits = {});

// Largest j with σ(j) ⊆ s, or -1.
std::int64_t max_copy_index(CopyEnumeration& copies, const VertexSet& s);
std::int64_t max_copy_index(const LimitPresentation& pres, const FinStructure& beta, const VertexSet& s);
// Indices of all copies inside s, ascending.
std::vector<std::uint64_t> copy_indices_within(CopyEnumeration& copies, const VertexSet& s);

// V_0 = V, V_{i+1} the least set disjoint from U and earlier terms
// such that fixing U and mapping V ascending onto it is an isomorphism.
class DisjointCopySequence {
 public:
  DisjointCopySequence(LimitPresentation pres, VertexSet u, VertexSet v, SearchLimits limits = {});

  const VertexSet& at(std::size_t k);
  const VertexSet& base() const { return u_; }
  const VertexSet& pattern() const { return v_; }

 private:
  VertexSet next();
  bool fits(std::size_t pos, Vertex c, const std::vector<Vertex>& assigned) const;
  bool profile_ok(std::size_t pos, Vertex c) const;
  bool complete_lower(std::size_t pos, std::vector<Vertex>& assigned);
  // Rado: a higher pattern position joined to pos by an edge.
  std::optional<std::size_t> higher_neighbor(std::size_t pos) const;

  LimitPresentation pres_;
  VertexSet u_;
  VertexSet v_;
  SearchLimits limits_;
  std::vector<VertexSet> seq_;
  VertexSet used_;
  // Per pattern position, the scanned vertices with the right type over U.
  std::vector<std::vector<Vertex>> cands_;
  std::vector<std::size_t> cursor_;  // first possibly unused index into cands_[p]
  Vertex scanned_ = 0;
  std::uint64_t work_ = 0;
  // adj_[a][b]: pattern positions a and b are joined by E (graph kinds).
  std::vector<std::vector<bool>> adj_;
  // Set once the search bound is hit; later requests fail the same way.
  std::optional<Error> exhausted_;
};

VertexSet disjoint_copy_sequence(const LimitPresentation& pres, const VertexSet& u, const VertexSet& v,
                                 std::size_t k, SearchLimits limits = {});

}  // namespace fraisse
