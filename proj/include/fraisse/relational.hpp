#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fraisse {

using Vertex = std::uint64_t;
using Tuple = std::vector<Vertex>;

struct RelationSymbol {
  std::string name;
  std::size_t arity = 0;
  bool operator==(const RelationSymbol&) const = default;
};

class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<RelationSymbol> relations);

  static Signature graph();
  // Unary L0..L{levels-1} followed by binary S.
  static Signature ldiag(std::size_t levels);

  const std::vector<RelationSymbol>& relations() const { return relations_; }
  std::size_t size() const { return relations_.size(); }
  const RelationSymbol& operator[](std::size_t i) const { return relations_[i]; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::size_t max_arity() const;

  bool operator==(const Signature&) const = default;

 private:
  std::vector<RelationSymbol> relations_;
};

// Finite set of naturals, kept strictly increasing.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> xs);
  explicit VertexSet(std::vector<Vertex> xs);

  const std::vector<Vertex>& elements() const { return xs_; }
  std::size_t size() const { return xs_.size(); }
  bool empty() const { return xs_.empty(); }
  auto begin() const { return xs_.begin(); }
  auto end() const { return xs_.end(); }
  Vertex operator[](std::size_t i) const { return xs_[i]; }

  bool contains(Vertex v) const;
  // Largest element, or -1 for the empty set.
  std::int64_t max() const { return xs_.empty() ? -1 : static_cast<std::int64_t>(xs_.back()); }
  bool intersects(const VertexSet& other) const;
  bool subset_of(const VertexSet& other) const;
  VertexSet with(Vertex v) const;
  VertexSet united(const VertexSet& other) const;
  // Position of v among the elements.
  std::optional<std::size_t> rank_of(Vertex v) const;

  bool operator==(const VertexSet&) const = default;

 private:
  std::vector<Vertex> xs_;
};

// Order by binary code (colex). Agrees with encode_set where that fits in 64 bits.
bool code_less(const VertexSet& a, const VertexSet& b);

struct CodeLess {
  bool operator()(const VertexSet& a, const VertexSet& b) const { return code_less(a, b); }
};

std::uint64_t encode_set(const VertexSet& w);
VertexSet decode_set(std::uint64_t code);

// Injective finite map, pairs sorted by source.
class Mapping {
 public:
  Mapping() = default;
  Mapping(std::initializer_list<std::pair<Vertex, Vertex>> pairs);
  explicit Mapping(std::vector<std::pair<Vertex, Vertex>> pairs);
  // Domain {0..images.size()-1}.
  static Mapping from_images(const std::vector<Vertex>& images);

  const std::vector<std::pair<Vertex, Vertex>>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  std::optional<Vertex> at(Vertex source) const;
  Vertex operator()(Vertex source) const;
  bool injective() const;
  // Defined exactly on {0..n-1}.
  bool total_on(std::size_t n) const;
  VertexSet image() const;
  Mapping with(Vertex source, Vertex target) const;

  bool operator==(const Mapping&) const = default;

 private:
  std::vector<std::pair<Vertex, Vertex>> pairs_;
};

class FinStructure {
 public:
  FinStructure() = default;
  // Validates entries and arities; tuples are sorted and deduplicated.
  FinStructure(Signature sig, std::size_t size, std::vector<std::vector<Tuple>> tuples);

  static FinStructure empty(Signature sig);
  // Stores both orientations of every edge.
  static FinStructure graph(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges);
  static FinStructure complete_graph(std::size_t n);

  const Signature& signature() const { return sig_; }
  std::size_t size() const { return size_; }
  const std::vector<Tuple>& tuples(std::size_t relation) const { return tuples_[relation]; }
  bool holds(std::size_t relation, std::span<const Vertex> t) const;
  bool holds(std::size_t relation, std::initializer_list<Vertex> t) const;
  std::size_t tuple_count() const;

  bool is_graph() const;
  // Substructure on the given elements, relabelled ascending.
  FinStructure restrict_to(const VertexSet& elements) const;

  bool operator==(const FinStructure&) const = default;

 private:
  Signature sig_;
  std::size_t size_ = 0;
  std::vector<std::vector<Tuple>> tuples_;
};

inline constexpr std::size_t kDefaultIsoCap = 10;

// Lexicographically least injective map A -> B preserving all relations
// both ways (an induced embedding).
std::optional<Mapping> find_embedding(const FinStructure& a, const FinStructure& b,
                                      std::size_t cap = kDefaultIsoCap);
std::optional<Mapping> find_isomorphism(const FinStructure& a, const FinStructure& b,
                                        std::size_t cap = kDefaultIsoCap);
bool is_isomorphism(const Mapping& f, const FinStructure& a, const FinStructure& b);

// Calls fn(tuple) for every tuple over {0..n-1} of the given arity.
template <class Fn>
void for_each_tuple(std::size_t n, std::size_t arity, Fn&& fn) {
  if (n == 0) return;
  Tuple t(arity, 0);
  while (true) {
    fn(static_cast<const Tuple&>(t));
    std::size_t pos = arity;
    while (pos > 0) {
      --pos;
      if (++t[pos] < n) break;
      t[pos] = 0;
      if (pos == 0) return;
    }
    if (arity == 0) return;
  }
}

}  // namespace fraisse
