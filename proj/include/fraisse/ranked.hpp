#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fraisse/bits.hpp"
#include "fraisse/limits.hpp"
#include "fraisse/relational.hpp"

namespace fraisse {

// A diagram vertex as (level, index).
struct LevelVertex {
  std::size_t level = 0;
  Vertex index = 0;
  bool operator==(const LevelVertex&) const = default;
};

// p(i,n) = the (i + ℓ·n)-th odd prime, counting 3 as the 0th.
class PrimeTable {
 public:
  explicit PrimeTable(std::size_t levels);
  std::size_t levels() const { return levels_; }
  std::uint64_t operator()(std::size_t i, Vertex n) const;
  // Cheap lower bound on p(i,n), avoids sieving for huge n.
  std::uint64_t lower_bound(std::size_t i, Vertex n) const;

 private:
  std::size_t levels_;
};

std::uint64_t nth_odd_prime(std::uint64_t k);

bool prime_adjacent(const PrimeTable& pt, LevelVertex lo, LevelVertex hi);
std::uint64_t psi(std::size_t levels, std::size_t i, Vertex n, Vertex m);
bool bits_adjacent(const BitSource& alpha, std::size_t levels, LevelVertex lo, LevelVertex hi);

// Index sets: X, Y on level i+1; Z on level i; X', Y' on level i-1.
struct ExtensionInstance {
  std::size_t level = 0;
  VertexSet x, y, z, xp, yp;
  bool operator==(const ExtensionInstance&) const = default;
};

std::uint64_t prime_witness(const PrimeTable& pt, const ExtensionInstance& inst);

// Does index z on the instance's level realize it in pres?
bool realizes(const LimitPresentation& pres, const ExtensionInstance& inst, Vertex z);

bool check_rd_axioms(const FinStructure& s, const std::vector<std::size_t>& levels);

struct ProbeCaps {
  std::size_t max_set_size = 1;  // |X|, |Y|, |X'|, |Y'|
  std::size_t max_z_size = 1;
  std::optional<std::size_t> max_constrained;  // |X|+|Y|+|X'|+|Y'|
  Vertex max_index = 2;
};

struct ProbeOutcome {
  ExtensionInstance instance;
  std::optional<Vertex> witness;
  std::optional<std::uint64_t> exhausted_at;
};

struct ProbeReport {
  std::size_t levels = 0;
  ProbeCaps caps;
  Vertex z_bound = 0;
  std::vector<ProbeOutcome> outcomes;

  std::size_t satisfied() const;
  std::vector<const ProbeOutcome*> violated() const;
  std::size_t exhausted() const;
};

std::vector<ExtensionInstance> probe_instances(std::size_t levels, const ProbeCaps& caps);
ProbeReport genericity_probe(const LimitPresentation& pres, const ProbeCaps& caps, Vertex z_bound);

}  // namespace fraisse
