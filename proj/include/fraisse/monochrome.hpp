#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "fraisse/ages.hpp"
#include "fraisse/bits.hpp"
#include "fraisse/encodings.hpp"
#include "fraisse/limits.hpp"
#include "fraisse/relational.hpp"

namespace fraisse {

struct GreedyNode {
  VertexSet mu;
  Mapping nu;  // domain {0..|w|-1}
};

// Memoized μ/ν for the greedy construction. Single writer.
class GreedyState {
 public:
  GreedyState(LimitPresentation pres, FinStructure beta, SearchLimits limits = {});

  const LimitPresentation& presentation() const { return pres_; }
  const FinStructure& beta() const { return beta_; }
  CopyEnumeration& copies() { return copies_; }

  // μ(w), ν(w), built along the chain of w's prefixes.
  const GreedyNode& node(const VertexSet& w);
  std::pair<VertexSet, Mapping> step_mu(const VertexSet& w, Vertex k);
  // The template V planted over μ(w), and its extension point.
  const VertexSet& template_for(const VertexSet& w);
  Vertex extension_point(const VertexSet& w);
  // Indices of the copies of beta inside μ(w), ascending.
  const std::vector<std::uint64_t>& members(const VertexSet& w);

 private:
  struct Expansion {
    VertexSet tmpl;
    Vertex point = 0;
    std::unique_ptr<DisjointCopySequence> seq;
  };
  Expansion& expansion(const VertexSet& w);

  LimitPresentation pres_;
  FinStructure beta_;
  SearchLimits limits_;
  CopyEnumeration copies_;
  std::map<VertexSet, GreedyNode, CodeLess> nodes_;
  std::map<VertexSet, Expansion, CodeLess> expansions_;
  std::map<VertexSet, std::vector<std::uint64_t>, CodeLess> members_;
};

// π(w) = [μ(w), β]. The state must outlive the encoding.
EffectiveEncoding mu_encoding(GreedyState& state);

struct EmbeddingCertificate {
  LimitPresentation presentation;
  FinStructure beta;
  BitSource bits;
  Chain chain;
  Mapping nu;
  std::uint64_t audited_copy_count = 0;
  std::uint64_t budget = 0;
};

// ν = ν(w_last) for a built chain, with its audits.
EmbeddingCertificate assemble_certificate(GreedyState& state, const BitSource& eps, const Chain& chain,
                                          std::uint64_t budget);
EmbeddingCertificate monochromatic_embedding(const LimitPresentation& pres, const FinStructure& beta,
                                             const BitSource& eps, std::size_t depth, std::uint64_t budget,
                                             SearchLimits limits = {});
bool verify_certificate(const EmbeddingCertificate& cert, SearchLimits limits = {});

}  // namespace fraisse
