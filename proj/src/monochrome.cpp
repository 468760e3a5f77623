#include "fraisse/monochrome.hpp"

#include <algorithm>

#include "fraisse/error.hpp"

namespace fraisse {

namespace {

VertexSet prefix_set(std::size_t n) {
  std::vector<Vertex> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = i;
  return VertexSet(std::move(xs));
}

VertexSet without_max(const VertexSet& w) {
  std::vector<Vertex> xs(w.begin(), w.end());
  xs.pop_back();
  return VertexSet(std::move(xs));
}

}  // namespace

GreedyState::GreedyState(LimitPresentation pres, FinStructure beta, SearchLimits limits)
    : pres_(pres), beta_(beta), limits_(limits), copies_(std::move(pres), std::move(beta), limits) {
  nodes_.emplace(VertexSet{}, GreedyNode{});
}

const GreedyNode& GreedyState::node(const VertexSet& w) {
  auto it = nodes_.find(w);
  if (it != nodes_.end()) return it->second;
  step_mu(without_max(w), static_cast<Vertex>(w.max()));
  return nodes_.at(w);
}

GreedyState::Expansion& GreedyState::expansion(const VertexSet& w) {
  auto it = expansions_.find(w);
  if (it != expansions_.end()) return it->second;
  const GreedyNode base = node(w);
  const std::size_t n = w.size();

  // One-point extension realizing element n's type over {0..n-1}.
  const FinStructure target = induced(pres_, prefix_set(n + 1));
  ExtensionTask task = extension_type(pres_, target, base.nu);
  task.excluded = base.mu;
  Vertex point = 0;
  while (true) {
    auto z = extension_witness(pres_, task, limits_.witness_bound);
    if (!z)
      throw Error(ErrorKind::search_exhausted, "no extension point for element " + std::to_string(n) +
                                                   " below " + std::to_string(limits_.witness_bound));
    if (is_embedding(base.nu.with(n, *z), target, pres_)) {
      point = *z;
      break;
    }
    task.excluded = task.excluded.with(*z);
  }

  // Least copy of beta avoiding μ(w) and the point.
  const VertexSet taken = base.mu.with(point);
  VertexSet copy;
  for (std::uint64_t j = 0;; ++j) {
    copy = copies_.at(j);
    if (!copy.intersects(taken)) break;
  }

  Expansion e;
  e.tmpl = copy.with(point);
  e.point = point;
  e.seq = std::make_unique<DisjointCopySequence>(pres_, base.mu, e.tmpl, limits_);
  return expansions_.emplace(w, std::move(e)).first->second;
}

std::pair<VertexSet, Mapping> GreedyState::step_mu(const VertexSet& w, Vertex k) {
  if (static_cast<std::int64_t>(k) <= w.max()) throw Error(ErrorKind::precondition, "step_mu needs k > max w");
  const VertexSet wk = w.with(k);
  if (auto it = nodes_.find(wk); it != nodes_.end()) return {it->second.mu, it->second.nu};
  Expansion& e = expansion(w);
  const GreedyNode& base = nodes_.at(w);
  const std::size_t k_index = static_cast<std::size_t>(k - static_cast<Vertex>(w.max() + 1));
  const VertexSet& vk = e.seq->at(k_index);
  const Vertex image = vk[*e.tmpl.rank_of(e.point)];
  GreedyNode next{base.mu.united(vk), base.nu.with(w.size(), image)};
  auto& stored = nodes_.emplace(wk, std::move(next)).first->second;
  return {stored.mu, stored.nu};
}

const VertexSet& GreedyState::template_for(const VertexSet& w) { return expansion(w).tmpl; }

Vertex GreedyState::extension_point(const VertexSet& w) { return expansion(w).point; }

const std::vector<std::uint64_t>& GreedyState::members(const VertexSet& w) {
  auto it = members_.find(w);
  if (it != members_.end()) return it->second;
  auto js = copy_indices_within(copies_, node(w).mu);
  return members_.emplace(w, std::move(js)).first->second;
}

EffectiveEncoding mu_encoding(GreedyState& state) {
  EffectiveEncoding e;
  e.contains = [&state](std::uint64_t j, const VertexSet& w) {
    return state.copies().at(j).subset_of(state.node(w).mu);
  };
  e.size = [&state](const VertexSet& w) { return static_cast<std::uint64_t>(state.members(w).size()); };
  e.index_bound = [&state](const VertexSet& w) {
    const auto& js = state.members(w);
    return js.empty() ? std::int64_t{-1} : static_cast<std::int64_t>(js.back());
  };
  e.members = [&state](const VertexSet& w) { return state.members(w); };
  return e;
}

EmbeddingCertificate assemble_certificate(GreedyState& state, const BitSource& eps, const Chain& chain,
                                          std::uint64_t budget) {
  const VertexSet last = chain.empty() ? VertexSet{} : chain.back();
  const GreedyNode& nd = state.node(last);
  const FinStructure prefix = induced(state.presentation(), prefix_set(chain.size()));
  if (!is_embedding(nd.nu, prefix, state.presentation()))
    throw std::logic_error("greedy construction produced a non-embedding");
  auto js = copy_indices_within(state.copies(), nd.nu.image());
  for (std::uint64_t j : js)
    if (eps.bit(j) != 1) throw std::logic_error("image copy with colour 0 at index " + std::to_string(j));
  return EmbeddingCertificate{state.presentation(), state.beta(), eps, chain, nd.nu, js.size(), budget};
}

EmbeddingCertificate monochromatic_embedding(const LimitPresentation& pres, const FinStructure& beta,
                                             const BitSource& eps, std::size_t depth, std::uint64_t budget,
                                             SearchLimits limits) {
  GreedyState state(pres, beta, limits);
  Chain chain = build_chain(mu_encoding(state), eps, depth, budget);
  return assemble_certificate(state, eps, chain, budget);
}

bool verify_certificate(const EmbeddingCertificate& cert, SearchLimits limits) {
  const auto& pres = cert.presentation;
  const std::size_t depth = cert.chain.size();
  for (std::size_t n = 0; n < depth; ++n) {
    const VertexSet prev = n == 0 ? VertexSet{} : cert.chain[n - 1];
    const VertexSet& cur = cert.chain[n];
    if (cur.size() != prev.size() + 1 || !prev.subset_of(cur) || cur.max() <= prev.max()) return false;
  }
  if (!cert.nu.total_on(depth) || !cert.nu.injective()) return false;
  try {
    if (!is_embedding(cert.nu, induced(pres, prefix_set(depth)), pres)) return false;
    // Fresh enumeration; no state shared with the construction.
    CopyEnumeration copies(pres, cert.beta, limits);
    const VertexSet image = cert.nu.image();
    std::uint64_t found = 0;
    bool ok = true;
    std::vector<Vertex> buf;
    std::vector<std::size_t> idx(cert.beta.size());
    const std::size_t b = cert.beta.size();
    if (b > image.size()) return cert.audited_copy_count == 0;
    for (std::size_t i = 0; i < b; ++i) idx[i] = i;
    while (ok) {
      buf.clear();
      for (std::size_t i : idx) buf.push_back(image[i]);
      VertexSet sub(buf);
      if (find_isomorphism(induced(pres, sub), cert.beta)) {
        ++found;
        auto j = copies.index_of(sub);
        if (!j || cert.bits.bit(*j) != 1) ok = false;
      }
      std::size_t i = b;
      while (i > 0 && idx[i - 1] == image.size() - b + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t t = i; t < b; ++t) idx[t] = idx[t - 1] + 1;
    }
    return ok && found == cert.audited_copy_count;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::prefix_exhausted) return false;
    throw;
  }
}

}  // namespace fraisse
