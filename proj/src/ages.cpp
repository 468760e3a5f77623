#include "fraisse/ages.hpp"

#include <algorithm>

#include "fraisse/error.hpp"

namespace fraisse {

namespace {

Error density_exhausted(Vertex bound) {
  return Error(ErrorKind::search_exhausted,
               "density bound exhausted: search passed vertex " + std::to_string(bound));
}

bool is_clique(const FinStructure& s) {
  if (!s.is_graph()) return false;
  for (Vertex a = 0; a < s.size(); ++a)
    for (Vertex b = a + 1; b < s.size(); ++b)
      if (!s.holds(0, {a, b})) return false;
  return true;
}

// Calls fn on every k-subset of s, in lexicographic order of positions.
template <class Fn>
void for_each_subset(const VertexSet& s, std::size_t k, Fn&& fn) {
  const std::size_t n = s.size();
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  std::vector<Vertex> buf(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) buf[i] = s[idx[i]];
    fn(VertexSet(buf));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t t = i; t < k; ++t) idx[t] = idx[t - 1] + 1;
  }
}

}  // namespace

static std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (n < k) return 0;
  unsigned __int128 c = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    c = c * (n - i) / (i + 1);
    if (c > UINT64_MAX) throw Error(ErrorKind::too_large, "copy count overflow");
  }
  return static_cast<std::uint64_t>(c);
}

CopyEnumeration::CopyEnumeration(LimitPresentation pres, FinStructure beta, SearchLimits limits)
    : pres_(std::move(pres)), beta_(std::move(beta)), limits_(limits) {
  if (beta_.size() == 0) throw Error(ErrorKind::precondition, "beta must have at least one element");
  if (!(beta_.signature() == pres_.signature()))
    throw invalid_input("beta's signature does not match the presentation");
  clique_beta_ = pres_.has_lower_neighbors() && is_clique(beta_);
  all_subsets_ = pres_.kind() == PresentationKind::complete && is_clique(beta_);
}

bool CopyEnumeration::is_copy(const VertexSet& s) const {
  if (s.size() != beta_.size()) return false;
  if (all_subsets_) return true;
  if (clique_beta_) {
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t b = a + 1; b < s.size(); ++b)
        if (!pres_.adjacent(s[a], s[b])) return false;
    return true;
  }
  return find_isomorphism(induced(pres_, s), beta_).has_value();
}

std::vector<VertexSet> CopyEnumeration::list_with_max(Vertex m) const {
  std::vector<VertexSet> out;
  const std::size_t b = beta_.size();
  if (b == 1) {
    if (is_copy(VertexSet{m})) out.push_back(VertexSet{m});
    return out;
  }
  if (m + 1 < b) return out;
  std::vector<Vertex> chosen{m};
  std::vector<Vertex> lower;
  if (clique_beta_) lower = pres_.lower_neighbors(m);

  auto partial_ok = [&]() {
    if (clique_beta_) return true;
    return find_embedding(induced(pres_, VertexSet(chosen)), beta_).has_value();
  };

  auto rec = [&](auto&& self) -> void {
    if (chosen.size() == b) {
      VertexSet s(chosen);
      if (is_copy(s)) out.push_back(std::move(s));
      return;
    }
    const Vertex upper = chosen.back();
    const Vertex least = static_cast<Vertex>(b - chosen.size() - 1);
    auto visit = [&](Vertex l) {
      chosen.push_back(l);
      if (partial_ok()) self(self);
      chosen.pop_back();
    };
    if (clique_beta_) {
      for (Vertex l : lower) {
        if (l >= upper) break;
        if (l < least) continue;
        bool ok = true;
        for (std::size_t i = 1; i < chosen.size() && ok; ++i) ok = pres_.adjacent(l, chosen[i]);
        if (ok) visit(l);
      }
    } else {
      for (Vertex l = least; l < upper; ++l) visit(l);
    }
  };
  rec(rec);
  return out;
}

std::uint64_t CopyEnumeration::count_with_max(Vertex m) const {
  // Every (b-1)-subset below m completes a clique.
  if (all_subsets_) return binomial(m, beta_.size() - 1);
  return list_with_max(m).size();
}

void CopyEnumeration::scan_through(Vertex m) {
  while (below_.size() <= m + 1) {
    Vertex next = static_cast<Vertex>(below_.size() - 1);
    if (next > limits_.max_vertex) throw density_exhausted(limits_.max_vertex);
    auto it = cache_.find(next);
    std::uint64_t n = (it != cache_.end()) ? it->second.size() : count_with_max(next);
    below_.push_back(below_.back() + n);
  }
}

const std::vector<VertexSet>& CopyEnumeration::with_max(Vertex m) {
  auto it = cache_.find(m);
  if (it != cache_.end()) return it->second;
  if (m > limits_.max_vertex) throw density_exhausted(limits_.max_vertex);
  if (cache_.size() >= 256) cache_.clear();
  return cache_.emplace(m, list_with_max(m)).first->second;
}

std::uint64_t CopyEnumeration::count_below(Vertex m) {
  if (m > 0) scan_through(m - 1);
  return below_[m];
}

VertexSet CopyEnumeration::at(std::uint64_t j) {
  if (all_subsets_) {
    // Colex unranking of b-subsets.
    std::vector<Vertex> xs(beta_.size());
    for (std::size_t i = beta_.size(); i-- > 0;) {
      Vertex x = i;
      while (binomial(x + 1, i + 1) <= j) ++x;
      if (x > limits_.max_vertex) throw density_exhausted(limits_.max_vertex);
      xs[i] = x;
      j -= binomial(x, i + 1);
    }
    return VertexSet(xs);
  }
  while (below_.back() <= j) scan_through(static_cast<Vertex>(below_.size() - 1));
  auto it = std::upper_bound(below_.begin(), below_.end(), j);
  Vertex m = static_cast<Vertex>(it - below_.begin()) - 1;
  return with_max(m)[j - below_[m]];
}

std::vector<IndexedCopy> CopyEnumeration::take(std::uint64_t count) {
  std::vector<IndexedCopy> out;
  for (std::uint64_t j = 0; j < count; ++j) out.push_back({j, at(j)});
  return out;
}

std::optional<std::uint64_t> CopyEnumeration::index_of(const VertexSet& s) {
  if (s.empty() || !is_copy(s)) return std::nullopt;
  if (all_subsets_) {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < s.size(); ++i) r += binomial(s[i], i + 1);
    return r;
  }
  Vertex m = static_cast<Vertex>(s.max());
  std::uint64_t base = count_below(m);
  const auto& list = with_max(m);
  auto it = std::lower_bound(list.begin(), list.end(), s, code_less);
  if (it == list.end() || !(*it == s)) throw std::logic_error("copy missing from its own listing");
  return base + static_cast<std::uint64_t>(it - list.begin());
}

std::vector<IndexedCopy> enumerate_copies(const LimitPresentation& pres, const FinStructure& beta,
                                          std::uint64_t count, SearchLimits limits) {
  CopyEnumeration e(pres, beta, limits);
  return e.take(count);
}

std::vector<std::uint64_t> copy_indices_within(CopyEnumeration& copies, const VertexSet& s) {
  std::vector<std::uint64_t> out;
  for_each_subset(s, copies.beta().size(), [&](const VertexSet& sub) {
    if (auto j = copies.index_of(sub)) out.push_back(*j);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t max_copy_index(CopyEnumeration& copies, const VertexSet& s) {
  auto js = copy_indices_within(copies, s);
  return js.empty() ? -1 : static_cast<std::int64_t>(js.back());
}

std::int64_t max_copy_index(const LimitPresentation& pres, const FinStructure& beta, const VertexSet& s) {
  CopyEnumeration e(pres, beta);
  return max_copy_index(e, s);
}

// ---------------------------------------------------------------------------

namespace {

// Truth values of every tuple over base ∪ {c} that mentions c, in a fixed order.
std::vector<bool> type_over(const LimitPresentation& pres, const VertexSet& base, Vertex c) {
  if (pres.is_graph_kind()) {
    std::vector<bool> out(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) out[i] = pres.adjacent(c, base[i]);
    return out;
  }
  std::vector<Vertex> pts(base.begin(), base.end());
  pts.push_back(c);
  const std::size_t last = pts.size() - 1;
  const auto& sig = pres.signature();
  std::vector<bool> out;
  Tuple mapped;
  for (std::size_t r = 0; r < sig.size(); ++r) {
    for_each_tuple(pts.size(), sig[r].arity, [&](const Tuple& t) {
      if (std::find(t.begin(), t.end(), last) == t.end()) return;
      mapped.resize(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) mapped[i] = pts[t[i]];
      out.push_back(pres.holds(r, mapped));
    });
  }
  return out;
}

}  // namespace

DisjointCopySequence::DisjointCopySequence(LimitPresentation pres, VertexSet u, VertexSet v, SearchLimits limits)
    : pres_(std::move(pres)), u_(std::move(u)), v_(std::move(v)), limits_(limits) {
  if (u_.intersects(v_)) throw Error(ErrorKind::precondition, "U and V must be disjoint");
  seq_.push_back(v_);
  used_ = v_;
  cands_.resize(v_.size());
  cursor_.assign(v_.size(), 0);
  if (pres_.is_graph_kind()) {
    adj_.assign(v_.size(), std::vector<bool>(v_.size(), false));
    for (std::size_t a = 0; a < v_.size(); ++a)
      for (std::size_t b = 0; b < v_.size(); ++b) adj_[a][b] = pres_.adjacent(v_[a], v_[b]);
  }
}

const VertexSet& DisjointCopySequence::at(std::size_t k) {
  while (seq_.size() <= k) {
    if (exhausted_) throw *exhausted_;
    VertexSet next_set;
    try {
      next_set = next();
    } catch (const Error& e) {
      exhausted_ = e;
      throw;
    }
    used_ = used_.united(next_set);
    seq_.push_back(std::move(next_set));
  }
  return seq_[k];
}

bool DisjointCopySequence::fits(std::size_t pos, Vertex c, const std::vector<Vertex>& assigned) const {
  const std::size_t s = v_.size();
  if (pres_.is_graph_kind()) {
    for (std::size_t q = pos + 1; q < s; ++q)
      if (pres_.adjacent(c, assigned[q]) != adj_[pos][q]) return false;
    return true;
  }
  // Tuples over U ∪ {positions >= pos} that mention pos and another position.
  std::vector<Vertex> src(u_.begin(), u_.end());
  std::vector<Vertex> dst(u_.begin(), u_.end());
  const std::size_t off = src.size();
  for (std::size_t q = pos; q < s; ++q) {
    src.push_back(v_[q]);
    dst.push_back(q == pos ? c : assigned[q]);
  }
  const auto& sig = pres_.signature();
  Tuple ts, td;
  for (std::size_t r = 0; r < sig.size(); ++r) {
    if (sig[r].arity < 2) continue;
    bool ok = true;
    for_each_tuple(src.size(), sig[r].arity, [&](const Tuple& t) {
      if (!ok) return;
      bool has_new = false, has_other = false;
      for (Vertex i : t) {
        if (i == off) has_new = true;
        else if (i > off) has_other = true;
      }
      if (!has_new || !has_other) return;
      ts.resize(t.size());
      td.resize(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) {
        ts[i] = src[t[i]];
        td[i] = dst[t[i]];
      }
      if (pres_.holds(r, ts) != pres_.holds(r, td)) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

bool DisjointCopySequence::profile_ok(std::size_t pos, Vertex c) const {
  return std::binary_search(cands_[pos].begin(), cands_[pos].end(), c);
}

std::optional<std::size_t> DisjointCopySequence::higher_neighbor(std::size_t pos) const {
  if (!pres_.has_lower_neighbors()) return std::nullopt;
  for (std::size_t q = pos + 1; q < v_.size(); ++q)
    if (adj_[pos][q]) return q;
  return std::nullopt;
}

bool DisjointCopySequence::complete_lower(std::size_t pos, std::vector<Vertex>& assigned) {
  // pos counts down; SIZE_MAX after position 0 is filled.
  if (pos == static_cast<std::size_t>(-1)) return true;
  const Vertex upper = assigned[pos + 1];
  auto attempt = [&](Vertex d) {
    if (++work_ > limits_.max_work)
      throw Error(ErrorKind::search_exhausted,
                  "density bound exhausted: work limit " + std::to_string(limits_.max_work) + " reached");
    if (used_.contains(d) || !fits(pos, d, assigned)) return false;
    assigned[pos] = d;
    return complete_lower(pos - 1, assigned);
  };
  if (auto q = higher_neighbor(pos)) {
    // Only the lower neighbours of an adjacent, already placed vertex qualify.
    for (Vertex d : pres_.lower_neighbors(assigned[*q]))
      if (d < upper && profile_ok(pos, d) && attempt(d)) return true;
    return false;
  }
  // Candidates before the cursor are all used; used_ only grows.
  auto& cur = cursor_[pos];
  while (cur < cands_[pos].size() && used_.contains(cands_[pos][cur])) ++cur;
  for (std::size_t i = cur; i < cands_[pos].size() && cands_[pos][i] < upper; ++i)
    if (attempt(cands_[pos][i])) return true;
  return false;
}

VertexSet DisjointCopySequence::next() {
  const std::size_t s = v_.size();
  if (s == 0) return {};
  std::vector<std::vector<bool>> want(s);
  for (std::size_t p = 0; p < s; ++p) want[p] = type_over(pres_, u_, v_[p]);
  Vertex top = (seq_.size() == 1) ? 0 : static_cast<Vertex>(seq_.back().max());
  std::vector<Vertex> assigned(s);
  work_ = 0;
  for (;; ++top) {
    if (top > limits_.max_vertex) throw density_exhausted(limits_.max_vertex);
    while (scanned_ <= top) {
      Vertex c = scanned_++;
      if (u_.contains(c)) continue;
      auto ty = type_over(pres_, u_, c);
      for (std::size_t p = 0; p < s; ++p)
        if (ty == want[p]) cands_[p].push_back(c);
    }
    if (used_.contains(top) || !profile_ok(s - 1, top)) continue;
    assigned[s - 1] = top;
    if (complete_lower(s - 2, assigned)) return VertexSet(assigned);
  }
}

VertexSet disjoint_copy_sequence(const LimitPresentation& pres, const VertexSet& u, const VertexSet& v,
                                 std::size_t k, SearchLimits limits) {
  DisjointCopySequence seq(pres, u, v, limits);
  return seq.at(k);
}

}  // namespace fraisse
