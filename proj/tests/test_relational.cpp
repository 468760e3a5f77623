#include <random>

#include "doctest.h"
#include "fraisse/error.hpp"
#include "fraisse/json_io.hpp"
#include "fraisse/limits.hpp"
#include "fraisse/relational.hpp"
#include "oracle.hpp"

using namespace fraisse;

namespace {

FinStructure random_digraph(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::vector<Tuple>> ts(1);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = 0; b < n; ++b)
      if (rng() % 3 == 0) ts[0].push_back({a, b});
  return FinStructure(Signature({{"R", 2}}), n, ts);
}

FinStructure permuted(const FinStructure& s, const std::vector<Vertex>& perm) {
  std::vector<std::vector<Tuple>> ts(s.signature().size());
  for (std::size_t r = 0; r < ts.size(); ++r)
    for (const auto& t : s.tuples(r)) {
      Tuple m;
      for (Vertex x : t) m.push_back(perm[x]);
      ts[r].push_back(m);
    }
  return FinStructure(s.signature(), s.size(), ts);
}

// Every undirected graph on n vertices, by edge mask.
std::vector<FinStructure> all_graphs(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> slots;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) slots.emplace_back(a, b);
  std::vector<FinStructure> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    std::vector<std::pair<Vertex, Vertex>> es;
    for (std::size_t i = 0; i < slots.size(); ++i)
      if ((mask >> i) & 1U) es.push_back(slots[i]);
    out.push_back(FinStructure::graph(n, es));
  }
  return out;
}

}  // namespace

TEST_CASE("encode_set examples") {
  CHECK(encode_set({}) == 0);
  CHECK(encode_set({0, 1}) == 3);
  CHECK(encode_set({1, 3}) == 10);
  CHECK_THROWS_AS(encode_set({64}), Error);
}

TEST_CASE("encode and decode are inverse below 2^16") {
  for (std::uint64_t code = 0; code < (1U << 16); ++code) {
    VertexSet w = decode_set(code);
    REQUIRE(encode_set(w) == code);
    REQUIRE(decode_set(encode_set(w)) == w);
  }
}

TEST_CASE("code order agrees with numeric codes") {
  for (std::uint64_t a = 0; a < 300; ++a)
    for (std::uint64_t b = 0; b < 300; ++b) REQUIRE(code_less(decode_set(a), decode_set(b)) == (a < b));
  // Beyond 64 bits the order still compares top elements first.
  CHECK(code_less(VertexSet{0, 100}, VertexSet{101}));
  CHECK_FALSE(code_less(VertexSet{101}, VertexSet{0, 100}));
}

TEST_CASE("VertexSet normalizes and answers set queries") {
  VertexSet s(std::vector<Vertex>{5, 1, 3, 3});
  CHECK(s.elements() == std::vector<Vertex>{1, 3, 5});
  CHECK(s.max() == 5);
  CHECK(VertexSet{}.max() == -1);
  CHECK(s.contains(3));
  CHECK(VertexSet{1, 5}.subset_of(s));
  CHECK_FALSE(VertexSet{1, 2}.subset_of(s));
  CHECK(s.intersects(VertexSet{0, 5}));
  CHECK_FALSE(s.intersects(VertexSet{0, 2}));
  CHECK(s.rank_of(5) == 2);
  CHECK_FALSE(s.rank_of(4));
}

TEST_CASE("induced examples") {
  auto rado = LimitPresentation::rado();
  CHECK(induced(rado, {0, 1}) == FinStructure::graph(2, {{0, 1}}));
  CHECK(induced(rado, {}).size() == 0);
  CHECK(induced(rado, {0, 2}) == FinStructure::graph(2, {}));
}

TEST_CASE("find_isomorphism examples") {
  auto k3 = FinStructure::complete_graph(3);
  auto path = FinStructure::graph(3, {{0, 1}, {1, 2}});
  CHECK(find_isomorphism(k3, k3) == Mapping::from_images({0, 1, 2}));
  CHECK_FALSE(find_isomorphism(k3, path));
  auto a = FinStructure::graph(3, {{0, 1}});
  auto b = FinStructure::graph(3, {{1, 2}});
  CHECK(find_isomorphism(a, b) == Mapping::from_images({1, 2, 0}));
}

TEST_CASE("find_isomorphism refuses large inputs") {
  auto k11 = FinStructure::complete_graph(11);
  try {
    (void)find_isomorphism(k11, k11);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::too_large);
    CHECK(std::string(e.what()).find("too large for brute force") != std::string::npos);
  }
}

TEST_CASE("isomorphism is symmetric on all small graphs") {
  for (std::size_t n = 1; n <= 4; ++n) {
    auto gs = all_graphs(n);
    for (const auto& a : gs)
      for (const auto& b : gs) REQUIRE(find_isomorphism(a, b).has_value() == find_isomorphism(b, a).has_value());
  }
}

TEST_CASE("isomorphism on 5-element binary structures matches brute force") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 400; ++trial) {
    auto a = random_digraph(rng, 5);
    FinStructure b = a;
    if (trial % 2 == 0) {
      std::vector<Vertex> perm{0, 1, 2, 3, 4};
      std::shuffle(perm.begin(), perm.end(), rng);
      b = permuted(a, perm);
    } else {
      b = random_digraph(rng, 5);
    }
    auto ab = find_isomorphism(a, b);
    auto ba = find_isomorphism(b, a);
    REQUIRE(ab.has_value() == ba.has_value());
    auto expect = oracle::least_isomorphism(a, b);
    REQUIRE(ab.has_value() == expect.has_value());
    if (ab) {
      REQUIRE(*ab == Mapping::from_images(*expect));
      REQUIRE(is_isomorphism(*ab, a, b));
    }
  }
}

TEST_CASE("is_embedding examples") {
  auto rado = LimitPresentation::rado();
  CHECK(is_embedding(Mapping{}, FinStructure::empty(Signature::graph()), rado));
  auto k2 = FinStructure::complete_graph(2);
  CHECK(is_embedding(Mapping{{0, 0}, {1, 1}}, k2, rado));
  CHECK_FALSE(is_embedding(Mapping{{0, 0}, {1, 2}}, k2, rado));
  CHECK_FALSE(is_embedding(Mapping{{0, 1}, {1, 1}}, k2, rado));
}

TEST_CASE("structures are stored canonically") {
  FinStructure s(Signature::graph(), 3, {{{1, 2}, {0, 1}, {1, 0}, {0, 1}, {2, 1}}});
  CHECK(s.tuples(0) == std::vector<Tuple>{{0, 1}, {1, 0}, {1, 2}, {2, 1}});
  CHECK(s.is_graph());
  CHECK_THROWS_AS(FinStructure(Signature::graph(), 2, {{{0, 2}}}), Error);
  CHECK_THROWS_AS(Signature({{"E", 2}, {"E", 1}}), Error);
  CHECK_THROWS_AS(Signature({{"E", 0}}), Error);
}

TEST_CASE("structure JSON round trip and validation") {
  auto text = R"({"signature":[{"name":"E","arity":2}],"size":3,"relations":{"E":[[0,1],[1,0],[1,2],[2,1]]}})";
  auto s = structure_from_json(parse_json(text, "test"));
  CHECK(s == FinStructure::graph(3, {{0, 1}, {1, 2}}));
  CHECK(structure_from_json(to_json(s)) == s);
  auto bad = R"({"signature":[{"name":"E","arity":2}],"size":2,"relations":{"E":[[0,5]]}})";
  CHECK_THROWS_AS(structure_from_json(parse_json(bad, "test")), Error);
  CHECK_THROWS_AS(parse_json("{not json", "test"), Error);
}

TEST_CASE("restrict_to relabels ascending") {
  auto path = FinStructure::graph(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(path.restrict_to({1, 2, 3}) == FinStructure::graph(3, {{0, 1}, {1, 2}}));
  CHECK(path.restrict_to({0, 2}) == FinStructure::graph(2, {}));
}
