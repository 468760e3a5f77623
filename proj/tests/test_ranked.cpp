#include <set>

#include "doctest.h"
#include "fraisse/error.hpp"
#include "fraisse/limits.hpp"
#include "fraisse/ranked.hpp"
#include "oracle.hpp"

using namespace fraisse;

TEST_CASE("prime table follows the odd primes") {
  PrimeTable pt(3);
  CHECK(pt(0, 0) == 3);
  CHECK(pt(1, 0) == 5);
  CHECK(pt(2, 0) == 7);
  CHECK(pt(0, 1) == 11);
  CHECK(pt(1, 1) == 13);
  CHECK(pt(2, 1) == 17);
  std::set<std::uint64_t> seen;
  for (Vertex n = 0; n < 60; ++n)
    for (std::size_t i = 0; i < 3; ++i) {
      REQUIRE(pt(i, n) == oracle::odd_prime(i + 3 * n));
      REQUIRE(pt.lower_bound(i, n) <= pt(i, n));
      seen.insert(pt(i, n));
    }
  CHECK(seen.size() == 180);
  CHECK_THROWS_AS(PrimeTable(1), Error);
}

TEST_CASE("prime_adjacent examples") {
  PrimeTable pt(3);
  CHECK(prime_adjacent(pt, {0, 0}, {1, 3}));
  CHECK_FALSE(prime_adjacent(pt, {0, 0}, {1, 5}));
  CHECK(prime_adjacent(pt, {0, 1}, {1, 11}));
  CHECK_THROWS_AS(prime_adjacent(pt, {0, 0}, {2, 3}), Error);
  CHECK_THROWS_AS(prime_adjacent(pt, {1, 0}, {0, 3}), Error);
}

TEST_CASE("prime_adjacent matches the divisibility definition") {
  PrimeTable pt(4);
  for (std::size_t i = 0; i + 1 < 4; ++i)
    for (Vertex n = 0; n < 40; ++n)
      for (Vertex m = 0; m < 40; ++m) {
        auto p = oracle::odd_prime(i + 4 * n);
        auto q = oracle::odd_prime(i + 1 + 4 * m);
        bool expect = (m != 0 && m % p == 0) || (n != 0 && n % q == 0);
        REQUIRE(prime_adjacent(pt, {i, n}, {i + 1, m}) == expect);
      }
}

TEST_CASE("prime_witness examples") {
  PrimeTable pt(3);
  CHECK(prime_witness(pt, {1, {1}, {}, {}, {1}, {}}) == 187);
  CHECK(prime_witness(pt, {1, {}, {}, {}, {}, {}}) == 1);
  CHECK(prime_witness(pt, {1, {}, {}, {1}, {}, {}}) == 2);
}

TEST_CASE("prime_witness passes its audit on every small instance") {
  for (std::size_t levels : {2U, 3U, 4U}) {
    PrimeTable pt(levels);
    auto pres = LimitPresentation::ldiag_primes(levels);
    ProbeCaps caps{1, 1, std::nullopt, 3};
    for (const auto& inst : probe_instances(levels, caps)) {
      auto z = prime_witness(pt, inst);
      REQUIRE(realizes(pres, inst, z));
    }
  }
}

TEST_CASE("prime_witness rejects malformed instances") {
  PrimeTable pt(3);
  CHECK_THROWS_AS(prime_witness(pt, {1, {1}, {1}, {}, {}, {}}), Error);
  CHECK_THROWS_AS(prime_witness(pt, {2, {1}, {}, {}, {}, {}}), Error);
  CHECK_THROWS_AS(prime_witness(pt, {0, {}, {}, {}, {1}, {}}), Error);
}

TEST_CASE("psi examples and bijectivity") {
  CHECK(psi(2, 0, 0, 0) == 0);
  CHECK(psi(2, 0, 1, 0) == 1);
  CHECK(psi(2, 0, 0, 1) == 2);
  CHECK_THROWS_AS(psi(3, 2, 0, 0), Error);
  // Onto an initial segment: diagonals n+m <= 20 fill 0..(l-1)*231-1.
  for (std::size_t levels : {2U, 3U, 5U}) {
    std::set<std::uint64_t> values;
    for (std::size_t i = 0; i + 1 < levels; ++i)
      for (Vertex d = 0; d <= 20; ++d)
        for (Vertex m = 0; m <= d; ++m) values.insert(psi(levels, i, d - m, m));
    CHECK(values.size() == (levels - 1) * 231);
    CHECK(*values.rbegin() == (levels - 1) * 231 - 1);
  }
}

TEST_CASE("psi is injective on a 10^3-triple sample") {
  std::set<std::uint64_t> values;
  for (std::size_t i = 0; i < 10; ++i)
    for (Vertex n = 0; n < 10; ++n)
      for (Vertex m = 0; m < 10; ++m) values.insert(psi(11, i, n * 37 + 5, m * 101 + 3));
  CHECK(values.size() == 1000);
}

TEST_CASE("bits_adjacent examples") {
  auto alpha = BitSource::cycle("10");
  CHECK(bits_adjacent(alpha, 2, {0, 0}, {1, 0}));
  CHECK_FALSE(bits_adjacent(alpha, 2, {0, 1}, {1, 0}));
  CHECK(bits_adjacent(alpha, 2, {0, 0}, {1, 1}));
  try {
    (void)bits_adjacent(BitSource::explicit_bits("1"), 2, {0, 1}, {1, 0});
    FAIL("expected prefix exhaustion");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::prefix_exhausted);
    CHECK(e.index() == 1);
  }
}

TEST_CASE("flipping one alpha bit changes exactly one succession") {
  const std::size_t levels = 3;
  std::string base(400, '0');
  for (std::size_t t = 0; t < base.size(); t += 3) base[t] = '1';
  auto alpha = BitSource::explicit_bits(base);
  for (std::uint64_t t : {0ULL, 7ULL, 50ULL, 199ULL}) {
    std::string flipped = base;
    flipped[t] = flipped[t] == '1' ? '0' : '1';
    auto beta = BitSource::explicit_bits(flipped);
    int changed = 0;
    for (std::size_t i = 0; i + 1 < levels; ++i)
      for (Vertex n = 0; n < 24; ++n)
        for (Vertex m = 0; m + n < 24; ++m) {
          if (psi(levels, i, n, m) >= base.size()) continue;
          bool a = bits_adjacent(alpha, levels, {i, n}, {i + 1, m});
          bool b = bits_adjacent(beta, levels, {i, n}, {i + 1, m});
          if (a != b) {
            ++changed;
            CHECK(psi(levels, i, n, m) == t);
          }
        }
    CHECK(changed == 1);
  }
}

TEST_CASE("check_rd_axioms examples") {
  auto sig = Signature({{"S", 2}});
  CHECK(check_rd_axioms(FinStructure::empty(sig), {}));
  CHECK(check_rd_axioms(FinStructure(sig, 2, {{{0, 1}}}), {0, 1}));
  CHECK_FALSE(check_rd_axioms(FinStructure(sig, 2, {{{0, 1}}}), {0, 0}));
  CHECK_FALSE(check_rd_axioms(FinStructure(sig, 2, {{{1, 0}}}), {0, 1}));
  // With level symbols every element needs exactly the matching one.
  auto lsig = Signature::ldiag(2);
  CHECK(check_rd_axioms(FinStructure(lsig, 2, {{{0}}, {{1}}, {{0, 1}}}), {0, 1}));
  CHECK_FALSE(check_rd_axioms(FinStructure(lsig, 2, {{{0}}, {}, {}}), {0, 1}));
  CHECK_FALSE(check_rd_axioms(FinStructure(lsig, 2, {{{0}, {1}}, {{1}}, {}}), {0, 1}));
}

TEST_CASE("induced prime diagrams satisfy the axioms") {
  auto pres = LimitPresentation::ldiag_primes(3);
  std::vector<Vertex> xs;
  std::vector<std::size_t> levels;
  for (Vertex v = 0; v < 30; ++v) {
    xs.push_back(v);
    levels.push_back(pres.level_of(v));
  }
  CHECK(check_rd_axioms(induced(pres, VertexSet(xs)), levels));
}

TEST_CASE("genericity probe examples") {
  auto primes = genericity_probe(LimitPresentation::ldiag_primes(3), ProbeCaps{1, 1, std::nullopt, 2}, 10000);
  CHECK(primes.violated().empty());
  CHECK(primes.exhausted() == 0);
  CHECK(primes.satisfied() == primes.outcomes.size());

  auto zeros = genericity_probe(LimitPresentation::ldiag_bits(2, BitSource::zeros()), ProbeCaps{1, 1, std::nullopt, 2},
                                100);
  CHECK_FALSE(zeros.violated().empty());

  auto seven = genericity_probe(LimitPresentation::ldiag_bits(2, BitSource::prng(7)), ProbeCaps{1, 1, std::nullopt, 2},
                                64);
  WARN_MESSAGE(seven.violated().empty(), "seed 7 shows violations within 64 candidates");
}

TEST_CASE("probe instances honour the boundary levels and caps") {
  for (const auto& inst : probe_instances(3, ProbeCaps{1, 1, std::nullopt, 2})) {
    if (inst.level == 0) CHECK((inst.xp.empty() && inst.yp.empty()));
    if (inst.level == 2) CHECK((inst.x.empty() && inst.y.empty()));
    CHECK(inst.x.size() <= 1);
    CHECK(inst.z.size() <= 1);
    CHECK_FALSE(inst.x.intersects(inst.y));
  }
  auto capped = probe_instances(2, ProbeCaps{2, 0, 2, 2});
  for (const auto& inst : capped) CHECK(inst.x.size() + inst.y.size() + inst.xp.size() + inst.yp.size() <= 2);
}

TEST_CASE("enlarging z_bound never loses a witness") {
  auto pres = LimitPresentation::ldiag_bits(3, BitSource::prng(11));
  ProbeCaps caps{1, 1, std::nullopt, 2};
  auto small = genericity_probe(pres, caps, 4);
  auto large = genericity_probe(pres, caps, 64);
  REQUIRE(small.outcomes.size() == large.outcomes.size());
  for (std::size_t i = 0; i < small.outcomes.size(); ++i)
    if (small.outcomes[i].witness) CHECK(large.outcomes[i].witness == small.outcomes[i].witness);
  CHECK(large.satisfied() >= small.satisfied());
}

TEST_CASE("prefix exhaustion is recorded per instance") {
  auto pres = LimitPresentation::ldiag_bits(2, BitSource::explicit_bits("1011"));
  auto report = genericity_probe(pres, ProbeCaps{1, 0, std::nullopt, 1}, 10);
  CHECK(report.exhausted() > 0);
  for (const auto& o : report.outcomes)
    if (o.exhausted_at) CHECK(*o.exhausted_at >= 4);
}
