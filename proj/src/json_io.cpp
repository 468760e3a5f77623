#include "fraisse/json_io.hpp"

#include <fstream>
#include <iterator>

#include "fraisse/error.hpp"

namespace fraisse {

namespace {

template <class F>
auto guarded(const std::string& what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw invalid_input(what + ": " + e.what());
  }
}

std::uint64_t natural(const json& j, const std::string& what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    throw invalid_input(what + " must be a natural number");
  return j.get<std::uint64_t>();
}

}  // namespace

json to_json(const VertexSet& w) { return json(w.elements()); }

VertexSet vertex_set_from_json(const json& j) {
  if (!j.is_array()) throw invalid_input("vertex set must be an array");
  std::vector<Vertex> xs;
  for (const auto& x : j) xs.push_back(natural(x, "vertex"));
  VertexSet s(xs);
  if (s.size() != xs.size()) throw invalid_input("vertex set has repeated elements");
  return s;
}

json to_json(const FinStructure& s) {
  json sig = json::array();
  json rels = json::object();
  for (std::size_t r = 0; r < s.signature().size(); ++r) {
    const auto& sym = s.signature()[r];
    sig.push_back({{"name", sym.name}, {"arity", sym.arity}});
    rels[sym.name] = s.tuples(r);
  }
  return {{"signature", sig}, {"size", s.size()}, {"relations", rels}};
}

FinStructure structure_from_json(const json& j) {
  return guarded("structure", [&] {
    if (!j.is_object()) throw invalid_input("structure must be an object");
    std::vector<RelationSymbol> syms;
    for (const auto& r : j.at("signature")) {
      std::uint64_t arity = natural(r.at("arity"), "arity");
      syms.push_back({r.at("name").get<std::string>(), static_cast<std::size_t>(arity)});
    }
    Signature sig(std::move(syms));
    const std::uint64_t size = natural(j.at("size"), "size");
    std::vector<std::vector<Tuple>> tuples(sig.size());
    if (j.contains("relations")) {
      const auto& rels = j.at("relations");
      if (!rels.is_object()) throw invalid_input("relations must be an object");
      for (const auto& [name, ts] : rels.items()) {
        auto r = sig.index_of(name);
        if (!r) throw invalid_input("relation " + name + " is not in the signature");
        for (const auto& t : ts) {
          Tuple tup;
          for (const auto& v : t) tup.push_back(natural(v, "tuple entry"));
          tuples[*r].push_back(std::move(tup));
        }
      }
    }
    return FinStructure(std::move(sig), size, std::move(tuples));
  });
}

json to_json(const BitSource& b) {
  json inner;
  switch (b.kind()) {
    case BitSource::Kind::prng: inner = {{"prng", {{"seed", b.seed()}}}}; break;
    case BitSource::Kind::file: inner = {{"file", b.path()}}; break;
    case BitSource::Kind::ones: inner = {{"literal", "ones"}}; break;
    case BitSource::Kind::zeros: inner = {{"literal", "zeros"}}; break;
    case BitSource::Kind::explicit_bits: inner = {{"literal", b.pattern()}}; break;
    case BitSource::Kind::cycle: inner = {{"literal", "cycle:" + b.pattern()}}; break;
  }
  if (b.complemented()) return {{"complement", inner}};
  return inner;
}

BitSource bits_from_json(const json& j) {
  return guarded("bit source descriptor", [&]() -> BitSource {
    if (!j.is_object() || j.size() != 1) throw invalid_input("bit source descriptor must have exactly one key");
    if (j.contains("complement")) return bits_from_json(j.at("complement")).complement();
    if (j.contains("prng")) return BitSource::prng(natural(j.at("prng").at("seed"), "seed"));
    if (j.contains("file")) return BitSource::file(j.at("file").get<std::string>());
    if (j.contains("literal")) return BitSource::parse("literal:" + j.at("literal").get<std::string>());
    throw invalid_input("unknown bit source descriptor");
  });
}

json to_json(const LimitPresentation& p) {
  switch (p.kind()) {
    case PresentationKind::rado: return {{"kind", "rado"}};
    case PresentationKind::complete: return {{"kind", "complete"}};
    case PresentationKind::ldiag_primes: return {{"kind", "ldiag_primes"}, {"levels", p.levels()}};
    case PresentationKind::ldiag_bits:
      return {{"kind", "ldiag_bits"}, {"levels", p.levels()}, {"bits", to_json(*p.bits())}};
  }
  return {};
}

LimitPresentation presentation_from_json(const json& j) {
  return guarded("presentation descriptor", [&]() -> LimitPresentation {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "rado") return LimitPresentation::rado();
    if (kind == "complete") return LimitPresentation::complete();
    const auto levels = static_cast<std::size_t>(natural(j.at("levels"), "levels"));
    if (kind == "ldiag_primes") return LimitPresentation::ldiag_primes(levels);
    if (kind == "ldiag_bits") return LimitPresentation::ldiag_bits(levels, bits_from_json(j.at("bits")));
    throw invalid_input("unknown presentation kind " + kind);
  });
}

json to_json(const Chain& c) {
  json out = json::array();
  for (const auto& w : c) out.push_back(to_json(w));
  return out;
}

json chain_document(const Chain& c, std::uint64_t budget, const BitSource& bits) {
  return {{"chain", to_json(c)}, {"budget", budget}, {"bits", to_json(bits)}};
}

json to_json(const EmbeddingCertificate& c) {
  json nu = json::array();
  for (const auto& [s, t] : c.nu.pairs()) nu.push_back({s, t});
  return {{"presentation", to_json(c.presentation)},
          {"beta", to_json(c.beta)},
          {"bits", to_json(c.bits)},
          {"chain", to_json(c.chain)},
          {"nu", nu},
          {"depth", c.chain.size()},
          {"budget", c.budget},
          {"audited_copy_count", c.audited_copy_count}};
}

EmbeddingCertificate certificate_from_json(const json& j) {
  return guarded("certificate", [&] {
    auto pres = presentation_from_json(j.at("presentation"));
    auto beta = structure_from_json(j.at("beta"));
    auto bits = bits_from_json(j.at("bits"));
    Chain chain;
    for (const auto& w : j.at("chain")) chain.push_back(vertex_set_from_json(w));
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (const auto& p : j.at("nu")) {
      if (!p.is_array() || p.size() != 2) throw invalid_input("nu entries must be pairs");
      pairs.emplace_back(natural(p[0], "nu source"), natural(p[1], "nu target"));
    }
    return EmbeddingCertificate{std::move(pres),
                                std::move(beta),
                                std::move(bits),
                                std::move(chain),
                                Mapping(std::move(pairs)),
                                natural(j.at("audited_copy_count"), "audited_copy_count"),
                                natural(j.value("budget", json(0)), "budget")};
  });
}

json to_json(const ExtensionInstance& inst) {
  return {{"level", inst.level}, {"X", to_json(inst.x)},   {"Y", to_json(inst.y)},
          {"Z", to_json(inst.z)},  {"Xp", to_json(inst.xp)}, {"Yp", to_json(inst.yp)}};
}

ExtensionInstance instance_from_json(const json& j) {
  return guarded("extension instance", [&] {
    ExtensionInstance inst;
    inst.level = static_cast<std::size_t>(natural(j.at("level"), "level"));
    auto opt = [&](const char* key) { return j.contains(key) ? vertex_set_from_json(j.at(key)) : VertexSet{}; };
    inst.x = opt("X");
    inst.y = opt("Y");
    inst.z = opt("Z");
    inst.xp = opt("Xp");
    inst.yp = opt("Yp");
    return inst;
  });
}

json to_json(const ProbeReport& r) {
  json outcomes = json::array();
  json violated = json::array();
  for (const auto& o : r.outcomes) {
    json e = {{"instance", to_json(o.instance)},
              {"witness", o.witness ? json(*o.witness) : json(nullptr)}};
    if (o.exhausted_at) e["exhausted_at"] = *o.exhausted_at;
    outcomes.push_back(e);
    if (!o.witness && !o.exhausted_at) violated.push_back(to_json(o.instance));
  }
  json caps = {{"max_set_size", r.caps.max_set_size},
               {"max_z_size", r.caps.max_z_size},
               {"max_index", r.caps.max_index}};
  if (r.caps.max_constrained) caps["max_constrained"] = *r.caps.max_constrained;
  return {{"levels", r.levels},
          {"caps", caps},
          {"z_bound", r.z_bound},
          {"instances", outcomes},
          {"satisfied", r.satisfied()},
          {"exhausted", r.exhausted()},
          {"violated", violated},
          {"summary", violated.empty() ? "no violation found within bounds" : "violations found within bounds"}};
}

json to_json(const IndexedCopy& c) { return {{"j", c.j}, {"set", to_json(c.set)}}; }

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw invalid_input(what + ": " + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_json(text, path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace fraisse
