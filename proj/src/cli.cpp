#include "fraisse/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "fraisse/ages.hpp"
#include "fraisse/bits.hpp"
#include "fraisse/dot.hpp"
#include "fraisse/error.hpp"
#include "fraisse/json_io.hpp"
#include "fraisse/limits.hpp"
#include "fraisse/monochrome.hpp"
#include "fraisse/ranked.hpp"

namespace fraisse::cli {

namespace {

constexpr std::uint64_t kDefaultBudget = 100'000;

struct Options {
  std::string pres = "rado";
  std::size_t levels = 3;
  std::string bits;
  std::string beta = "K2";
  std::size_t depth = 8;
  std::optional<std::uint64_t> budget;
  std::string format = "json";
  bool stamp = false;
  bool complement = false;
  std::size_t count = 10;
  std::size_t n = 8;
  std::string vertices;
  std::string cert;
  std::size_t caps = 1;
  std::optional<std::size_t> max_z;
  std::optional<std::size_t> max_constrained;
  Vertex max_index = 2;
  Vertex zbound = 10'000;
  std::size_t level = 0;
  std::string x, y, z, xp, yp;
  std::string a_file, b_file, h;
  Vertex bound = Vertex{1} << 20;
};

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::budget_exhausted:
    case ErrorKind::search_exhausted: return kBudget;
    case ErrorKind::prefix_exhausted: return kPrefix;
    default: return kInvalid;
  }
}

json error_document(const Error& e) {
  json d = {{"kind", kind_name(e.kind())}, {"message", e.what()}};
  if (e.index()) d["index"] = *e.index();
  if (e.step()) d["step"] = *e.step();
  return {{"error", d}};
}

std::string utc_now() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::uint64_t parse_natural(const std::string& s, const std::string& what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw invalid_input(what + " must be a natural number, got '" + s + "'");
  try {
    return std::stoull(s);
  } catch (const std::out_of_range&) {
    throw invalid_input(what + " is out of range");
  }
}

VertexSet parse_list(const std::string& s, const std::string& what) {
  std::vector<Vertex> xs;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) xs.push_back(parse_natural(item, what));
  VertexSet out(xs);
  if (out.size() != xs.size()) throw invalid_input(what + " has repeated elements");
  return out;
}

std::uint64_t budget_of(const Options& o) {
  if (o.budget) return *o.budget;
  if (const char* env = std::getenv("FORGE_BUDGET")) return parse_natural(env, "FORGE_BUDGET");
  return kDefaultBudget;
}

BitSource bits_of(const std::string& spec) {
  if (spec.empty()) throw invalid_input("a bit source is required (--bits)");
  if (spec.front() == '{') return bits_from_json(parse_json(spec, "bit descriptor"));
  return BitSource::parse(spec);
}

LimitPresentation presentation_of(const Options& o) {
  const std::string& p = o.pres;
  if (!p.empty() && p.front() == '{') return presentation_from_json(parse_json(p, "presentation descriptor"));
  if (p == "rado") return LimitPresentation::rado();
  if (p == "complete") return LimitPresentation::complete();
  if (p == "primes" || p == "ldiag_primes") return LimitPresentation::ldiag_primes(o.levels);
  if (p == "bits" || p == "ldiag_bits") return LimitPresentation::ldiag_bits(o.levels, bits_of(o.bits));
  throw invalid_input("unknown presentation '" + p + "'");
}

FinStructure beta_of(const Options& o) {
  static const std::regex clique("[Kk]([0-9]+)");
  std::smatch m;
  if (std::regex_match(o.beta, m, clique) && !std::filesystem::exists(o.beta)) {
    auto n = parse_natural(m[1], "clique size");
    if (n == 0 || n > kDefaultIsoCap) throw invalid_input("clique size must be between 1 and 10");
    return FinStructure::complete_graph(n);
  }
  return structure_from_json(read_json_file(o.beta));
}

void emit(std::ostream& out, json doc, const Options& o) {
  if (o.stamp) doc["stamp"] = utc_now();
  out << dump(doc);
}

void require_json(const Options& o) {
  if (o.format != "json") throw invalid_input("this command only emits json");
}

int limit_show(const Options& o, std::ostream& out) {
  auto pres = presentation_of(o);
  VertexSet vs;
  if (!o.vertices.empty()) {
    vs = parse_list(o.vertices, "--vertices");
  } else {
    std::vector<Vertex> xs(o.n);
    for (std::size_t i = 0; i < o.n; ++i) xs[i] = i;
    vs = VertexSet(xs);
  }
  if (o.format == "dot") {
    out << to_dot(pres, vs);
    return kOk;
  }
  emit(out, {{"presentation", to_json(pres)}, {"vertices", to_json(vs)}, {"structure", to_json(induced(pres, vs))}},
       o);
  return kOk;
}

int copies_list(const Options& o, std::ostream& out) {
  auto pres = presentation_of(o);
  auto beta = beta_of(o);
  auto copies = enumerate_copies(pres, beta, o.count);
  if (o.format == "dot") {
    VertexSet all;
    std::vector<VertexSet> sets;
    for (const auto& c : copies) {
      all = all.united(c.set);
      sets.push_back(c.set);
    }
    out << to_dot(pres, all, sets);
    return kOk;
  }
  json list = json::array();
  for (const auto& c : copies) list.push_back(to_json(c));
  emit(out, {{"presentation", to_json(pres)}, {"beta", to_json(beta)}, {"copies", list}}, o);
  return kOk;
}

int color_show(const Options& o, std::ostream& out) {
  require_json(o);
  auto pres = presentation_of(o);
  auto beta = beta_of(o);
  auto eps = bits_of(o.bits);
  if (o.complement) eps = eps.complement();
  json list = json::array();
  for (const auto& c : enumerate_copies(pres, beta, o.count)) {
    json e = to_json(c);
    e["color"] = eps.bit(c.j);
    list.push_back(e);
  }
  emit(out, {{"presentation", to_json(pres)}, {"beta", to_json(beta)}, {"bits", to_json(eps)}, {"copies", list}}, o);
  return kOk;
}

int mono_embed(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.format != "json" && o.format != "dot") throw invalid_input("unknown format '" + o.format + "'");
  auto pres = presentation_of(o);
  auto beta = beta_of(o);
  auto eps = bits_of(o.bits);
  if (o.complement) eps = eps.complement();
  const std::uint64_t budget = budget_of(o);
  if (budget == 0) throw invalid_input("budget must be at least 1");
  GreedyState state(pres, beta);
  ChainAttempt attempt = try_build_chain(mu_encoding(state), eps, o.depth, budget);
  if (attempt.failure) {
    const Error& e = *attempt.failure;
    json doc = error_document(e);
    doc["chain"] = to_json(attempt.chain);
    doc["budget"] = budget;
    doc["bits"] = to_json(eps);
    doc["presentation"] = to_json(pres);
    emit(out, doc, o);
    err << "forge: " << e.what() << "\n";
    return exit_code(e.kind());
  }
  auto cert = assemble_certificate(state, eps, attempt.chain, budget);
  if (o.format == "dot") {
    out << certificate_dot(cert);
    return kOk;
  }
  emit(out, to_json(cert), o);
  return kOk;
}

int mono_verify(const Options& o, std::ostream& out) {
  require_json(o);
  if (o.cert.empty()) throw invalid_input("a certificate file is required (--cert)");
  auto cert = certificate_from_json(read_json_file(o.cert));
  bool ok = verify_certificate(cert);
  emit(out, {{"valid", ok}, {"depth", cert.chain.size()}, {"audited_copy_count", cert.audited_copy_count}}, o);
  return ok ? kOk : kFailed;
}

int ldiag_probe(const Options& o, std::ostream& out) {
  require_json(o);
  auto pres = presentation_of(o);
  if (pres.is_graph_kind()) throw invalid_input("ldiag probe needs --pres primes or --pres bits");
  ProbeCaps caps;
  caps.max_set_size = o.caps;
  caps.max_z_size = o.max_z.value_or(o.caps);
  caps.max_constrained = o.max_constrained;
  caps.max_index = o.max_index;
  json doc = to_json(genericity_probe(pres, caps, o.zbound));
  doc["presentation"] = to_json(pres);
  emit(out, doc, o);
  return kOk;
}

int ldiag_witness(const Options& o, std::ostream& out) {
  require_json(o);
  ExtensionInstance inst{o.level,
                         parse_list(o.x, "--X"),
                         parse_list(o.y, "--Y"),
                         parse_list(o.z, "--Z"),
                         parse_list(o.xp, "--Xp"),
                         parse_list(o.yp, "--Yp")};
  PrimeTable pt(o.levels);
  auto pres = LimitPresentation::ldiag_primes(o.levels);
  std::uint64_t z = prime_witness(pt, inst);
  emit(out,
       {{"levels", o.levels}, {"instance", to_json(inst)}, {"z", z}, {"vertex", pres.vertex_at(inst.level, z)}},
       o);
  return kOk;
}

int homog_check(const Options& o, std::ostream& out) {
  require_json(o);
  auto pres = presentation_of(o);
  if (o.b_file.empty()) throw invalid_input("--B is required");
  auto b = structure_from_json(read_json_file(o.b_file));
  if (b.size() == 0) throw invalid_input("B must be non-empty");
  FinStructure a;
  if (!o.a_file.empty()) {
    a = structure_from_json(read_json_file(o.a_file));
  } else {
    std::vector<Vertex> prefix(b.size() - 1);
    for (std::size_t i = 0; i + 1 < b.size(); ++i) prefix[i] = i;
    a = b.restrict_to(VertexSet(prefix));
  }
  std::vector<std::pair<Vertex, Vertex>> pairs;
  std::stringstream ss(o.h);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto colon = item.find(':');
    if (colon == std::string::npos) throw invalid_input("--map entries look like source:target");
    pairs.emplace_back(parse_natural(item.substr(0, colon), "--map source"),
                       parse_natural(item.substr(colon + 1), "--map target"));
  }
  Mapping h(pairs);
  auto g = check_homogeneity_sample(pres, a, b, h, o.bound);
  json ext = nullptr;
  if (g) {
    ext = json::array();
    for (const auto& [s, t] : g->pairs()) ext.push_back({s, t});
  }
  emit(out, {{"presentation", to_json(pres)}, {"bound", o.bound}, {"extension", ext}}, o);
  return g ? kOk : kBudget;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Recursive homogeneous structures and monochromatic embeddings", "forge"};
  app.require_subcommand(1);

  auto pres_opts = [&](CLI::App* c) {
    c->add_option("--pres", o.pres, "rado | complete | primes | bits | JSON descriptor");
    c->add_option("--levels", o.levels, "number of levels for diagram presentations");
    c->add_option("--bits", o.bits, "bit source: prng:SEED | file:PATH | literal:... | JSON");
  };
  auto common = [&](CLI::App* c) {
    c->add_option("--format", o.format, "json | dot")->check(CLI::IsMember({"json", "dot"}));
    c->add_flag("--stamp", o.stamp, "add a UTC timestamp to the output");
  };

  auto* limit = app.add_subcommand("limit", "presentations")->require_subcommand(1);
  auto* limit_show_cmd = limit->add_subcommand("show", "induced structure on a vertex set");
  pres_opts(limit_show_cmd);
  common(limit_show_cmd);
  limit_show_cmd->add_option("--n", o.n, "show vertices 0..n-1");
  limit_show_cmd->add_option("--vertices", o.vertices, "comma-separated vertex ids");

  auto* copies = app.add_subcommand("copies", "copies of beta")->require_subcommand(1);
  auto* copies_list_cmd = copies->add_subcommand("list", "first copies in code order");
  pres_opts(copies_list_cmd);
  common(copies_list_cmd);
  copies_list_cmd->add_option("--beta", o.beta, "structure file, or Kn for a clique");
  copies_list_cmd->add_option("--count", o.count, "number of copies");

  auto* color = app.add_subcommand("color", "colourings of copies")->require_subcommand(1);
  auto* color_show_cmd = color->add_subcommand("show", "colour of each listed copy");
  pres_opts(color_show_cmd);
  common(color_show_cmd);
  color_show_cmd->add_option("--beta", o.beta, "structure file, or Kn for a clique");
  color_show_cmd->add_option("--count", o.count, "number of copies");
  color_show_cmd->add_flag("--complement", o.complement, "flip every bit");

  auto* mono = app.add_subcommand("mono", "monochromatic embeddings")->require_subcommand(1);
  auto* embed_cmd = mono->add_subcommand("embed", "build a certificate");
  pres_opts(embed_cmd);
  common(embed_cmd);
  embed_cmd->add_option("--beta", o.beta, "structure file, or Kn for a clique");
  embed_cmd->add_option("--depth", o.depth, "chain length");
  embed_cmd->add_option("--budget", o.budget, "search budget per chain step (env FORGE_BUDGET)");
  embed_cmd->add_flag("--complement", o.complement, "aim for colour 0 instead of 1");
  auto* verify_cmd = mono->add_subcommand("verify", "audit a certificate");
  common(verify_cmd);
  verify_cmd->add_option("--cert,cert", o.cert, "certificate JSON file");

  auto* ldiag = app.add_subcommand("ldiag", "ranked diagrams")->require_subcommand(1);
  auto* probe_cmd = ldiag->add_subcommand("probe", "bounded extension-axiom probe");
  pres_opts(probe_cmd);
  common(probe_cmd);
  probe_cmd->add_option("--caps", o.caps, "largest |X|, |Y|, |Z|, |X'|, |Y'|");
  probe_cmd->add_option("--max-z", o.max_z, "largest |Z| (defaults to --caps)");
  probe_cmd->add_option("--max-constrained", o.max_constrained, "largest |X|+|Y|+|X'|+|Y'|");
  probe_cmd->add_option("--max-index", o.max_index, "largest element index in instances");
  probe_cmd->add_option("--zbound", o.zbound, "largest witness index searched");
  auto* witness_cmd = ldiag->add_subcommand("witness", "prime-construction witness for one instance");
  common(witness_cmd);
  witness_cmd->add_option("--levels", o.levels, "number of levels");
  witness_cmd->add_option("--level", o.level, "level of the new element");
  witness_cmd->add_option("--X", o.x, "indices on the level above that must succeed z");
  witness_cmd->add_option("--Y", o.y, "indices on the level above that must not");
  witness_cmd->add_option("--Z", o.z, "indices z must avoid");
  witness_cmd->add_option("--Xp", o.xp, "indices on the level below that z must succeed");
  witness_cmd->add_option("--Yp", o.yp, "indices on the level below that it must not");

  auto* homog = app.add_subcommand("homog", "homogeneity")->require_subcommand(1);
  auto* check_cmd = homog->add_subcommand("check", "extend an embedding by one point");
  pres_opts(check_cmd);
  common(check_cmd);
  check_cmd->add_option("--A", o.a_file, "structure file (defaults to B minus its last element)");
  check_cmd->add_option("--B", o.b_file, "structure file");
  check_cmd->add_option("--map", o.h, "embedding of A as source:target pairs, e.g. 0:0,1:3");
  check_cmd->add_option("--bound", o.bound, "largest witness searched");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (limit_show_cmd->parsed()) return limit_show(o, out);
    if (copies_list_cmd->parsed()) return copies_list(o, out);
    if (color_show_cmd->parsed()) return color_show(o, out);
    if (embed_cmd->parsed()) return mono_embed(o, out, err);
    if (verify_cmd->parsed()) return mono_verify(o, out);
    if (probe_cmd->parsed()) return ldiag_probe(o, out);
    if (witness_cmd->parsed()) return ldiag_witness(o, out);
    if (check_cmd->parsed()) return homog_check(o, out);
  } catch (const Error& e) {
    emit(out, error_document(e), o);
    err << "forge: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "forge: internal error: " << e.what() << "\n";
    return kFailed;
  }
  return kInvalid;
}

}  // namespace fraisse::cli
