#include "fraisse/dot.hpp"

#include <set>
#include <sstream>

namespace fraisse {

std::string to_dot(const LimitPresentation& pres, const VertexSet& vertices,
                   const std::vector<VertexSet>& highlight) {
  std::set<Vertex> marked;
  std::set<std::pair<Vertex, Vertex>> marked_edges;
  for (const auto& c : highlight)
    for (Vertex a : c) {
      marked.insert(a);
      for (Vertex b : c)
        if (a < b) marked_edges.insert({a, b});
    }
  std::ostringstream out;
  if (pres.is_graph_kind()) {
    out << "graph G {\n";
    for (Vertex v : vertices)
      out << "  " << v << (marked.count(v) ? " [style=bold,color=red]" : "") << ";\n";
    for (std::size_t i = 0; i < vertices.size(); ++i)
      for (std::size_t j = i + 1; j < vertices.size(); ++j) {
        Vertex a = vertices[i], b = vertices[j];
        if (!pres.adjacent(a, b)) continue;
        out << "  " << a << " -- " << b << (marked_edges.count({a, b}) ? " [color=red,penwidth=2]" : "") << ";\n";
      }
    out << "}\n";
    return out.str();
  }
  const std::size_t l = pres.levels();
  out << "digraph D {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < l; ++i) {
    out << "  subgraph level" << i << " { rank=same;";
    for (Vertex v : vertices)
      if (pres.level_of(v) == i) out << " \"" << i << "," << pres.index_of(v) << "\";";
    out << " }\n";
  }
  for (Vertex a : vertices)
    for (Vertex b : vertices)
      if (pres.holds(l, {a, b}))
        out << "  \"" << pres.level_of(a) << "," << pres.index_of(a) << "\" -> \"" << pres.level_of(b) << ","
            << pres.index_of(b) << "\";\n";
  out << "}\n";
  return out.str();
}

std::string certificate_dot(const EmbeddingCertificate& cert) {
  const VertexSet image = cert.nu.image();
  CopyEnumeration copies(cert.presentation, cert.beta);
  std::vector<VertexSet> found;
  for (std::uint64_t j : copy_indices_within(copies, image)) found.push_back(copies.at(j));
  return to_dot(cert.presentation, image, found);
}

}  // namespace fraisse
