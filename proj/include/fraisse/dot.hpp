#pragma once

#include <string>
#include <vector>

#include "fraisse/limits.hpp"
#include "fraisse/monochrome.hpp"
#include "fraisse/relational.hpp"

namespace fraisse {

// Graph kinds draw an undirected graph; diagram kinds draw S upward, one rank per level.
std::string to_dot(const LimitPresentation& pres, const VertexSet& vertices,
                   const std::vector<VertexSet>& highlight = {});
std::string certificate_dot(const EmbeddingCertificate& cert);

}  // namespace fraisse
