#pragma once

#include <string>

#include "json.hpp"

#include "fraisse/ages.hpp"
#include "fraisse/bits.hpp"
#include "fraisse/encodings.hpp"
#include "fraisse/limits.hpp"
#include "fraisse/monochrome.hpp"
#include "fraisse/ranked.hpp"
#include "fraisse/relational.hpp"

namespace fraisse {

using json = nlohmann::json;

json to_json(const VertexSet& w);
VertexSet vertex_set_from_json(const json& j);

json to_json(const FinStructure& s);
FinStructure structure_from_json(const json& j);

json to_json(const BitSource& b);
BitSource bits_from_json(const json& j);

json to_json(const LimitPresentation& p);
LimitPresentation presentation_from_json(const json& j);

json to_json(const Chain& c);
json chain_document(const Chain& c, std::uint64_t budget, const BitSource& bits);

json to_json(const EmbeddingCertificate& c);
EmbeddingCertificate certificate_from_json(const json& j);

json to_json(const ExtensionInstance& inst);
ExtensionInstance instance_from_json(const json& j);
json to_json(const ProbeReport& r);

json to_json(const IndexedCopy& c);

// Parses text, mapping parse and type errors to invalid_input.
json parse_json(const std::string& text, const std::string& what);
json read_json_file(const std::string& path);
std::string dump(const json& j);

}  // namespace fraisse
