#pragma once

#include <nlohmann/json.hpp>

#include "mrp/conjugation.hpp"
#include "mrp/moser.hpp"
#include "mrp/multiset.hpp"
#include "mrp/registry.hpp"
#include "mrp/search.hpp"

namespace mrp::report {

using Json = nlohmann::ordered_json;

Json to_json(const EquivalenceTrace& t);
Json to_json(const MirrorPair& m);
Json to_json(const RootRecord& r);
Json to_json(const ModpCertificate& c);
Json to_json(const ConjugationChain& c);
Json to_json(const RecordReport& r);
Json to_json(const VerificationReport& r);
Json to_json(const SearchResult& r);
Json to_json(const CompletenessReport& r);

std::string to_text(const VerificationReport& r);
std::string to_text(const SearchResult& r);

}  // namespace mrp::report
