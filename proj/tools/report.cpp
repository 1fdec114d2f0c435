#include "report.hpp"

#include <sstream>

namespace mrp::report {

namespace {

Json multisets(const std::vector<IntMultiset>& list) {
  Json arr = Json::array();
  for (const auto& a : list) arr.push_back(a.to_string());
  return arr;
}

Json pair_json(const RootPair& p) { return Json{{"n", p.n.get_str()}, {"s", p.s.get_str()}}; }

}  // namespace

Json to_json(const EquivalenceTrace& t) {
  return Json{{"equivalent", t.equivalent}, {"decided_by", t.decided_by}, {"trace", t.steps}};
}

Json to_json(const MirrorPair& m) {
  return Json{{"scale", m.scale.get_str()}, {"scaled", m.scaled.to_string()}, {"mirrored", m.mirrored.to_string()}};
}

Json to_json(const RootRecord& r) {
  return Json{{"s", r.s}, {"k", r.k}, {"n", r.n}, {"classification", std::string(to_string(r.classification))}};
}

Json to_json(const ModpCertificate& c) {
  return Json{{"p", c.p}, {"certified", c.certified}, {"roots_mod_p", c.roots_mod_p}};
}

Json to_json(const ConjugationChain& c) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < c.pairs.size(); ++i) {
    Json item = pair_json(c.pairs[i]);
    // The move that leads into this pair; the first pair has none.
    item["move"] = i == 0 ? Json(nullptr) : Json(std::string(to_string(c.moves[i - 1])));
    item["compliant"] = static_cast<bool>(c.compliant[i]);
    arr.push_back(std::move(item));
  }
  return arr;
}

Json to_json(const RecordReport& r) {
  return Json{{"id", r.id},
              {"n", r.n},
              {"s", r.s},
              {"passed", r.passed},
              {"pairs_checked", r.pairs_checked},
              {"distinct", r.distinct},
              {"gf_identity_checked", r.gf_identity_checked},
              {"direct_enumeration", r.direct_enumeration},
              {"failures", r.failures},
              {"seconds", r.seconds}};
}

Json to_json(const VerificationReport& r) {
  Json records = Json::array();
  for (const auto& rec : r.records) records.push_back(to_json(rec));
  return Json{{"passed", r.passed()}, {"failed", r.failed_ids()}, {"records", records}};
}

Json to_json(const SearchResult& r) {
  Json classes = Json::array();
  for (const auto& c : r.classes)
    classes.push_back(Json{{"canonical", multisets(c.canonical)},
                           {"members", multisets(c.members)},
                           {"ordinals", c.ordinals},
                           {"raw_variants", c.raw_variants()}});
  const auto& st = r.stats;
  return Json{{"n", r.n},
              {"s", r.s},
              {"m", r.m},
              {"first_value", r.first_value},
              {"partial", r.partial},
              {"stop_reason", r.stop_reason},
              {"classes", classes},
              {"statistics",
               Json{{"total", st.total},
                    {"visited", st.visited},
                    {"buckets", st.buckets},
                    {"collision_groups", st.collision_groups},
                    {"false_collisions", st.false_collisions},
                    {"raw_classes", st.raw_classes},
                    {"classes", st.classes},
                    {"wall_seconds", st.wall_seconds}}}};
}

Json to_json(const CompletenessReport& r) {
  Json missing = Json::array();
  for (const auto& p : r.missing) missing.push_back(pair_json(p));
  return Json{{"k", r.k}, {"bound", r.bound}, {"solutions", r.solutions}, {"missing", missing}};
}

std::string to_text(const VerificationReport& r) {
  std::ostringstream os;
  for (const auto& rec : r.records) {
    os << (rec.passed ? "ok   " : "FAIL ") << rec.id << "  (n=" << rec.n << ", s=" << rec.s
       << ", pairs=" << rec.pairs_checked << (rec.direct_enumeration ? ", direct" : "") << ")\n";
    for (const auto& f : rec.failures) os << "       " << f << '\n';
  }
  os << (r.passed() ? "all records verified" : "verification failed") << '\n';
  return os.str();
}

std::string to_text(const SearchResult& r) {
  std::ostringstream os;
  os << "n=" << r.n << " s=" << r.s << " m=" << r.m << ": " << r.classes.size() << " class"
     << (r.classes.size() == 1 ? "" : "es") << (r.partial ? " (partial: " + r.stop_reason + ")" : "") << '\n';
  for (std::size_t i = 0; i < r.classes.size(); ++i) {
    const auto& c = r.classes[i];
    os << "class " << i + 1 << " (" << c.members.size() << " members, " << c.raw_variants() << " placement"
       << (c.raw_variants() == 1 ? "" : "s") << ")\n";
    for (const auto& a : c.members) os << "  {" << a.to_string() << "}\n";
    os << "  canonical:";
    for (const auto& a : c.canonical) os << " {" << a.to_string() << "}";
    os << '\n';
  }
  const auto& st = r.stats;
  os << "visited " << st.visited << "/" << st.total << ", buckets " << st.buckets << ", collision groups "
     << st.collision_groups << ", false collisions " << st.false_collisions << '\n';
  return os.str();
}

}  // namespace mrp::report
