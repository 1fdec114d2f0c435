#include <atomic>
#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mrp/error.hpp"
#include "report.hpp"

namespace {

using mrp::report::Json;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kInterrupted = 3;

std::atomic<bool> g_stop{false};

extern "C" void on_sigint(int) { g_stop = true; }

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Accepts plain integers and the forms 1e6, 2.5e3 (when integral).
std::uint64_t parse_count(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  try {
    if (text.find_first_of("eE") != std::string::npos) {
      const long double v = std::stold(text, &used);
      if (used == text.size() && v >= 0 && v == static_cast<long double>(static_cast<std::uint64_t>(v)))
        return static_cast<std::uint64_t>(v);
    } else {
      const unsigned long long v = std::stoull(text, &used);
      if (used == text.size() && text.front() != '-') return v;
    }
  } catch (const std::exception&) {
  }
  throw Usage("invalid " + what + " '" + text + "'");
}

// "512M", "1G", "64K" or a byte count.
std::uint64_t parse_bytes(const std::string& text) {
  if (text.empty()) throw Usage("empty memory budget");
  std::uint64_t mult = 1;
  std::string digits = text;
  switch (std::toupper(static_cast<unsigned char>(text.back()))) {
    case 'K': mult = 1ull << 10; break;
    case 'M': mult = 1ull << 20; break;
    case 'G': mult = 1ull << 30; break;
    case 'T': mult = 1ull << 40; break;
    default: mult = 0;
  }
  if (mult) digits.pop_back(); else mult = 1;
  return parse_count(digits, "memory budget") * mult;
}

std::pair<unsigned, unsigned> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const auto v = static_cast<unsigned>(parse_count(text, "range"));
    return {v, v};
  }
  return {static_cast<unsigned>(parse_count(text.substr(0, dots), "range")),
          static_cast<unsigned>(parse_count(text.substr(dots + 2), "range"))};
}

mrp::KLimit parse_k_limit(const std::string& text) {
  if (text == "auto") return mrp::KLimit::automatic();
  return mrp::KLimit::of(static_cast<unsigned>(parse_count(text, "k limit")));
}

std::vector<std::uint64_t> parse_primes(const std::string& text) {
  std::vector<std::uint64_t> out;
  if (text == "none") return out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    out.push_back(parse_count(text.substr(start, comma - start), "prime list"));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

struct Globals {
  std::string output = "text";
  unsigned jobs = 1;
  std::string memory_budget = "1G";
  std::string checkpoint;
  bool json() const { return output == "json"; }
};

void emit(const Globals& g, const Json& json, const std::string& text) {
  if (g.json())
    std::cout << json.dump(2) << '\n';
  else
    std::cout << text;
}

std::string join_roots(const std::vector<mrp::RootRecord>& roots) {
  std::string out;
  for (const auto& r : roots) {
    if (!out.empty()) out += ", ";
    out += std::to_string(r.n) + " (" + std::string(mrp::to_string(r.classification)) + ")";
  }
  return out.empty() ? "none" : out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiset recovery toolkit: s-sums, Moser polynomial roots, conjugation chains, example verification "
               "and exhaustive search"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--output", g.output, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--memory-budget", g.memory_budget, "Index memory ceiling for search, e.g. 512M or 2G");
  app.add_option("--checkpoint", g.checkpoint, "Checkpoint file for search");
  app.fallthrough();

  std::function<int()> action;
  std::string a_text, b_text, bound_text = "1e6", k_limit_text = "auto", primes_text, s_text, export_path;
  std::uint64_t s = 0, n = 0, p = 0;
  unsigned k = 0, m = 0;
  std::size_t length = 0;
  std::vector<std::string> deflate;
  long first_value = 1;
  bool direct = false, resume = false, progress = false, complete = false;

  auto* sums = app.add_subcommand("sums", "Print the s-sum multiset");
  sums->add_option("multiset", a_text)->required();
  sums->add_option("--s", s)->required();
  sums->callback([&] {
    action = [&] {
      const auto a = mrp::parse_multiset(a_text);
      const auto out = mrp::s_sums(a, s);
      emit(g, Json{{"s", s}, {"input", a.to_string()}, {"size", out.size()}, {"sums", out.to_string()}},
           out.to_string() + "\n");
      return kOk;
    };
  });

  auto* equiv = app.add_subcommand("equiv", "Decide s-equivalence of two multisets");
  equiv->add_option("a", a_text)->required();
  equiv->add_option("b", b_text)->required();
  equiv->add_option("--s", s)->required();
  equiv->callback([&] {
    action = [&] {
      const auto t = mrp::equivalence_trace(mrp::parse_multiset(a_text), mrp::parse_multiset(b_text), s);
      std::string text;
      for (const auto& step : t.steps) text += "  " + step + "\n";
      text += std::string(t.equivalent ? "true" : "false") + " (decided by " + t.decided_by + ")\n";
      emit(g, mrp::report::to_json(t), text);
      return t.equivalent ? kOk : kNegative;
    };
  });

  auto* mirror = app.add_subcommand("mirror", "Scaled mirror pair of a multiset");
  mirror->add_option("multiset", a_text)->required();
  mirror->callback([&] {
    action = [&] {
      const auto mp = mrp::mirror(mrp::parse_multiset(a_text));
      emit(g, mrp::report::to_json(mp),
           "scale " + mp.scale.get_str() + "\n{" + mp.scaled.to_string() + "}\n{" + mp.mirrored.to_string() + "}\n");
      return kOk;
    };
  });

  auto* roots = app.add_subcommand("roots", "Integer roots of F_{s,k} in [1, bound]");
  roots->add_option("--s", s)->required()->check(CLI::PositiveNumber);
  roots->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  roots->add_option("--bound", bound_text, "Upper search bound (default 1e6)");
  roots->add_option("--primes", primes_text, "Comma-separated sieve primes, or 'none'");
  roots->callback([&] {
    action = [&] {
      const auto bound = parse_count(bound_text, "bound");
      const auto primes = primes_text.empty() ? mrp::default_filter_primes() : parse_primes(primes_text);
      const auto poly = mrp::moser_polynomial(static_cast<unsigned>(s), k);
      const auto found = mrp::integer_roots(poly, bound, primes);
      Json arr = Json::array();
      for (const auto& r : found) arr.push_back(mrp::report::to_json(r));
      emit(g, Json{{"s", s}, {"k", k}, {"bound", bound}, {"polynomial", poly.scaled.to_string("n")}, {"roots", arr}},
           "(" + std::to_string(s) + "-1)! F = " + poly.scaled.to_string("n") + "\nroots: " + join_roots(found) + "\n");
      return kOk;
    };
  });

  auto* table = app.add_subcommand("table", "Nontrivial roots of F_{s,k} over a range of s");
  table->add_option("--s", s_text, "Range lo..hi")->required();
  table->add_option("--k-limit", k_limit_text, "'auto' (2s+5) or a number");
  table->add_option("--bound", bound_text, "Upper search bound (default 1e6)");
  table->callback([&] {
    action = [&] {
      const auto [lo, hi] = parse_range(s_text);
      const auto rows = mrp::scan_table(lo, hi, parse_k_limit(k_limit_text), parse_count(bound_text, "bound"), g.jobs);
      Json arr = Json::array();
      for (const auto& r : rows) arr.push_back(mrp::report::to_json(r));
      emit(g, arr, mrp::format_root_table(rows));
      return kOk;
    };
  });

  auto* kmax = app.add_subcommand("kmax", "Largest k with a nontrivial integer root");
  kmax->add_option("--s", s_text, "Single s or range lo..hi")->required();
  kmax->add_option("--k-limit", k_limit_text, "'auto' (2s+5) or a number");
  kmax->add_option("--bound", bound_text, "Upper search bound (default 1e6)");
  kmax->callback([&] {
    action = [&] {
      const auto [lo, hi] = parse_range(s_text);
      const auto limit = parse_k_limit(k_limit_text);
      const auto bound = parse_count(bound_text, "bound");
      Json arr = Json::array();
      std::string text;
      for (unsigned sv = lo; sv <= hi; ++sv) {
        const auto km = mrp::k_max(sv, limit.for_s(sv), bound);
        arr.push_back(Json{{"s", sv}, {"k_max", km ? Json(*km) : Json(nullptr)}});
        text += "s=" + std::to_string(sv) + ": " + (km ? std::to_string(*km) : "none") + "\n";
      }
      emit(g, arr, text);
      return kOk;
    };
  });

  auto* cert = app.add_subcommand("cert", "Certify that (s-1)! F_{s,k}, optionally deflated, has no integer root");
  cert->add_option("--s", s)->required()->check(CLI::PositiveNumber);
  cert->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  cert->add_option("--p", p)->required();
  cert->add_option("--deflate", deflate, "Known integer roots to divide out first");
  cert->callback([&] {
    action = [&] {
      auto poly = mrp::moser_polynomial(static_cast<unsigned>(s), k).scaled;
      for (const auto& r : deflate) {
        const auto root = mrp::parse_bigint(r);
        if (!root) throw Usage("invalid root '" + r + "'");
        poly = poly.deflate(*root);
      }
      const auto c = mrp::modp_no_root_certificate(poly, p);
      Json json = mrp::report::to_json(c);
      json["polynomial"] = poly.to_string("n");
      std::string text = poly.to_string("n") + "\n" + (c.certified ? "certified" : "not certified") + " mod " +
                         std::to_string(p);
      if (!c.certified) {
        text += ", roots mod p:";
        for (auto r : c.roots_mod_p) text += " " + std::to_string(r);
      }
      emit(g, json, text + "\n");
      return c.certified ? kOk : kNegative;
    };
  });

  auto* chain = app.add_subcommand("chain", "Conjugation chain for k = 4 or 5");
  chain->add_option("--k", k)->required()->check(CLI::IsMember({4, 5}));
  chain->add_option("--length", length)->required()->check(CLI::PositiveNumber);
  chain->add_flag("--check-complete", complete, "Also check that all roots with n <= --bound lie on the chain");
  chain->add_option("--bound", bound_text, "Bound for --check-complete (default 1e5)");
  chain->callback([&] {
    action = [&] {
      const auto c = mrp::build_chain(k, length);
      if (!complete) {
        emit(g, mrp::report::to_json(c), mrp::format_chain(c) + "\n");
        return kOk;
      }
      const auto bound = chain->count("--bound") ? parse_count(bound_text, "bound") : 100000;
      const auto rep = mrp::check_chain_completeness(k, bound);
      emit(g, Json{{"chain", mrp::report::to_json(c)}, {"completeness", mrp::report::to_json(rep)}},
           mrp::format_chain(c) + "\n" + std::to_string(rep.solutions) + " roots with n <= " + std::to_string(bound) +
               ", " + std::to_string(rep.missing.size()) + " off the chain\n");
      return rep.missing.empty() ? kOk : kNegative;
    };
  });

  auto* verify = app.add_subcommand("verify", "Verify every known example and generated family");
  verify->add_flag("--direct", direct, "Also enumerate all s-subsets (slow for large n)");
  verify->add_option("--export-corpus", export_path, "Write the corpus text file and exit");
  verify->callback([&] {
    action = [&] {
      if (!export_path.empty()) {
        std::ofstream out(export_path);
        out << "# id|n|s|members|source\n" << mrp::format_corpus(mrp::known_examples());
        if (!out) throw std::runtime_error("cannot write " + export_path);
        return kOk;
      }
      mrp::VerifyOptions opt;
      opt.direct_enumeration = direct;
      opt.workers = g.jobs;
      const auto rep = mrp::verify_all(opt);
      emit(g, mrp::report::to_json(rep), mrp::report::to_text(rep));
      return rep.passed() ? kOk : kNegative;
    };
  });

  auto* search = app.add_subcommand("search", "Exhaustive search over multisets {1^k1, ..., m^km}");
  search->add_option("--n", n)->required();
  search->add_option("--s", s)->required();
  search->add_option("--m", m)->required();
  search->add_option("--first-value", first_value, "Smallest value of the range (default 1)");
  search->add_flag("--resume", resume, "Continue from --checkpoint");
  search->add_flag("--progress", progress, "Report progress on stderr");
  search->callback([&] {
    action = [&] {
      mrp::SearchOptions opt;
      opt.workers = g.jobs;
      opt.memory_budget = parse_bytes(g.memory_budget);
      opt.first_value = first_value;
      opt.checkpoint = g.checkpoint;
      opt.resume = resume;
      opt.stop = &g_stop;
      if (progress)
        opt.progress = [](const mrp::SearchProgress& pr) {
          std::cerr << "\r" << pr.visited << "/" << pr.total << " compositions, "
                    << static_cast<std::uint64_t>(pr.seconds > 0 ? pr.visited / pr.seconds : 0) << "/s, "
                    << pr.index_entries << " indexed" << std::flush;
        };
      std::signal(SIGINT, on_sigint);
      const auto res = mrp::run_search(n, s, m, opt);
      if (progress) std::cerr << '\n';
      emit(g, mrp::report::to_json(res), mrp::report::to_text(res));
      if (res.partial) {
        if (!g.checkpoint.empty()) {
          std::cerr << "stopped early (" << res.stop_reason << "); checkpoint written to " << g.checkpoint << '\n';
          return kInterrupted;
        }
        std::cerr << "stopped early (" << res.stop_reason << "); no checkpoint path given\n";
        return kNegative;
      }
      return kOk;
    };
  });

  auto* tm = app.add_subcommand("thue-morse", "Split {0..2^p-1} by binary weight parity and verify it");
  tm->add_option("--p", p)->required();
  tm->callback([&] {
    action = [&] {
      const auto [a, b] = mrp::thue_morse_split(static_cast<unsigned>(p));
      const bool ok = a != b && mrp::is_equivalent(a, b, 2);
      emit(g, Json{{"p", p}, {"even", a.to_string()}, {"odd", b.to_string()}, {"two_equivalent", ok}},
           "{" + a.to_string() + "}\n{" + b.to_string() + "}\n" + (ok ? "2-equivalent" : "NOT 2-equivalent") + "\n");
      return ok ? kOk : kNegative;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    return action();
  } catch (const mrp::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const mrp::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Usage& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNegative;
  }
}
