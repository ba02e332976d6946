// hyperlag: command-line front end. Every invocation prints one JSON object on
// stdout and a short human-readable summary on stderr.
//
// Exit codes: 0 success, 1 out-of-hypothesis, 2 usage or parse error,
// 3 resource budget exceeded.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"

#include <hyperlag/hyperlag.hpp>
#include <hyperlag/verify.hpp>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hyperlag;

namespace {

enum Exit { kOk = 0, kDomain = 1, kUsage = 2, kResource = 3 };

std::string sha256_hex(const std::string &data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string decimal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

json decimals(const std::vector<double> &v) {
  json out = json::array();
  for (double x : v)
    out.push_back(decimal(x));
  return out;
}

std::vector<double> parse_doubles(const std::string &csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size())
      throw std::invalid_argument("bad number '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<int> parse_ints(const std::string &csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size())
      throw std::invalid_argument("bad integer '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

/// Input files read once, with their combined digest.
struct Inputs {
  std::vector<Hypergraph> graphs;
  std::string digest;
};

Inputs load_inputs(const std::vector<std::string> &paths) {
  Inputs in;
  std::string all;
  for (const auto &p : paths) {
    const std::string text = read_file(p);
    try {
      in.graphs.push_back(parse(text));
    } catch (const ParseError &e) {
      throw ParseError(e.line(), p + ": " + e.what());
    }
    all += sha256_hex(text);
  }
  in.digest = paths.size() == 1 ? all : sha256_hex(all);
  return in;
}

struct Output {
  std::string command;
  std::string digest;
  bool exact = false;
  json payload = json::object();
  std::string summary;
};

json record_json(const ExtremalRecord &r) {
  return {{"forbidden", serialize(r.forbidden)},
          {"n", r.n},
          {"mode", std::string(to_string(r.mode))},
          {"search", std::string(to_string(r.search))},
          {"max_lubell", to_string(r.max_lubell)},
          {"max_lubell_decimal", decimal(to_double(r.max_lubell))},
          {"witness", serialize(r.witness)},
          {"seed", r.seed}};
}

fs::path default_cache_path() {
  if (const char *env = std::getenv("HYPERLAG_CACHE"); env && *env)
    return env;
  if (const char *xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
    return fs::path(xdg) / "hyperlag" / "extremal.jsonl";
  if (const char *home = std::getenv("HOME"); home && *home)
    return fs::path(home) / ".cache" / "hyperlag" / "extremal.jsonl";
  return "hyperlag_extremal.jsonl";
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Lagrangians and Turan densities of non-uniform hypergraphs"};
  app.require_subcommand(1);
  unsigned jobs = 0;
  app.add_option("--jobs", jobs, "Worker cap for parallel searches (0: all cores)");

  Output out;
  std::function<void()> action;

  // eval
  std::string file, file2, weights, svec, outpath, cache, mode_s = "free",
                                                          search_s = "exhaustive",
                                                          suite = "all";
  int restarts = 16, n = 0;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  bool no_cache = false;

  auto *eval = app.add_subcommand("eval", "lambda'(H, x) at a given weighting");
  eval->add_option("FILE", file)->required();
  eval->add_option("--weights", weights, "comma-separated w1,...,wn")->required();
  eval->callback([&] {
    action = [&] {
      auto in = load_inputs({file});
      auto raw = parse_doubles(weights);
      Weighting x(raw);
      const double v = evaluate(in.graphs[0], x);
      out = {"eval", in.digest, false, {{"value", decimal(v)}, {"weights", decimals(x.values())}},
             "lambda'(H, x) = " + decimal(v)};
    };
  });

  auto *lag = app.add_subcommand("lagrangian", "numeric lambda'(H) by projected gradient ascent");
  lag->add_option("FILE", file)->required();
  lag->add_option("--restarts", restarts)->check(CLI::PositiveNumber);
  lag->add_option("--tol", tol)->check(CLI::PositiveNumber);
  lag->add_option("--seed", seed);
  lag->callback([&] {
    action = [&] {
      auto in = load_inputs({file});
      const auto &h = in.graphs[0];
      auto r = maximize(h, {.restarts = restarts, .tol = tol, .seed = seed});
      json p{{"value", decimal(r.value)},
             {"weighting", decimals(r.weighting.values())},
             {"support", r.support},
             {"iterations", r.iterations},
             {"converged", r.converged},
             {"kkt_residual", decimal(r.kkt_residual)}};
      if (is_12_graph(h)) {
        auto ex = lagrangian12_exact(h);
        p["exact_value"] = to_string(ex.value);
        p["agrees_with_exact"] = std::abs(to_double(ex.value) - r.value) <= 1e-6;
      }
      out = {"lagrangian", in.digest, false, p, "lambda'(H) >= " + decimal(r.value)};
    };
  });

  auto *ex12 = app.add_subcommand("exact12", "exact lambda' of a {1,2}-graph");
  ex12->add_option("FILE", file)->required();
  ex12->callback([&] {
    action = [&] {
      auto in = load_inputs({file});
      const auto &h = in.graphs[0];
      auto r = lagrangian12_exact(h);
      auto num = maximize(h);
      out = {"exact12",
             in.digest,
             true,
             {{"value", to_string(r.value)},
              {"value_decimal", decimal(to_double(r.value))},
              {"case", std::string(to_string(r.case_tag))},
              {"witness_weighting", decimals(r.witness_weighting.values())},
              {"support", r.support},
              {"numeric_value", decimal(num.value)},
              {"agrees_with_numeric", std::abs(to_double(r.value) - num.value) <= 1e-6}},
             "lambda'(H) = " + to_string(r.value) + " (" + std::string(to_string(r.case_tag)) +
                 ")"};
    };
  });

  auto *clq = app.add_subcommand("clique", "maximum clique of a 2-uniform graph");
  clq->add_option("FILE", file)->required();
  clq->callback([&] {
    action = [&] {
      auto in = load_inputs({file});
      auto r = max_clique(in.graphs[0]);
      out = {"clique", in.digest, true, {{"size", r.size}, {"witness", r.witness}},
             "clique number " + std::to_string(r.size)};
    };
  });

  auto *chr = app.add_subcommand("chromatic", "chromatic number of a 2-uniform graph");
  chr->add_option("FILE", file)->required();
  chr->callback([&] {
    action = [&] {
      auto in = load_inputs({file});
      const int chi = chromatic_number(in.graphs[0]);
      out = {"chromatic", in.digest, true, {{"chromatic_number", chi}},
             "chromatic number " + std::to_string(chi)};
    };
  });

  auto *hom = app.add_subcommand("hom", "homomorphism F -> G");
  hom->add_option("F_FILE", file)->required();
  hom->add_option("G_FILE", file2)->required();
  hom->callback([&] {
    action = [&] {
      auto in = load_inputs({file, file2});
      auto w = exists_hom(in.graphs[0], in.graphs[1]);
      json p{{"exists", w.has_value()}};
      p["mapping"] = w ? json(w->mapping) : json(nullptr);
      out = {"hom", in.digest, true, p, w ? "homomorphism found" : "G is F-hom-free"};
    };
  });

  auto *blw = app.add_subcommand("blowup", "write the blowup H(s1,...,sn)");
  blw->add_option("FILE", file)->required();
  blw->add_option("--s", svec, "comma-separated multiplicities")->required();
  blw->add_option("-o,--output", outpath)->required();
  blw->callback([&] {
    action = [&] {
      auto in = load_inputs({file});
      auto b = blowup(in.graphs[0], BlowupSpec(parse_ints(svec)));
      save(b, outpath);
      out = {"blowup", in.digest, true,
             {{"output", outpath}, {"vertices", b.order()}, {"edges", b.size()},
              {"lubell", to_string(lubell(b))}},
             "wrote " + outpath};
    };
  });

  auto *lub = app.add_subcommand("lubell", "Lubell function h_n(G)");
  lub->add_option("FILE", file)->required();
  lub->callback([&] {
    action = [&] {
      auto in = load_inputs({file});
      auto v = lubell(in.graphs[0]);
      out = {"lubell", in.digest, true,
             {{"value", to_string(v)}, {"value_decimal", decimal(to_double(v))}},
             "h_n(G) = " + to_string(v)};
    };
  });

  auto *tur = app.add_subcommand("turan12", "Turan density 2 - 1/(chi(H^2) - 1) of a {1,2}-graph");
  tur->add_option("FILE", file)->required();
  tur->callback([&] {
    action = [&] {
      auto in = load_inputs({file});
      out.command = "turan12";
      out.digest = in.digest;
      auto v = turan_density_12(in.graphs[0]);
      out = {"turan12", in.digest, true,
             {{"value", to_string(v)},
              {"value_decimal", decimal(to_double(v))},
              {"chromatic_number_h2", chromatic_number(level(in.graphs[0], 2).graph)}},
             "pi(H) = " + to_string(v)};
    };
  });

  auto *ext = app.add_subcommand("extremal", "maximum Lubell value of F-free hosts on n vertices");
  ext->add_option("F_FILE", file)->required();
  ext->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  ext->add_option("--mode", mode_s)->check(CLI::IsMember({"free", "hom-free"}));
  ext->add_option("--search", search_s)->check(CLI::IsMember({"exhaustive", "local"}));
  ext->add_option("--seed", seed);
  ext->add_option("--cache", cache, "JSON-lines cache (default: $HYPERLAG_CACHE)");
  ext->add_flag("--no-cache", no_cache);
  ext->callback([&] {
    action = [&] {
      auto in = load_inputs({file});
      const auto mode = *parse_mode(mode_s);
      const auto search = *parse_search(search_s);
      const fs::path path = cache.empty() ? default_cache_path() : fs::path(cache);
      const bool use_cache = !no_cache && search == SearchKind::Exhaustive;
      std::optional<ExtremalRecord> rec;
      bool cached = false;
      if (use_cache && (rec = cache_lookup(path, in.graphs[0], n, mode)))
        cached = true;
      if (!rec) {
        ExtremalOptions opt;
        opt.seed = seed;
        opt.jobs = jobs;
        rec = extremal_search(in.graphs[0], n, mode, search, opt);
        if (use_cache)
          cache_append(path, *rec);
      }
      auto p = record_json(*rec);
      p["cached"] = cached;
      out = {"extremal", in.digest, search == SearchKind::Exhaustive, p,
             "max h_" + std::to_string(n) + " = " + to_string(rec->max_lubell) +
                 (cached ? " (cached)" : "")};
    };
  });

  auto *den = app.add_subcommand("dense", "every proper subgraph has smaller lambda'");
  den->add_option("FILE", file)->required();
  den->callback([&] {
    action = [&] {
      auto in = load_inputs({file});
      auto r = dense_report(in.graphs[0]);
      json drops = json::array();
      for (const auto &[e, after] : r.after_removal)
        drops.push_back({{"edge", e},
                         {"lambda_after", to_string(after)},
                         {"drop", to_string(r.value - after)}});
      out = {"dense", in.digest, true,
             {{"dense", r.dense},
              {"lambda", to_string(r.value)},
              {"isolated_vertices", r.isolated},
              {"edge_deletions", drops},
              {"method", "single-edge and isolated-vertex deletions"}},
             r.dense ? "dense" : "not dense"};
    };
  });

  auto *ver = app.add_subcommand("verify", "run the built-in property suites");
  std::vector<std::string> suite_names;
  for (const auto &[name, ids] : verify::suites())
    suite_names.push_back(name);
  ver->add_option("--suite", suite)->check(CLI::IsMember(suite_names));
  int verify_exit = kOk;
  ver->callback([&] {
    action = [&] {
      verify::VerifyOptions opt;
      opt.jobs = jobs;
      json results = json::array();
      int passed = 0, failed = 0;
      for (int id : verify::suites().at(suite)) {
        auto r = verify::run_criterion(id, opt);
        (r.passed ? passed : failed)++;
        std::cerr << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.title << ": "
                  << r.detail << "\n";
        results.push_back({{"id", r.id},
                           {"title", r.title},
                           {"passed", r.passed},
                           {"detail", r.detail},
                           {"seconds", decimal(r.seconds)}});
      }
      verify_exit = failed ? kDomain : kOk;
      out = {"verify", "", true,
             {{"suite", suite}, {"passed", passed}, {"failed", failed}, {"criteria", results}},
             std::to_string(passed) + " passed, " + std::to_string(failed) + " failed"};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0)
      return app.exit(e);
    std::cout << json{{"error", {{"kind", "usage"}, {"reason", e.what()}}}}.dump() << "\n";
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  auto fail = [&](const char *kind, const std::string &reason, int code) {
    std::string one_line = reason;
    std::replace(one_line.begin(), one_line.end(), '\n', ' ');
    std::cout << json{{"command", app.get_subcommands().front()->get_name()},
                      {"error", {{"kind", kind}, {"reason", one_line}}}}
                     .dump()
              << "\n";
    std::cerr << kind << " error: " << one_line << "\n";
    return code;
  };

  try {
    action();
  } catch (const HypothesisError &e) {
    return fail("domain", e.what(), kDomain);
  } catch (const ResourceError &e) {
    return fail("resource", e.what(), kResource);
  } catch (const ParseError &e) {
    return fail("parse", e.what(), kUsage);
  } catch (const std::exception &e) {
    return fail("usage", e.what(), kUsage);
  }

  std::cout << json{{"command", out.command},
                    {"input_digest", out.digest},
                    {"exact", out.exact},
                    {"payload", out.payload}}
                   .dump()
            << "\n";
  std::cerr << out.summary << "\n";
  return out.command == "verify" ? verify_exit : kOk;
}
