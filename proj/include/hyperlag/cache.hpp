#pragma once

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "extremal.hpp"
#include "io.hpp"

namespace hyperlag {

// Append-only JSON-lines store of extremal search results, one record per line:
//   {"forbidden": "<serialized F>", "n": 5, "mode": "free", "search": "exhaustive",
//    "max_lubell": "3/2", "witness": "<serialized G>", "seed": 0, "timestamp": "..."}

inline Rational parse_rational(const std::string &s) {
  auto slash = s.find('/');
  if (slash == std::string::npos)
    return Rational(std::stoll(s));
  return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline nlohmann::json to_json(const ExtremalRecord &r) {
  return {{"forbidden", serialize(r.forbidden)},
          {"n", r.n},
          {"mode", std::string(to_string(r.mode))},
          {"search", std::string(to_string(r.search))},
          {"max_lubell", to_string(r.max_lubell)},
          {"witness", serialize(r.witness)},
          {"seed", r.seed}};
}

inline ExtremalRecord record_from_json(const nlohmann::json &j) {
  auto mode = parse_mode(j.at("mode").get<std::string>());
  auto search = parse_search(j.at("search").get<std::string>());
  if (!mode || !search)
    throw std::runtime_error("cache record has unknown mode or search");
  return {parse(j.at("forbidden").get<std::string>()),
          j.at("n").get<int>(),
          *mode,
          *search,
          parse_rational(j.at("max_lubell").get<std::string>()),
          parse(j.at("witness").get<std::string>()),
          j.value("seed", std::uint64_t{0})};
}

/// Finds a completed exhaustive record for (F, n, mode). Unreadable lines are skipped.
inline std::optional<ExtremalRecord> cache_lookup(const std::filesystem::path &path,
                                                  const Hypergraph &f, int n, HostMode mode) {
  std::ifstream in(path);
  if (!in)
    return std::nullopt;
  const auto key = serialize(f);
  std::string line;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
      continue;
    try {
      if (j.at("forbidden") != key || j.at("n") != n || j.at("mode") != to_string(mode) ||
          j.at("search") != "exhaustive")
        continue;
      return record_from_json(j);
    } catch (const std::exception &) {
      continue;
    }
  }
  return std::nullopt;
}

inline void cache_append(const std::filesystem::path &path, const ExtremalRecord &r) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::app);
  if (!out)
    throw std::runtime_error("cannot append to cache " + path.string());
  auto j = to_json(r);
  j["timestamp"] = utc_timestamp();
  out << j.dump() << '\n';
}

} // namespace hyperlag
