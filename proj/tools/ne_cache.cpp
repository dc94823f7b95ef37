#include "ne_cache.hpp"

#include <fstream>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

namespace lupi::cli {

namespace {

constexpr int kCacheMaxN = 20;

std::string key(int n, double tol) {
  std::ostringstream os;
  os.precision(17);
  os << "n=" << n << ";tol=" << tol;
  return os.str();
}

nlohmann::json load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return nlohmann::json::object();
  try {
    auto doc = nlohmann::json::parse(in);
    return doc.is_object() ? doc : nlohmann::json::object();
  } catch (const nlohmann::json::exception&) {
    return nlohmann::json::object();  // unreadable cache is treated as empty
  }
}

}  // namespace

std::optional<NESolution> NeCache::lookup(int n, double tol) const {
  const auto doc = load(path_);
  const auto it = doc.find(key(n, tol));
  if (it == doc.end()) return std::nullopt;
  try {
    const auto& e = *it;
    return NESolution{Strategy(e.at("strategy").get<std::vector<double>>()), e.at("c_ne").get<double>(),
                      e.at("residual").get<double>(), e.at("iterations").get<int>(), e.at("converged").get<bool>()};
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void NeCache::store(const NESolution& s, double tol) const {
  auto doc = load(path_);
  doc[key(s.strategy.n(), tol)] = {
      {"strategy", std::vector<double>(s.strategy.probs().begin(), s.strategy.probs().end())},
      {"c_ne", s.c_ne},
      {"residual", s.residual},
      {"iterations", s.iterations},
      {"converged", s.converged}};

  auto tmp = path_;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp);
    if (!out) return;  // read-only location: run without caching
    out << doc.dump(1) << '\n';
    if (!out) return;
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path_, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

NESolution NeCache::solve(int n, double tol, const NewtonOptions& base) const {
  if (n <= kCacheMaxN) {
    if (auto hit = lookup(n, tol)) return *hit;
  }
  NewtonOptions opts = base;
  opts.tol = tol;
  NESolution s = solve_ne(n, opts);
  if (s.converged && n <= kCacheMaxN) store(s, tol);
  return s;
}

}  // namespace lupi::cli
