#pragma once

#include <filesystem>
#include <optional>

#include "lupi/solvers.hpp"

namespace lupi::cli {

/// JSON file of solved equilibria keyed by (n, tol). Safe to delete; writes go
/// through a temporary file and rename.
class NeCache {
 public:
  explicit NeCache(std::filesystem::path path) : path_(std::move(path)) {}

  std::optional<NESolution> lookup(int n, double tol) const;
  void store(const NESolution& s, double tol) const;

  /// Cached solution when present, otherwise solve and store (n <= 20 only).
  NESolution solve(int n, double tol, const NewtonOptions& base) const;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace lupi::cli
