#pragma once

// On-disk cache of symbol enumerations, one JSON file per (family, rank).

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ggp/combinatorics.hpp"

namespace ggpsym {

inline constexpr std::string_view kLibraryVersion = "0.1.0";
inline constexpr std::string_view kCacheEnv = "GGP_CACHE_DIR";

// $GGP_CACHE_DIR, else $XDG_CACHE_HOME/ggpsym, else $HOME/.cache/ggpsym
std::optional<std::filesystem::path> default_cache_dir();

std::string family_token(ggp::SymbolFamily f);
ggp::SymbolFamily parse_family_token(std::string_view text);

// payload bytes that the checksum covers
std::string cache_payload(const std::vector<ggp::Symbol>& symbols);
std::uint32_t payload_checksum(std::string_view payload);

class SymbolCache {
 public:
  explicit SymbolCache(std::filesystem::path dir, std::string version = std::string(kLibraryVersion));

  std::filesystem::path file_for(ggp::SymbolFamily f, int rank) const;

  // nullopt on a missing, corrupt or stale entry
  std::optional<std::vector<ggp::Symbol>> load(ggp::SymbolFamily f, int rank) const;
  void store(ggp::SymbolFamily f, int rank, const std::vector<ggp::Symbol>& symbols) const;

  struct Lookup {
    std::vector<ggp::Symbol> symbols;
    bool hit = false;
  };
  Lookup enumerate(ggp::SymbolFamily f, int rank) const;

 private:
  std::filesystem::path dir_;
  std::string version_;
};

}  // namespace ggpsym
