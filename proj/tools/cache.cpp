#include "cache.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>

#include <unistd.h>

#include <boost/crc.hpp>
#include <json.hpp>

#include "ggp/error.hpp"

namespace ggpsym {

namespace fs = std::filesystem;
using ggp::SymbolFamily;

std::optional<fs::path> default_cache_dir()
{
  if (const char* d = std::getenv(std::string(kCacheEnv).c_str()); d && *d) return fs::path(d);
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "ggpsym";
  if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "ggpsym";
  return std::nullopt;
}

std::string family_token(SymbolFamily f)
{
  switch (f) {
    case SymbolFamily::SpUnipotent: return "sp";
    case SymbolFamily::OEvenPlus: return "o+even";
    case SymbolFamily::OEvenMinus: return "o-even";
    case SymbolFamily::OOdd: return "oodd";
  }
  return "?";
}

SymbolFamily parse_family_token(std::string_view text)
{
  for (auto f : {SymbolFamily::SpUnipotent, SymbolFamily::OEvenPlus, SymbolFamily::OEvenMinus,
                 SymbolFamily::OOdd})
    if (text == family_token(f)) return f;
  throw ggp::Error(ggp::ErrorKind::ParseError,
                   "unknown family '" + std::string(text) + "' (sp, o+even, o-even, oodd)");
}

std::string cache_payload(const std::vector<ggp::Symbol>& symbols)
{
  std::string out;
  for (const auto& s : symbols) {
    out += ggp::format_symbol(s);
    out += '\n';
  }
  return out;
}

std::uint32_t payload_checksum(std::string_view payload)
{
  boost::crc_32_type crc;
  crc.process_bytes(payload.data(), payload.size());
  return crc.checksum();
}

SymbolCache::SymbolCache(fs::path dir, std::string version)
    : dir_(std::move(dir)), version_(std::move(version))
{
}

fs::path SymbolCache::file_for(SymbolFamily f, int rank) const
{
  return dir_ / (family_token(f) + "-" + std::to_string(rank) + ".json");
}

std::optional<std::vector<ggp::Symbol>> SymbolCache::load(SymbolFamily f, int rank) const
{
  std::ifstream in(file_for(f, rank), std::ios::binary);
  if (!in) return std::nullopt;
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  try {
    if (j.at("version").get<std::string>() != version_) return std::nullopt;
    if (j.at("family").get<std::string>() != family_token(f) || j.at("rank").get<int>() != rank)
      return std::nullopt;
    std::vector<ggp::Symbol> syms;
    for (const auto& s : j.at("symbols")) syms.push_back(ggp::parse_symbol(s.get<std::string>()));
    if (payload_checksum(cache_payload(syms)) != j.at("checksum").get<std::uint32_t>())
      return std::nullopt;
    return syms;
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  } catch (const ggp::Error&) {
    return std::nullopt;
  }
}

void SymbolCache::store(SymbolFamily f, int rank, const std::vector<ggp::Symbol>& symbols) const
{
  static std::atomic<unsigned> counter{0};
  nlohmann::ordered_json j;
  j["version"] = version_;
  j["family"] = family_token(f);
  j["rank"] = rank;
  j["symbols"] = nlohmann::ordered_json::array();
  for (const auto& s : symbols) j["symbols"].push_back(ggp::format_symbol(s));
  j["checksum"] = payload_checksum(cache_payload(symbols));

  std::error_code ec;
  fs::create_directories(dir_, ec);
  const fs::path target = file_for(f, rank);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;  // unwritable cache dir: run uncached
    out << j.dump() << '\n';
    if (!out.flush()) {
      fs::remove(tmp, ec);
      return;
    }
  }
  fs::rename(tmp, target, ec);
  if (ec) fs::remove(tmp, ec);
}

SymbolCache::Lookup SymbolCache::enumerate(SymbolFamily f, int rank) const
{
  if (auto hit = load(f, rank)) return {std::move(*hit), true};
  Lookup l{ggp::enumerate_symbols(rank, f), false};
  store(f, rank, l.symbols);
  return l;
}

}  // namespace ggpsym
