#include "ggp/combinatorics.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "ggp/error.hpp"

namespace ggp {

namespace {

std::atomic<int> g_rank_limit{64};

bool strictly_decreasing_nonneg(const std::vector<int>& row)
{
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i] < 0) return false;
    if (i + 1 < row.size() && row[i] <= row[i + 1]) return false;
  }
  return true;
}

}  // namespace

Partition::Partition(std::vector<int> parts)
{
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] < 0)
      throw Error(ErrorKind::NormalizationError, "negative partition part");
    if (i + 1 < parts.size() && parts[i] < parts[i + 1])
      throw Error(ErrorKind::NormalizationError,
                  "partition parts must be weakly decreasing");
  }
  while (!parts.empty() && parts.back() == 0) parts.pop_back();
  parts_ = std::move(parts);
  size_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

Partition Partition::drop_first() const
{
  if (parts_.empty()) return {};
  return Partition(std::vector<int>(parts_.begin() + 1, parts_.end()));
}

Partition partition_transpose(const Partition& p)
{
  std::vector<int> t(p.empty() ? 0 : p.parts().front(), 0);
  for (int part : p.parts())
    for (int j = 0; j < part; ++j) ++t[j];
  return Partition(std::move(t));
}

bool close_dominates(const Partition& lam, const Partition& mu)
{
  const auto len = static_cast<std::size_t>(std::max(lam.length(), mu.length()));
  for (std::size_t i = 0; i < len; ++i) {
    if (lam[i] > mu[i] || lam[i] < mu[i] - 1) return false;
  }
  return true;
}

static void partitions_rec(int remaining, int max_part, std::vector<int>& cur,
                           std::vector<Partition>& out)
{
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(remaining - p, p, cur, out);
    cur.pop_back();
  }
}

std::vector<Partition> partitions_of(int n)
{
  std::vector<Partition> out;
  if (n < 0) return out;
  std::vector<int> cur;
  partitions_rec(n, n, cur, out);
  return out;
}

std::vector<Bipartition> bipartitions_of(int n)
{
  std::vector<Bipartition> out;
  for (int a = n; a >= 0; --a) {
    auto ups = partitions_of(a);
    auto los = partitions_of(n - a);
    for (const auto& u : ups)
      for (const auto& l : los) out.push_back({u, l});
  }
  return out;
}

int symbol_rank_raw(const std::vector<int>& row_a, const std::vector<int>& row_b)
{
  long long total = 0;
  for (int x : row_a) total += x;
  for (int x : row_b) total += x;
  long long len = static_cast<long long>(row_a.size() + row_b.size());
  long long shift = (len - 1) * (len - 1) / 4;
  if (len == 0) shift = 0;
  return static_cast<int>(total - shift);
}

Symbol Symbol::normalize(std::vector<int> a, std::vector<int> b)
{
  if (!strictly_decreasing_nonneg(a) || !strictly_decreasing_nonneg(b))
    throw Error(ErrorKind::NormalizationError,
                "symbol rows must be strictly decreasing and nonnegative");
  while (!a.empty() && !b.empty() && a.back() == 0 && b.back() == 0) {
    a.pop_back();
    b.pop_back();
    for (int& x : a) --x;
    for (int& x : b) --x;
  }
  int r = symbol_rank_raw(a, b);
  if (r > rank_limit())
    throw Error(ErrorKind::RankOverflow,
                "symbol rank " + std::to_string(r) + " exceeds limit " +
                    std::to_string(rank_limit()));
  return Symbol(std::move(a), std::move(b));
}

int Symbol::rank() const noexcept { return symbol_rank_raw(a_, b_); }

static Partition strip_staircase(const std::vector<int>& row)
{
  const int m = static_cast<int>(row.size());
  std::vector<int> parts(row.size());
  for (int i = 0; i < m; ++i) parts[i] = row[i] - (m - 1 - i);
  return Partition(std::move(parts));
}

Bipartition upsilon(const Symbol& s)
{
  return {strip_staircase(s.row_a()), strip_staircase(s.row_b())};
}

Symbol upsilon_inverse(const Bipartition& bp, int defect)
{
  int m2 = std::max({bp.lower.length(), bp.upper.length() - defect, -defect, 0});
  int m1 = m2 + defect;
  std::vector<int> a(m1), b(m2);
  for (int i = 0; i < m1; ++i) a[i] = bp.upper[i] + (m1 - 1 - i);
  for (int i = 0; i < m2; ++i) b[i] = bp.lower[i] + (m2 - 1 - i);
  return Symbol::normalize(std::move(a), std::move(b));
}

int staircase_rank(int defect)
{
  int b = std::abs(defect);
  if (b % 2 == 1) return ((b + 1) / 2) * ((b - 1) / 2);
  return (b / 2) * (b / 2);
}

std::string_view to_string(SymbolFamily f)
{
  switch (f) {
    case SymbolFamily::SpUnipotent: return "SpUnipotent";
    case SymbolFamily::OEvenPlus: return "OEvenPlus";
    case SymbolFamily::OEvenMinus: return "OEvenMinus";
    case SymbolFamily::OOdd: return "OOdd";
  }
  return "?";
}

static int mod4(int x) { return ((x % 4) + 4) % 4; }

bool family_admits(SymbolFamily f, int defect)
{
  switch (f) {
    case SymbolFamily::SpUnipotent:
    case SymbolFamily::OOdd: return mod4(defect) == 1;
    case SymbolFamily::OEvenPlus: return mod4(defect) == 0;
    case SymbolFamily::OEvenMinus: return mod4(defect) == 2;
  }
  return false;
}

std::vector<int> family_defects(SymbolFamily f, int rank)
{
  std::vector<int> out;
  for (int b = 0; staircase_rank(b) <= rank; ++b) {
    if (b != 0 && family_admits(f, -b)) out.push_back(-b);
    if (family_admits(f, b)) out.push_back(b);
  }
  return out;
}

bool enumeration_less(const Symbol& x, const Symbol& y)
{
  int dx = x.defect(), dy = y.defect();
  if (std::abs(dx) != std::abs(dy)) return std::abs(dx) < std::abs(dy);
  if (dx != dy) return dx < dy;
  if (x.row_a() != y.row_a()) return x.row_a() < y.row_a();
  return x.row_b() < y.row_b();
}

std::vector<Symbol> enumerate_symbols(int rank, SymbolFamily f)
{
  std::vector<Symbol> out;
  if (rank < 0) return out;
  for (int d : family_defects(f, rank)) {
    for (const auto& bp : bipartitions_of(rank - staircase_rank(d)))
      out.push_back(upsilon_inverse(bp, d));
  }
  std::sort(out.begin(), out.end(), enumeration_less);
  return out;
}

int rank_limit() noexcept { return g_rank_limit.load(); }
void set_rank_limit(int limit) { g_rank_limit.store(limit); }

// ---- text ----

static std::string join(const std::vector<int>& v)
{
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

std::string format_symbol(const Symbol& s)
{
  return "[" + join(s.row_a()) + "|" + join(s.row_b()) + "]";
}

std::string format_partition(const Partition& p)
{
  return "[" + join(p.parts()) + "]";
}

std::string format_bipartition(const Bipartition& bp)
{
  return "(" + format_partition(bp.upper) + "," + format_partition(bp.lower) + ")";
}

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const
  {
    throw Error(ErrorKind::ParseError, what, pos);
  }
  void skip_ws()
  {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  bool peek(char c)
  {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }
  void expect(char c)
  {
    skip_ws();
    if (pos >= text.size() || text[pos] != c)
      fail(std::string("expected '") + c + "'");
    ++pos;
  }
  int number()
  {
    skip_ws();
    std::size_t start = pos;
    long long v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      if (v > 1'000'000) {
        pos = start;
        fail("integer out of range");
      }
      ++pos;
    }
    if (pos == start) fail("expected a nonnegative integer");
    return static_cast<int>(v);
  }
  // comma separated integers up to (not including) the terminator
  std::vector<int> list(char terminator)
  {
    std::vector<int> out;
    if (peek(terminator)) return out;
    out.push_back(number());
    while (peek(',')) {
      ++pos;
      out.push_back(number());
    }
    return out;
  }
  void finish()
  {
    skip_ws();
    if (pos != text.size()) fail("trailing characters");
  }
};

}  // namespace

Symbol parse_symbol(std::string_view text)
{
  Cursor c{text};
  c.expect('[');
  auto a = c.list('|');
  c.expect('|');
  auto b = c.list(']');
  c.expect(']');
  c.finish();
  return Symbol::normalize(std::move(a), std::move(b));
}

Bipartition parse_bipartition(std::string_view text)
{
  Cursor c{text};
  c.expect('(');
  c.expect('[');
  auto u = c.list(']');
  c.expect(']');
  c.expect(',');
  c.expect('[');
  auto l = c.list(']');
  c.expect(']');
  c.expect(')');
  c.finish();
  return {Partition(std::move(u)), Partition(std::move(l))};
}

}  // namespace ggp
