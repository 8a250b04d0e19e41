#pragma once

// Partitions, bipartitions and Lusztig symbols.
//
// A symbol is a pair of strictly decreasing rows of nonnegative integers,
// taken up to the shift (A|B) ~ (A+1 ∪ {0} | B+1 ∪ {0}).  We always store
// the reduced representative, so == is equality of classes.

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace ggp {

class Partition {
 public:
  Partition() = default;
  // parts must be weakly decreasing and nonnegative; zeros are trimmed
  explicit Partition(std::vector<int> parts);
  Partition(std::initializer_list<int> parts)
      : Partition(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const noexcept { return parts_; }
  int size() const noexcept { return size_; }
  int length() const noexcept { return static_cast<int>(parts_.size()); }
  bool empty() const noexcept { return parts_.empty(); }

  // zero padded access
  int operator[](std::size_t i) const noexcept
  {
    return i < parts_.size() ? parts_[i] : 0;
  }

  // the partition with its largest part removed (λ²)
  Partition drop_first() const;

  bool operator==(const Partition&) const = default;
  auto operator<=>(const Partition&) const = default;

 private:
  std::vector<int> parts_;
  int size_ = 0;
};

Partition partition_transpose(const Partition& p);

// λ ≼ μ  iff  μ_i - 1 <= λ_i <= μ_i for all i
bool close_dominates(const Partition& lam, const Partition& mu);

// all partitions of n, in reverse lexicographic order ([n] first)
std::vector<Partition> partitions_of(int n);

struct Bipartition {
  Partition upper;
  Partition lower;

  int size() const noexcept { return upper.size() + lower.size(); }
  bool operator==(const Bipartition&) const = default;
  auto operator<=>(const Bipartition&) const = default;
};

// all ordered pairs (λ, μ) with |λ| + |μ| = n; |λ| descending
std::vector<Bipartition> bipartitions_of(int n);

class Symbol {
 public:
  Symbol() = default;  // (∅ | ∅)

  // Validates the rows and applies reduction steps until the rows no
  // longer both contain 0.  Throws NormalizationError on bad rows.
  static Symbol normalize(std::vector<int> row_a, std::vector<int> row_b);

  const std::vector<int>& row_a() const noexcept { return a_; }
  const std::vector<int>& row_b() const noexcept { return b_; }

  int rank() const noexcept;
  int defect() const noexcept
  {
    return static_cast<int>(a_.size()) - static_cast<int>(b_.size());
  }
  Symbol transpose() const { return Symbol(b_, a_); }

  bool operator==(const Symbol&) const = default;
  auto operator<=>(const Symbol&) const = default;

 private:
  Symbol(std::vector<int> a, std::vector<int> b)
      : a_(std::move(a)), b_(std::move(b)) {}

  std::vector<int> a_, b_;
};

// rank of an arbitrary (not necessarily reduced) valid row pair
int symbol_rank_raw(const std::vector<int>& row_a,
                    const std::vector<int>& row_b);

inline int symbol_rank(const Symbol& s) { return s.rank(); }
inline int symbol_defect(const Symbol& s) { return s.defect(); }
inline Symbol symbol_transpose(const Symbol& s) { return s.transpose(); }
inline Symbol symbol_normalize(std::vector<int> a, std::vector<int> b)
{
  return Symbol::normalize(std::move(a), std::move(b));
}

// Υ: subtract the staircase from each row, giving (Υ(Λ)^*, Υ(Λ)_*)
Bipartition upsilon(const Symbol& s);
Symbol upsilon_inverse(const Bipartition& bp, int defect);

// rank of the pure staircase of the given defect, i.e. the offset f(β)
// in rank(Λ) = |Υ(Λ)| + f(def Λ)
int staircase_rank(int defect);

enum class SymbolFamily { SpUnipotent, OEvenPlus, OEvenMinus, OOdd };

std::string_view to_string(SymbolFamily f);
bool family_admits(SymbolFamily f, int defect);
// defects β admitted by f with f(β) <= rank, in enumeration order
std::vector<int> family_defects(SymbolFamily f, int rank);

// Enumeration order: |defect| ascending, negative before positive, then
// the rows lexicographically.
bool enumeration_less(const Symbol& x, const Symbol& y);

std::vector<Symbol> enumerate_symbols(int rank, SymbolFamily f);

// Upper bound on symbol ranks accepted by normalize (default 64).
int rank_limit() noexcept;
void set_rank_limit(int limit);

// text forms: [a1,a2|b1], ([p1,p2],[q1])
std::string format_symbol(const Symbol& s);
std::string format_partition(const Partition& p);
std::string format_bipartition(const Bipartition& bp);
Symbol parse_symbol(std::string_view text);
Bipartition parse_bipartition(std::string_view text);

}  // namespace ggp
