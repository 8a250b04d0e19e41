#pragma once

// Representation labels π_{ρ,Λ,Λ'} (and π_{ρ,Λ,Λ',ε} for odd orthogonal
// groups).  ρ is opaque: only its rank and a regularity flag are used.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ggp/combinatorics.hpp"

namespace ggp {

enum class Sign : int { Minus = -1, Plus = 1 };

inline Sign operator*(Sign a, Sign b)
{
  return static_cast<int>(a) * static_cast<int>(b) > 0 ? Sign::Plus : Sign::Minus;
}
inline Sign operator-(Sign a) { return a == Sign::Plus ? Sign::Minus : Sign::Plus; }
inline Sign sign_of_parity(int x) { return (x % 2 == 0) ? Sign::Plus : Sign::Minus; }
inline char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }
Sign parse_sign(std::string_view text);

// square class of -1 in F_q: + iff q ≡ 1 mod 4.  q must be odd.
Sign eps_minus_one_from_q(long long q);

enum class GroupFamily { Sp, OEven, OOdd };

struct GroupTag {
  GroupFamily family = GroupFamily::Sp;
  int rank = 0;  // n in Sp_2n, O_2n, O_2n+1
  std::optional<Sign> sign;

  static GroupTag sp(int n) { return {GroupFamily::Sp, n, std::nullopt}; }
  static GroupTag o_even(int n, Sign s) { return {GroupFamily::OEven, n, s}; }
  static GroupTag o_odd(int n, Sign s) { return {GroupFamily::OOdd, n, s}; }

  int dimension() const { return family == GroupFamily::OOdd ? 2 * rank + 1 : 2 * rank; }
  bool operator==(const GroupTag&) const = default;
};

std::string format_group(const GroupTag& g);
GroupTag parse_group(std::string_view text);

struct RhoDescriptor {
  int glu_rank = 0;
  bool regular = true;
  std::string id = "trivial";

  static RhoDescriptor trivial() { return {}; }
  bool is_trivial() const { return glu_rank == 0; }
  bool operator==(const RhoDescriptor&) const = default;
  auto operator<=>(const RhoDescriptor&) const = default;
};

struct RepLabel {
  GroupTag group;
  RhoDescriptor rho;
  Symbol lam;
  Symbol lam_prime;
  std::optional<Sign> eps_flag;

  bool operator==(const RepLabel&) const = default;
};

bool lam_prime_admits(GroupFamily g, int defect);

// The empty symbol of each slot kind: (0|) for defect ≡ 1 mod 4 slots,
// [|] for even slots.
Symbol empty_slot_symbol(GroupFamily g, bool prime_slot);

// sign of the even orthogonal group carrying an even-defect symbol
inline Sign even_symbol_sign(const Symbol& s) { return sign_of_parity(s.defect() / 2); }

RepLabel make_label(const GroupTag& group, const RhoDescriptor& rho,
                    const Symbol& lam, const Symbol& lam_prime,
                    std::optional<Sign> eps_flag, Sign eps_minus_one);

// group sign forced by the symbols of an even orthogonal label; nullopt
// when a defect is odd
std::optional<Sign> oeven_group_sign(const RhoDescriptor& rho, const Symbol& lam,
                                     const Symbol& lam_prime, Sign eps_minus_one);

struct KH {
  int k = 0;
  int h = 0;
  bool operator==(const KH&) const = default;
};

// (|d|-1)/2 for d ≡ 1 mod 4, d/2 for even d
int kh_component(int defect);
KH kh_of(const RepLabel& label);
inline KH cuspidal_support_kh(const RepLabel& label) { return kh_of(label); }

enum class CuspKind { SpCusp, OEvenCusp, OOddCusp };

Symbol cuspidal_symbol(CuspKind kind, int k);
// the unique symbol of the given defect with empty Υ image
Symbol staircase_symbol(int defect);
bool is_unipotent_cuspidal(const Symbol& s, SymbolFamily f);

// Replace both symbols by the staircases of the same defects and shrink
// the group rank accordingly.
RepLabel cuspidal_support_label(const RepLabel& label);

bool is_unipotent(const RepLabel& label);

enum class Twist { Sgn, Chi, Conj };
std::string_view to_string(Twist t);
RepLabel twist_label(const RepLabel& label, Twist t);

// trivial descriptor at rank 0, one regular "gen" descriptor for each
// positive rank up to max_rank
std::vector<RhoDescriptor> default_rho_catalog(int max_rank);

std::string format_rho(const RhoDescriptor& rho);
RhoDescriptor parse_rho(std::string_view text);

// sp(2n)|o±(2n)|o±(2n+1) : rho=id:rank[:reg] ; L=[..|..] ; L'=[..|..] [; eps=±]
std::string format_label(const RepLabel& label);
RepLabel parse_label(std::string_view text, Sign eps_minus_one);

}  // namespace ggp
