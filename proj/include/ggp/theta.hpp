#pragma once

// Theta correspondence on symbols: the B and G sets, first occurrence
// (closed form and supported), cuspidal theta.

#include <optional>
#include <string_view>
#include <vector>

#include "ggp/catalog.hpp"
#include "ggp/combinatorics.hpp"

namespace ggp {

// (Λ, Λ') ∈ B^sign.  Λ must have defect ≡ 1 mod 4 and Λ' must lie in the
// even class of the sign (≡ 0 mod 4 for +, ≡ 2 mod 4 for -).
bool in_B(const Symbol& lam, const Symbol& lam_prime, Sign sign);

enum class GVariant { EvenPlus, EvenMinus, OddMinus, OddPlus };
std::string_view to_string(GVariant v);

std::optional<GVariant> in_G(const Symbol& lam, const Symbol& lam_prime);
inline bool in_G_any(const Symbol& lam, const Symbol& lam_prime)
{
  return in_G(lam, lam_prime).has_value();
}

// all Λ' of the given rank with (Λ, Λ') ∈ B^sign, enumeration order
std::vector<Symbol> theta_fiber(const Symbol& lam, Sign sign, int target_rank);
// all Λ of the given rank with (Λ, Λ') ∈ B^ε, ε read off def(Λ')
std::vector<Symbol> theta_fiber_reverse(const Symbol& lam_prime, int target_rank);

enum class Direction { SpToO, OToSp };

struct FirstOccurrence {
  int index = 0;
  std::optional<Symbol> lift;  // unipotent lifts
  std::optional<KH> lift_kh;   // supported lifts
  bool resolved = true;
};

// Source symbol is Sp-type for SpToO and even for OToSp; for OToSp the
// sign must be the one of the source's even class.
FirstOccurrence first_occurrence_unipotent(const Symbol& lam, Sign sign, Direction dir);

namespace detail {
// lambda1_shift perturbs the leading part used by the index formula; it
// exists so the oracle can prove it detects a wrong closed form.
FirstOccurrence first_occurrence_unipotent_impl(const Symbol& lam, Sign sign,
                                                Direction dir, int lambda1_shift);
}  // namespace detail

enum class ThetaVariant { Down, Up };

struct CuspidalTheta {
  Symbol sp;
  Symbol o;
  Sign eps;  // sign of the even orthogonal group
};

CuspidalTheta cuspidal_theta(int k, ThetaVariant v);

enum class Tower { Sp, OEvenPlus, OEvenMinus, OOddPlus, OOddMinus };
std::string_view to_string(Tower t);

// Orientation bits of one label.
//  primary:     Sp label: sign of the even tower where the first occurrence
//               is n-k.  Orthogonal label: + when the first occurrence in
//               the Sp tower is the smaller branch (n-|k| resp. n-k).
//  secondary:   Sp label: sign of the odd tower where the first occurrence
//               is n-|h|.  Orthogonal label: primary of χ⊗π.
//  tilde:       even L slot of an orthogonal label, + when Λ̃ = Λ.
//  tilde_prime: even L' slot.  For Sp labels Λ̃' depends on the odd tower
//               O^τ it is lifted to: Λ̃' = Λ' iff tilde_prime·τ = +.
// The tilde bits only matter for defect 0 slots with Λ ≠ Λ^t.
struct Orientation {
  std::optional<Sign> primary;
  std::optional<Sign> secondary;
  std::optional<Sign> tilde;
  std::optional<Sign> tilde_prime;

  bool operator==(const Orientation&) const = default;
};

struct TowerContext {
  Sign eps_minus_one = Sign::Plus;
  Tower tower = Tower::Sp;
  Orientation left;
  Orientation right;
  bool rho_disjoint = true;
};

// Fill absent bits that the label itself determines.
Orientation effective_orientation(const RepLabel& label, const Orientation& given);

// Orientation of twist_label(label, t) given the orientation of label.
Orientation twist_orientation(const Orientation& o, GroupFamily family, Twist t);
// even orthogonal label with only L transposed
Orientation transpose_lam_orientation(const Orientation& o);

// Rule for an even symbol of unipotent type: + iff the lift to the Sp
// tower happens at n-|k|.
Sign unipotent_even_primary(int signed_k);

// Supported first occurrence of a label whose symbols are staircases.
// Uses ctx.left as the label's orientation (after defaults).
FirstOccurrence first_occurrence_supported(const RepLabel& label, const TowerContext& ctx);

}  // namespace ggp
