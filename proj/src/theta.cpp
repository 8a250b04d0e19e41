#include "ggp/theta.hpp"

#include <cstdlib>

#include "ggp/error.hpp"

namespace ggp {

namespace {

int mod4(int x) { return ((x % 4) + 4) % 4; }

Partition T(const Partition& p) { return partition_transpose(p); }

bool prec(const Partition& a, const Partition& b) { return close_dominates(a, b); }

SymbolFamily even_family(Sign s)
{
  return s == Sign::Plus ? SymbolFamily::OEvenPlus : SymbolFamily::OEvenMinus;
}

bool is_staircase(const Symbol& s) { return s.rank() == staircase_rank(s.defect()); }

}  // namespace

bool in_B(const Symbol& lam, const Symbol& lam_prime, Sign sign)
{
  if (mod4(lam.defect()) != 1)
    throw Error(ErrorKind::DefectClassMismatch,
                "B-set source needs defect 1 mod 4, got " + std::to_string(lam.defect()));
  if (!family_admits(even_family(sign), lam_prime.defect()))
    throw Error(ErrorKind::DefectClassMismatch,
                "B-set target defect " + std::to_string(lam_prime.defect()) +
                    " does not match sign " + sign_char(sign));
  const Bipartition u = upsilon(lam), v = upsilon(lam_prime);
  if (sign == Sign::Plus) {
    return lam_prime.defect() == -lam.defect() + 1 && prec(T(v.lower), T(u.upper)) &&
           prec(T(u.lower), T(v.upper));
  }
  return lam_prime.defect() == -lam.defect() - 1 && prec(T(v.upper), T(u.lower)) &&
         prec(T(u.upper), T(v.lower));
}

std::string_view to_string(GVariant v)
{
  switch (v) {
    case GVariant::EvenPlus: return "even,+";
    case GVariant::EvenMinus: return "even,-";
    case GVariant::OddMinus: return "odd,-";
    case GVariant::OddPlus: return "odd,+";
  }
  return "?";
}

std::optional<GVariant> in_G(const Symbol& lam, const Symbol& lam_prime)
{
  const int d = lam.defect(), dp = lam_prime.defect();
  if (d % 2 == 0 || dp % 2 != 0) return std::nullopt;
  const Bipartition u = upsilon(lam), v = upsilon(lam_prime);
  if (d > 0) {
    if (dp == d - 1 && prec(u.upper, v.upper) && prec(v.lower, u.lower))
      return GVariant::EvenPlus;
    if (dp == -d - 1 && prec(v.lower, u.upper) && prec(u.lower, v.upper))
      return GVariant::EvenMinus;
  } else {
    if (dp == d + 1 && prec(v.upper, u.upper) && prec(u.lower, v.lower))
      return GVariant::OddMinus;
    if (dp == -d + 1 && prec(v.upper, u.lower) && prec(u.upper, v.lower))
      return GVariant::OddPlus;
  }
  return std::nullopt;
}

std::vector<Symbol> theta_fiber(const Symbol& lam, Sign sign, int target_rank)
{
  if (mod4(lam.defect()) != 1)
    throw Error(ErrorKind::DefectClassMismatch, "theta_fiber source needs defect 1 mod 4");
  std::vector<Symbol> out;
  for (auto& cand : enumerate_symbols(target_rank, even_family(sign)))
    if (in_B(lam, cand, sign)) out.push_back(std::move(cand));
  return out;
}

std::vector<Symbol> theta_fiber_reverse(const Symbol& lam_prime, int target_rank)
{
  if (lam_prime.defect() % 2 != 0)
    throw Error(ErrorKind::DefectClassMismatch, "reverse fiber source needs an even defect");
  const Sign sign = even_symbol_sign(lam_prime);
  std::vector<Symbol> out;
  for (auto& cand : enumerate_symbols(target_rank, SymbolFamily::SpUnipotent))
    if (in_B(cand, lam_prime, sign)) out.push_back(std::move(cand));
  return out;
}

FirstOccurrence first_occurrence_unipotent(const Symbol& lam, Sign sign, Direction dir)
{
  return detail::first_occurrence_unipotent_impl(lam, sign, dir, 0);
}

FirstOccurrence detail::first_occurrence_unipotent_impl(const Symbol& lam, Sign sign,
                                                        Direction dir, int lambda1_shift)
{
  const int n = lam.rank();
  const int d = lam.defect();
  const Bipartition bp = upsilon(lam);
  const Partition& la = bp.upper;
  const Partition& mu = bp.lower;
  FirstOccurrence fo;

  if (dir == Direction::SpToO) {
    if (mod4(d) != 1)
      throw Error(ErrorKind::DefectClassMismatch, "Sp source needs defect 1 mod 4");
    if (sign == Sign::Plus) {
      fo.index = n - la[0] - (d - 1) / 2;
      fo.lift = upsilon_inverse({mu, la.drop_first()}, -d + 1);
    } else {
      fo.index = n - mu[0] + (d + 1) / 2;
      fo.lift = upsilon_inverse({mu.drop_first(), la}, -d - 1);
    }
  } else {
    if (d % 2 != 0 || even_symbol_sign(lam) != sign)
      throw Error(ErrorKind::DefectClassMismatch,
                  "orthogonal source defect " + std::to_string(d) + " is not in the " +
                      sign_char(sign) + " class");
    // here Υ(Λ') is written [μ'; λ']
    const Partition& mup = bp.upper;
    const Partition& lap = bp.lower;
    if (sign == Sign::Plus) {
      fo.index = n - mup[0] - d / 2;
      fo.lift = upsilon_inverse({lap, mup.drop_first()}, 1 - d);
    } else {
      fo.index = n - lap[0] + d / 2;
      fo.lift = upsilon_inverse({lap.drop_first(), mup}, -d - 1);
    }
  }
  fo.index -= lambda1_shift;
  return fo;
}

CuspidalTheta cuspidal_theta(int k, ThetaVariant v)
{
  if (k < 0) throw Error(ErrorKind::NormalizationError, "negative cuspidal index");
  const bool even = k % 2 == 0;
  CuspidalTheta out{cuspidal_symbol(CuspKind::SpCusp, k), Symbol{}, Sign::Plus};
  if (v == ThetaVariant::Down) {
    out.o = staircase_symbol(even ? -2 * k : 2 * k);
    out.eps = sign_of_parity(k);
  } else {
    out.o = staircase_symbol(even ? -(2 * k + 2) : 2 * k + 2);
    out.eps = sign_of_parity(k + 1);
  }
  return out;
}

std::string_view to_string(Tower t)
{
  switch (t) {
    case Tower::Sp: return "sp";
    case Tower::OEvenPlus: return "o+even";
    case Tower::OEvenMinus: return "o-even";
    case Tower::OOddPlus: return "o+odd";
    case Tower::OOddMinus: return "o-odd";
  }
  return "?";
}

Sign unipotent_even_primary(int signed_k)
{
  if (signed_k == 0) return Sign::Plus;
  Sign s = signed_k > 0 ? Sign::Plus : Sign::Minus;
  return s == sign_of_parity(std::abs(signed_k)) ? Sign::Plus : Sign::Minus;
}

Orientation effective_orientation(const RepLabel& label, const Orientation& given)
{
  Orientation o = given;
  if (!label.rho.is_trivial()) return o;
  const KH kh = kh_of(label);
  switch (label.group.family) {
    case GroupFamily::Sp:
      // the even tower carrying the small lift is forced by the sign rule
      // on the lifted label
      if (!o.primary) o.primary = sign_of_parity(kh.k + kh.h);
      break;
    case GroupFamily::OEven:
      if (label.lam_prime == Symbol{}) {
        if (!o.primary) o.primary = unipotent_even_primary(kh.k);
        if (!o.tilde) o.tilde = Sign::Plus;
      }
      if (label.lam == Symbol{}) {
        if (!o.secondary) o.secondary = unipotent_even_primary(kh.h);
        if (!o.tilde_prime) o.tilde_prime = Sign::Plus;
      }
      break;
    case GroupFamily::OOdd:
      // support on O_1: the trivial character lifts to Sp_0
      if (label.lam.defect() == 1 && label.lam_prime.defect() == 1 && !o.primary &&
          is_unipotent(label))
        o.primary = *label.eps_flag;
      if (label.lam.defect() == 1 && label.lam_prime.defect() == 1 && !o.secondary &&
          label.lam == empty_slot_symbol(GroupFamily::OOdd, false))
        o.secondary = *label.eps_flag;
      break;
  }
  return o;
}

static std::optional<Sign> flip(std::optional<Sign> s)
{
  if (s) return -*s;
  return s;
}

Orientation twist_orientation(const Orientation& o, GroupFamily family, Twist t)
{
  Orientation r = o;
  switch (t) {
    case Twist::Sgn:
      if (family == GroupFamily::Sp)
        throw Error(ErrorKind::InapplicableTwist, "sgn twist needs an orthogonal group");
      r.primary = flip(o.primary);
      r.secondary = flip(o.secondary);
      break;
    case Twist::Chi:
      if (family == GroupFamily::Sp)
        throw Error(ErrorKind::InapplicableTwist, "chi twist needs an orthogonal group");
      std::swap(r.primary, r.secondary);
      std::swap(r.tilde, r.tilde_prime);
      break;
    case Twist::Conj:
      if (family == GroupFamily::OOdd)
        throw Error(ErrorKind::InapplicableTwist, "conjugation acts trivially on odd orthogonal labels");
      r.secondary = flip(o.secondary);
      break;
  }
  return r;
}

Orientation transpose_lam_orientation(const Orientation& o)
{
  Orientation r = o;
  r.primary = flip(o.primary);
  return r;
}

FirstOccurrence first_occurrence_supported(const RepLabel& label, const TowerContext& ctx)
{
  if (!is_staircase(label.lam) || !is_staircase(label.lam_prime))
    throw Error(ErrorKind::NotCuspidalSupport, "label symbols are not cuspidal: " + format_label(label));
  const GroupFamily fam = label.group.family;
  const bool to_sp = ctx.tower == Tower::Sp;
  if ((fam == GroupFamily::Sp) == to_sp)
    throw Error(ErrorKind::CaseMismatch, std::string("tower ") + std::string(to_string(ctx.tower)) +
                                             " does not pair with " + format_group(label.group));

  const Orientation o = effective_orientation(label, ctx.left);
  const int n = label.group.rank;
  const KH kh = kh_of(label);
  const int k = kh.k, h = kh.h;
  FirstOccurrence fo;

  auto choose = [&](std::optional<bool> small, int small_idx, KH small_kh, int large_idx,
                    KH large_kh) {
    if (small_idx == large_idx && small_kh == large_kh) small = true;
    if (!small) {
      fo.resolved = false;
      small = true;
    }
    fo.index = *small ? small_idx : large_idx;
    fo.lift_kh = *small ? small_kh : large_kh;
  };
  auto eq = [](std::optional<Sign> a, Sign b) -> std::optional<bool> {
    if (!a) return std::nullopt;
    return *a == b;
  };

  switch (fam) {
    case GroupFamily::Sp:
      if (ctx.tower == Tower::OEvenPlus || ctx.tower == Tower::OEvenMinus) {
        Sign t = ctx.tower == Tower::OEvenPlus ? Sign::Plus : Sign::Minus;
        int s = k % 2 == 0 ? -1 : 1;
        choose(eq(o.primary, t), n - k, {s * k, h}, n + k + 1, {s * (k + 1), h});
      } else {
        Sign t = ctx.tower == Tower::OOddPlus ? Sign::Plus : Sign::Minus;
        int ah = std::abs(h);
        if (ah == 0)
          choose(true, n, {0, k}, n, {0, k});
        else
          choose(eq(o.secondary, t), n - ah, {ah - 1, k}, n + ah, {ah, k});
      }
      break;
    case GroupFamily::OEven: {
      int ak = std::abs(k);
      if (ak == 0)
        choose(true, n, {0, h}, n, {0, h});
      else
        choose(eq(o.primary, Sign::Plus), n - ak, {ak - 1, h}, n + ak, {ak, h});
      break;
    }
    case GroupFamily::OOdd: {
      int s = k % 2 == 0 ? -1 : 1;
      choose(eq(o.primary, Sign::Plus), n - k, {h, s * k}, n + k + 1, {h, s * (k + 1)});
      break;
    }
  }
  return fo;
}

}  // namespace ggp
