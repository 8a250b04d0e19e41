#include "ggp/ggp.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

#include "ggp/error.hpp"

namespace ggp {

std::string_view to_string(CaseKind k)
{
  return k == CaseKind::Bessel ? "bessel" : "fj";
}

std::string format_multiplicity(const Multiplicity& m)
{
  switch (m.value) {
    case MultValue::Zero: return "0";
    case MultValue::One: return "1";
    case MultValue::SymbolicBase: return "m(" + m.rho_left + "," + m.rho_right + ")";
    case MultValue::Undetermined: return "undetermined(" + m.reason + ")";
  }
  return "?";
}

std::string_view status_of(const Multiplicity& m)
{
  switch (m.value) {
    case MultValue::Zero: return "zero";
    case MultValue::One: return "one";
    case MultValue::SymbolicBase: return "symbolic";
    case MultValue::Undetermined: return "undetermined";
  }
  return "?";
}

bool relevance_necessary(const KH& l, const KH& r, const GGPCase& c)
{
  if (c.kind == CaseKind::FourierJacobi) {
    const int hr = std::abs(r.h), hl = std::abs(l.h);
    return (l.k == hr || l.k == hr - 1) && (r.k == hl || r.k == hl - 1);
  }
  const int kr = std::abs(r.k), hr = std::abs(r.h);
  return (kr == l.k || kr == l.k + 1) && (hr == l.h || hr == l.h + 1);
}

namespace {

struct Side {
  RepLabel label;
  Orientation o;
};

struct Prepared {
  Side left;   // FJ: larger rank; Bessel: odd orthogonal
  Side right;  // FJ: smaller rank; Bessel: even orthogonal
  Sign eps_minus_one;
  Sign eps_zero;
  CaseKind kind;
};

void check_case(const RepLabel& a, const RepLabel& b, CaseKind kind)
{
  const GroupFamily fa = a.group.family, fb = b.group.family;
  if (kind == CaseKind::FourierJacobi) {
    if (fa != GroupFamily::Sp || fb != GroupFamily::Sp)
      throw Error(ErrorKind::CaseMismatch, "Fourier-Jacobi needs two symplectic labels");
  } else {
    bool ok = (fa == GroupFamily::OOdd && fb == GroupFamily::OEven) ||
              (fa == GroupFamily::OEven && fb == GroupFamily::OOdd);
    if (!ok)
      throw Error(ErrorKind::CaseMismatch,
                  "Bessel needs one odd and one even orthogonal label");
  }
}

Prepared prepare(const RepLabel& left, const RepLabel& right, const GGPCase& c,
                 const TowerContext& ctx)
{
  check_case(left, right, c.kind);
  Prepared p{{left, ctx.left}, {right, ctx.right}, ctx.eps_minus_one,
             c.eps_zero.value_or(ctx.eps_minus_one), c.kind};
  if (c.kind == CaseKind::FourierJacobi) {
    if (left.group.rank < right.group.rank) {
      if (!c.symmetrize)
        throw Error(ErrorKind::RankOrder,
                    "Fourier-Jacobi expects rank(left) >= rank(right); pass symmetrize to swap");
      // (π,π') is ε0-relevant iff (π',π) is ε_{-1}ε0-relevant
      std::swap(p.left, p.right);
      p.eps_zero = p.eps_minus_one * p.eps_zero;
    }
  } else if (left.group.family == GroupFamily::OEven) {
    std::swap(p.left, p.right);
  }
  p.left.o = effective_orientation(p.left.label, p.left.o);
  p.right.o = effective_orientation(p.right.label, p.right.o);
  return p;
}

// Run f over every completion of the absent primary/secondary bits.
void for_each_completion(const Orientation& l, const Orientation& r,
                         const std::function<void(const Orientation&, const Orientation&)>& f)
{
  Orientation lc = l, rc = r;
  std::vector<std::optional<Sign>*> holes;
  for (auto* s : {&lc.primary, &lc.secondary, &rc.primary, &rc.secondary})
    if (!*s) holes.push_back(s);
  const unsigned total = 1u << holes.size();
  for (unsigned mask = 0; mask < total; ++mask) {
    for (std::size_t i = 0; i < holes.size(); ++i)
      *holes[i] = (mask >> i) & 1u ? Sign::Minus : Sign::Plus;
    f(lc, rc);
  }
}

bool asymmetric_zero_defect(const Symbol& s) { return s.defect() == 0 && s != s.transpose(); }

// Candidates for Λ̃: pinned when the tilde bit is known and matters,
// otherwise both transposes (existential search).
std::vector<Symbol> tilde_candidates(const Symbol& s, std::optional<Sign> bit, Sign flip)
{
  if (bit && asymmetric_zero_defect(s)) return {(*bit * flip) == Sign::Plus ? s : s.transpose()};
  if (s == s.transpose()) return {s};
  return {s, s.transpose()};
}

bool gate(const Symbol& lam, const std::vector<Symbol>& cands)
{
  return std::any_of(cands.begin(), cands.end(),
                     [&](const Symbol& c) { return in_G_any(lam, c); });
}

struct Eval {
  bool relevant = false;
  bool gate = false;
};

// FJ relevance of (a,b) at ε0 with all bits known
bool fj_rel(const Side& a, const Side& b, Sign e0)
{
  const Sign tau = *a.o.primary * e0;
  const int d = kh_of(a.label).k;
  const int hb = std::abs(kh_of(b.label).h);
  const int mm = (hb == 0 || tau == *b.o.secondary) ? hb : -hb;
  return d == mm - 1 || d == mm;
}

Eval eval_fj(const Prepared& p, const Orientation& lo, const Orientation& ro)
{
  Side l{p.left.label, lo}, r{p.right.label, ro};
  Eval e;
  const Sign e0 = p.eps_zero, e1 = p.eps_minus_one * p.eps_zero;
  e.relevant = fj_rel(l, r, e0) && fj_rel(r, l, e1);
  // Λ̃' of each side is read in the odd tower the other side's relevance
  // uses
  const Sign tau_r = *lo.primary * e0;
  const Sign tau_l = *ro.primary * e1;
  e.gate = gate(l.label.lam, tilde_candidates(r.label.lam_prime, ro.tilde_prime, tau_r)) &&
           gate(r.label.lam, tilde_candidates(l.label.lam_prime, lo.tilde_prime, tau_l));
  return e;
}

struct BesselRel {
  bool relevant;
  Sign chi;  // + for χ0 = 1
};

BesselRel bessel_rel(int ko, Sign po, int ke, Sign pe, bool odd_big)
{
  auto d_odd = [&](Sign chi) { return (chi == po) ? ko : -(ko + 1); };
  auto d_even = [&](Sign chi) { return (chi == pe) ? std::abs(ke) : -std::abs(ke); };
  // χ0 with the bigger group's first occurrence at or below its rank;
  // ties go to the odd side's own orientation
  Sign chi = po;
  auto big = [&](Sign c) { return odd_big ? d_odd(c) : d_even(c); };
  if (big(chi) < 0) chi = -chi;
  const int db = odd_big ? d_odd(chi) : d_even(chi);
  const int ds = odd_big ? d_even(chi) : d_odd(chi);
  bool ok = odd_big ? (db == ds - 1 || db == ds) : (db == ds + 1 || db == ds);
  return {ok, chi};
}

Eval eval_bessel(const Prepared& p, const Orientation& oo, const Orientation& eo)
{
  const KH ko = kh_of(p.left.label), ke = kh_of(p.right.label);
  const bool odd_big = p.left.label.group.rank >= p.right.label.group.rank;
  BesselRel r1 = bessel_rel(ko.k, *oo.primary, ke.k, *eo.primary, odd_big);
  BesselRel r2 = bessel_rel(ko.h, *oo.secondary, ke.h, *eo.secondary, odd_big);
  Eval e;
  e.relevant = r1.relevant && r2.relevant;
  // χ0 = sgn transposes the even side's Λ̃
  e.gate = gate(p.left.label.lam, tilde_candidates(p.right.label.lam, eo.tilde, r1.chi)) &&
           gate(p.left.label.lam_prime,
                tilde_candidates(p.right.label.lam_prime, eo.tilde_prime, r2.chi));
  return e;
}

Eval eval(const Prepared& p, const Orientation& lo, const Orientation& ro)
{
  return p.kind == CaseKind::FourierJacobi ? eval_fj(p, lo, ro) : eval_bessel(p, lo, ro);
}

Multiplicity base_factor(const RhoDescriptor& a, const RhoDescriptor& b, bool disjoint)
{
  if (a.is_trivial() && b.is_trivial()) return Multiplicity::one();
  if (a.is_trivial() || b.is_trivial()) {
    const RhoDescriptor& other = a.is_trivial() ? b : a;
    return other.regular ? Multiplicity::one() : Multiplicity::zero();
  }
  if (a.regular && b.regular && disjoint) return Multiplicity::one();
  return Multiplicity::symbolic(format_rho(a), format_rho(b));
}

// nonzero-ness over all completions: all true, all false, or mixed
std::optional<bool> decide(const Prepared& p, bool need_gate)
{
  bool any_true = false, any_false = false;
  for_each_completion(p.left.o, p.right.o, [&](const Orientation& lo, const Orientation& ro) {
    Eval e = eval(p, lo, ro);
    bool v = e.relevant && (!need_gate || e.gate);
    (v ? any_true : any_false) = true;
  });
  if (any_true && any_false) return std::nullopt;
  return any_true;
}

Multiplicity multiplicity_prepared(const Prepared& p, bool rho_disjoint)
{
  if (!relevance_necessary(kh_of(p.left.label), kh_of(p.right.label), {p.kind, {}, false}))
    return Multiplicity::zero();
  Multiplicity base = base_factor(p.left.label.rho, p.right.label.rho, rho_disjoint);
  if (base.value == MultValue::Zero) return base;
  std::optional<bool> nz = decide(p, true);
  if (!nz) return Multiplicity::undetermined("orientation");
  return *nz ? base : Multiplicity::zero();
}

}  // namespace

std::optional<bool> is_strongly_relevant(const RepLabel& left, const RepLabel& right,
                                         const GGPCase& c, const TowerContext& ctx)
{
  GGPCase cc = c;
  cc.symmetrize = true;
  Prepared p = prepare(left, right, cc, ctx);
  if (!relevance_necessary(kh_of(p.left.label), kh_of(p.right.label), cc)) return false;
  return decide(p, false);
}

Multiplicity ggp_multiplicity(const RepLabel& left, const RepLabel& right, const GGPCase& c,
                              const TowerContext& ctx)
{
  return multiplicity_prepared(prepare(left, right, c, ctx), ctx.rho_disjoint);
}

// ---- variants ----

namespace {

struct Variant {
  RepLabel label;
  std::function<Orientation(const Orientation&)> orient;
};

std::vector<Variant> side_variants(const RepLabel& label, bool even_side_both)
{
  std::vector<Variant> out;
  auto same = [](const Orientation& o) { return o; };
  auto conj = [](const Orientation& o) {
    Orientation r = o;
    if (r.secondary) r.secondary = -*r.secondary;
    return r;
  };
  auto push = [&](RepLabel l, std::function<Orientation(const Orientation&)> f) {
    for (const auto& v : out)
      if (v.label == l) return;
    out.push_back({std::move(l), std::move(f)});
  };
  push(label, same);
  RepLabel c = label;
  c.lam_prime = label.lam_prime.transpose();
  push(c, conj);
  if (even_side_both) {
    RepLabel t = label;
    t.lam = label.lam.transpose();
    push(t, transpose_lam_orientation);
    RepLabel tc = t;
    tc.lam_prime = label.lam_prime.transpose();
    push(tc, [conj](const Orientation& o) { return conj(transpose_lam_orientation(o)); });
  }
  return out;
}

}  // namespace

VariantReport variant_family(const RepLabel& left, const RepLabel& right, const GGPCase& c,
                             const TowerContext& ctx)
{
  Prepared base = prepare(left, right, c, ctx);
  std::vector<Variant> lv, rv;
  if (c.kind == CaseKind::FourierJacobi) {
    lv = side_variants(base.left.label, false);
    rv = side_variants(base.right.label, false);
  } else {
    lv = {{base.left.label, [](const Orientation& o) { return o; }}};
    rv = side_variants(base.right.label, true);
  }

  struct Cell {
    const Variant* l;
    const Variant* r;
    bool any_true = false, any_false = false;
    Multiplicity base;
    bool necessary = true;
  };
  std::vector<Cell> cells;
  for (const auto& a : lv)
    for (const auto& b : rv) {
      Cell cell{&a, &b, false, false, {}, true};
      cell.necessary = relevance_necessary(kh_of(a.label), kh_of(b.label), {c.kind, {}, false});
      cell.base = base_factor(a.label.rho, b.label.rho, ctx.rho_disjoint);
      cells.push_back(cell);
    }

  for_each_completion(base.left.o, base.right.o,
                      [&](const Orientation& lo, const Orientation& ro) {
                        int count = 0;
                        for (auto& cell : cells) {
                          Prepared p = base;
                          p.left = {cell.l->label, effective_orientation(cell.l->label, cell.l->orient(lo))};
                          p.right = {cell.r->label, effective_orientation(cell.r->label, cell.r->orient(ro))};
                          bool v = cell.necessary && cell.base.value != MultValue::Zero;
                          if (v) {
                            Eval e = eval(p, p.left.o, p.right.o);
                            v = e.relevant && e.gate;
                          }
                          (v ? cell.any_true : cell.any_false) = true;
                          if (v) ++count;
                        }
                        if (count > 1)
                          throw Error(ErrorKind::MultipleNonzero,
                                      std::to_string(count) + " variants of " +
                                          format_label(base.left.label) + " x " +
                                          format_label(base.right.label) + " are nonzero");
                      });

  VariantReport rep;
  for (const auto& cell : cells) {
    Multiplicity m;
    if (cell.any_true && cell.any_false)
      m = Multiplicity::undetermined("orientation");
    else
      m = cell.any_true ? cell.base : Multiplicity::zero();
    if (m.nonzero()) rep.nonzero.push_back(rep.variants.size());
    rep.variants.push_back({cell.l->label, cell.r->label, m});
  }
  return rep;
}

VariantReport select_nonzero_variant(const RepLabel& left, const RepLabel& right,
                                     const GGPCase& c, const TowerContext& ctx)
{
  return variant_family(left, right, c, ctx);
}

// ---- branching ----

bool label_less(const RepLabel& a, const RepLabel& b)
{
  if (a.lam != b.lam) return enumeration_less(a.lam, b.lam);
  if (a.lam_prime != b.lam_prime) return enumeration_less(a.lam_prime, b.lam_prime);
  if (a.rho.id != b.rho.id) return a.rho.id < b.rho.id;
  if (a.rho != b.rho) return a.rho < b.rho;
  return a.eps_flag < b.eps_flag;
}

std::vector<RepLabel> enumerate_labels(const GroupTag& group,
                                       const std::vector<RhoDescriptor>& rho_catalog,
                                       Sign eps_minus_one)
{
  std::vector<RepLabel> out;
  auto slot = [&](bool prime, int r) {
    std::vector<Symbol> s;
    bool odd = group.family == GroupFamily::OOdd || (group.family == GroupFamily::Sp && !prime);
    if (odd) return enumerate_symbols(r, SymbolFamily::OOdd);
    for (auto f : {SymbolFamily::OEvenPlus, SymbolFamily::OEvenMinus}) {
      auto part = enumerate_symbols(r, f);
      s.insert(s.end(), part.begin(), part.end());
    }
    return s;
  };
  for (const auto& rho : rho_catalog) {
    const int rest = group.rank - rho.glu_rank;
    if (rest < 0) continue;
    for (int r1 = 0; r1 <= rest; ++r1) {
      auto lams = slot(false, r1);
      auto primes = slot(true, rest - r1);
      for (const auto& a : lams)
        for (const auto& b : primes) {
          if (group.family == GroupFamily::OEven &&
              oeven_group_sign(rho, a, b, eps_minus_one) != group.sign)
            continue;
          if (group.family == GroupFamily::OOdd) {
            for (Sign e : {Sign::Plus, Sign::Minus})
              out.push_back(make_label(group, rho, a, b, e, eps_minus_one));
          } else {
            out.push_back(make_label(group, rho, a, b, std::nullopt, eps_minus_one));
          }
        }
    }
  }
  std::sort(out.begin(), out.end(), label_less);
  return out;
}

std::vector<BranchRow> branch_decomposition(const RepLabel& pi, const GroupTag& target,
                                            const TowerContext& ctx,
                                            const std::vector<RhoDescriptor>& rho_catalog)
{
  if (!is_unipotent(pi))
    throw Error(ErrorKind::NotUnipotent, format_label(pi) + " is not unipotent");
  GGPCase c;
  if (pi.group.family == GroupFamily::Sp && target.family == GroupFamily::Sp) {
    c.kind = CaseKind::FourierJacobi;
  } else if (pi.group.family == GroupFamily::OOdd && target.family == GroupFamily::OEven) {
    c.kind = CaseKind::Bessel;
  } else {
    throw Error(ErrorKind::CaseMismatch,
                "branching is defined from sp to sp and from odd to even orthogonal groups");
  }
  if (target.rank != pi.group.rank)
    throw Error(ErrorKind::RankMismatch, "target rank " + std::to_string(target.rank) +
                                             " differs from " + std::to_string(pi.group.rank));

  TowerContext cx = ctx;
  cx.right = {};
  std::vector<BranchRow> rows;
  for (auto& cand : enumerate_labels(target, rho_catalog, ctx.eps_minus_one)) {
    Multiplicity m = ggp_multiplicity(pi, cand, c, cx);
    if (m.value != MultValue::Zero) rows.push_back({std::move(cand), std::move(m)});
  }
  return rows;
}

}  // namespace ggp
