#include <doctest.h>

#include <random>
#include <set>

#include "ggp/error.hpp"
#include "ggp/ggp.hpp"

using namespace ggp;

namespace {

Symbol S(const char* text) { return parse_symbol(text); }
const RhoDescriptor triv = RhoDescriptor::trivial();
const GGPCase FJ{CaseKind::FourierJacobi, std::nullopt, false};
const GGPCase BESSEL{CaseKind::Bessel, std::nullopt, false};

RepLabel sp(int n, const char* l, const char* lp, Sign em1 = Sign::Plus)
{
  return make_label(GroupTag::sp(n), triv, S(l), S(lp), std::nullopt, em1);
}

RepLabel oodd(int n, const char* l, const char* lp, Sign eps)
{
  return make_label(GroupTag::o_odd(n, Sign::Plus), triv, S(l), S(lp), eps, Sign::Plus);
}

RepLabel oeven(int n, Sign s, const char* l, const char* lp)
{
  return make_label(GroupTag::o_even(n, s), triv, S(l), S(lp), std::nullopt, Sign::Plus);
}

Orientation full(std::mt19937& rng)
{
  auto b = [&] { return rng() % 2 ? Sign::Plus : Sign::Minus; };
  return {b(), b(), b(), b()};
}

std::string mult_of(const RepLabel& a, const RepLabel& b, const GGPCase& c, const TowerContext& ctx)
{
  return format_multiplicity(ggp_multiplicity(a, b, c, ctx));
}

}  // namespace

TEST_CASE("necessary relevance bands")
{
  CHECK_FALSE(relevance_necessary({1, 0}, {0, 0}, FJ));
  CHECK(relevance_necessary({0, 0}, {0, 0}, FJ));
  CHECK(relevance_necessary({0, 1}, {1, 1}, BESSEL));
  CHECK_FALSE(relevance_necessary({0, 0}, {2, 0}, BESSEL));
}

TEST_CASE("strong relevance")
{
  TowerContext ctx;
  auto a = sp(0, "[0|]", "[|]");
  CHECK(is_strongly_relevant(a, a, FJ, ctx) == true);
  // k = 1 against |h'| = 3
  const Symbol h3 = cuspidal_symbol(CuspKind::OEvenCusp, 3);
  auto big = make_label(GroupTag::sp(h3.rank()), triv, S("[0|]"), h3, std::nullopt, Sign::Plus);
  auto k1 = make_label(GroupTag::sp(h3.rank() + 2), {h3.rank(), true, "gen"}, S("[|2,1,0]"), S("[|]"),
                       std::nullopt, Sign::Plus);
  CHECK(is_strongly_relevant(k1, big, FJ, ctx) == false);
  // k = 1 against |h'| = 1 depends on the towers
  auto h1 = make_label(GroupTag::sp(1), triv, S("[0|]"), S("[1,0|]"), std::nullopt, Sign::Plus);
  auto k1b = make_label(GroupTag::sp(2), triv, S("[|2,1,0]"), S("[|]"), std::nullopt, Sign::Plus);
  CHECK_FALSE(is_strongly_relevant(k1b, h1, FJ, ctx).has_value());
}

TEST_CASE("multiplicity examples")
{
  TowerContext ctx;
  auto st = sp(1, "[1,0|1]", "[|]");
  auto theta = sp(1, "[0|]", "[1|0]");
  CHECK(ggp_multiplicity(st, theta, FJ, ctx) == Multiplicity::one());
  auto cusp = sp(2, "[|2,1,0]", "[|]");
  auto t0 = sp(0, "[0|]", "[|]");
  CHECK(ggp_multiplicity(cusp, t0, FJ, ctx) == Multiplicity::zero());
  auto o1 = oodd(0, "[0|]", "[0|]", Sign::Plus);
  auto o0 = oeven(0, Sign::Plus, "[|]", "[|]");
  CHECK(ggp_multiplicity(o1, o0, BESSEL, ctx) == Multiplicity::one());
  CHECK(ggp_multiplicity(o0, o1, BESSEL, ctx) == Multiplicity::one());
  CHECK_THROWS_AS(ggp_multiplicity(o1, st, BESSEL, ctx), Error);
  CHECK_THROWS_AS(ggp_multiplicity(t0, st, FJ, ctx), Error);
  GGPCase sym = FJ;
  sym.symmetrize = true;
  CHECK_NOTHROW(ggp_multiplicity(t0, st, sym, ctx));
}

TEST_CASE("base factor")
{
  TowerContext ctx;
  RhoDescriptor g1{1, true, "gen"}, g1n{1, false, "gen"}, h1{1, true, "other"};
  auto a = make_label(GroupTag::sp(1), g1, S("[0|]"), S("[|]"), std::nullopt, Sign::Plus);
  auto an = make_label(GroupTag::sp(1), g1n, S("[0|]"), S("[|]"), std::nullopt, Sign::Plus);
  auto b = make_label(GroupTag::sp(1), h1, S("[0|]"), S("[|]"), std::nullopt, Sign::Plus);
  auto t = sp(0, "[0|]", "[|]");
  CHECK(ggp_multiplicity(a, t, FJ, ctx) == Multiplicity::one());
  CHECK(ggp_multiplicity(an, t, FJ, ctx) == Multiplicity::zero());
  CHECK(ggp_multiplicity(a, b, FJ, ctx) == Multiplicity::one());
  ctx.rho_disjoint = false;
  auto m = ggp_multiplicity(a, b, FJ, ctx);
  CHECK(m.value == MultValue::SymbolicBase);
  CHECK(format_multiplicity(m) == "m(gen:1:reg,other:1:reg)");
  CHECK(status_of(m) == "symbolic");
}

// Brute-force restriction tables for SL_2(F_q) = Sp_2(F_q), Fourier-Jacobi
// case with ε_0 = ε_{-1}.  Rows and columns: 1, St, the two (q+1)/2
// dimensional constituents and the two (q-1)/2 dimensional ones.
TEST_CASE("Fourier-Jacobi multiplicities of Sp_2 match character tables")
{
  struct Rep {
    const char* l;
    const char* lp;
    Orientation o;
  };
  Orientation tp;
  tp.tilde_prime = Sign::Plus;
  Orientation sp_plus, sp_minus;
  sp_plus.secondary = Sign::Plus;
  sp_minus.secondary = Sign::Minus;

  struct Case {
    int q;
    std::vector<Rep> reps;
    std::vector<std::vector<int>> table;
  };
  const std::vector<Case> cases{
      {5,
       {{"[1|]", "[|]", {}},
        {"[1,0|1]", "[|]", {}},
        {"[0|]", "[1|0]", tp},
        {"[0|]", "[0|1]", tp},
        {"[0|]", "[1,0|]", sp_plus},
        {"[0|]", "[|1,0]", sp_minus}},
       {{0, 0, 1, 0, 1, 0},
        {0, 1, 1, 1, 0, 0},
        {1, 1, 1, 0, 0, 0},
        {0, 1, 0, 0, 1, 0},
        {1, 0, 0, 1, 0, 0},
        {0, 0, 0, 0, 0, 1}}},
      {7,
       {{"[1|]", "[|]", {}},
        {"[1,0|1]", "[|]", {}},
        {"[0|]", "[0|1]", tp},
        {"[0|]", "[1|0]", tp},
        {"[0|]", "[1,0|]", sp_minus},
        {"[0|]", "[|1,0]", sp_plus}},
       {{0, 0, 1, 0, 1, 0},
        {0, 1, 1, 1, 0, 0},
        {0, 1, 0, 0, 1, 0},
        {1, 1, 1, 0, 0, 0},
        {0, 0, 0, 0, 0, 1},
        {1, 0, 0, 1, 0, 0}}},
  };
  for (const auto& c : cases) {
    const Sign em1 = eps_minus_one_from_q(c.q);
    for (std::size_t i = 0; i < c.reps.size(); ++i)
      for (std::size_t j = 0; j < c.reps.size(); ++j) {
        TowerContext ctx;
        ctx.eps_minus_one = em1;
        ctx.left = c.reps[i].o;
        ctx.right = c.reps[j].o;
        auto a = sp(1, c.reps[i].l, c.reps[i].lp, em1);
        auto b = sp(1, c.reps[j].l, c.reps[j].lp, em1);
        CAPTURE(c.q);
        CAPTURE(i);
        CAPTURE(j);
        CHECK(mult_of(a, b, FJ, ctx) == std::to_string(c.table[i][j]));
      }
  }
}

// Brute-force restriction of the eight quadratic-unipotent characters of
// O_3(F_q) to O^±_2(F_q), q = 5 and 7 (identical patterns).  Columns:
// [1|0] / [|1,0] (trivial), [0|1] / [1,0|] (det), then the two θ-type
// labels.  -1 marks cells that depend on an orientation bit of the O_3 side.
TEST_CASE("Bessel multiplicities of O_3 against O_2 match restriction tables")
{
  struct Row {
    const char* l;
    const char* lp;
    Sign eps;
    std::vector<int> plus, minus;
  };
  const std::vector<Row> rows{
      {"[1|]", "[0|]", Sign::Plus, {1, 0, 0, 0}, {1, 0, 0, 0}},
      {"[1|]", "[0|]", Sign::Minus, {0, 1, 0, 0}, {0, 1, 0, 0}},
      {"[1,0|1]", "[0|]", Sign::Plus, {1, 1, -1, -1}, {0, 0, -1, -1}},
      {"[1,0|1]", "[0|]", Sign::Minus, {1, 1, -1, -1}, {0, 0, -1, -1}},
      {"[0|]", "[1|]", Sign::Plus, {0, 0, 1, 0}, {0, 0, 1, 0}},
      {"[0|]", "[1|]", Sign::Minus, {0, 0, 0, 1}, {0, 0, 0, 1}},
      {"[0|]", "[1,0|1]", Sign::Plus, {-1, -1, 1, 1}, {-1, -1, 0, 0}},
      {"[0|]", "[1,0|1]", Sign::Minus, {-1, -1, 1, 1}, {-1, -1, 0, 0}},
  };
  const std::vector<RepLabel> plus{oeven(1, Sign::Plus, "[1|0]", "[|]"), oeven(1, Sign::Plus, "[0|1]", "[|]"),
                                   oeven(1, Sign::Plus, "[|]", "[1|0]"), oeven(1, Sign::Plus, "[|]", "[0|1]")};
  const std::vector<RepLabel> minus{
      oeven(1, Sign::Minus, "[|1,0]", "[|]"), oeven(1, Sign::Minus, "[1,0|]", "[|]"),
      oeven(1, Sign::Minus, "[|]", "[|1,0]"), oeven(1, Sign::Minus, "[|]", "[1,0|]")};
  for (int q : {5, 7}) {
    TowerContext ctx;
    ctx.eps_minus_one = eps_minus_one_from_q(q);
    for (const auto& r : rows) {
      auto o = oodd(1, r.l, r.lp, r.eps);
      for (int j = 0; j < 4; ++j) {
        CAPTURE(format_label(o));
        CAPTURE(j);
        auto expect = [](int v) { return v < 0 ? std::string("undetermined(orientation)") : std::to_string(v); };
        CHECK(mult_of(o, plus[j], BESSEL, ctx) == expect(r.plus[j]));
        CHECK(mult_of(o, minus[j], BESSEL, ctx) == expect(r.minus[j]));
      }
    }
  }
  // The observed rows for St+ are (1,1,1,0) against O^+_2 and (0,0,0,1)
  // against O^-_2; each is reached by one choice of the open bit.
  auto st = oodd(1, "[1,0|1]", "[0|]", Sign::Plus);
  auto row = [&](const std::vector<RepLabel>& cols, Sign bit) {
    TowerContext ctx;
    ctx.left.secondary = bit;
    std::vector<std::string> out;
    for (const auto& c : cols) out.push_back(mult_of(st, c, BESSEL, ctx));
    return out;
  };
  CHECK(row(plus, Sign::Plus) == std::vector<std::string>{"1", "1", "1", "0"});
  CHECK(row(minus, Sign::Minus) == std::vector<std::string>{"0", "0", "0", "1"});
}

TEST_CASE("variant families")
{
  TowerContext ctx;
  // Steinberg against the two (q+1)/2 dimensional θ-type labels: both
  // restrictions are nonzero, so the family has two nonzero members
  Orientation tp;
  tp.tilde_prime = Sign::Plus;
  ctx.right = tp;
  auto st = sp(1, "[1,0|1]", "[|]");
  auto w = sp(1, "[0|]", "[1|0]");
  auto w_conj = sp(1, "[0|]", "[0|1]");
  CHECK(ggp_multiplicity(st, w, FJ, ctx) == Multiplicity::one());
  CHECK(ggp_multiplicity(st, w_conj, FJ, ctx) == Multiplicity::one());
  CHECK_THROWS_AS(variant_family(st, w, FJ, ctx), Error);
  try {
    select_nonzero_variant(st, w, FJ, ctx);
    FAIL("expected MultipleNonzero");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MultipleNonzero);
  }

  // the cuspidal of Sp_4 against the trivial of Sp_0: all variants vanish
  TowerContext plain;
  auto none = select_nonzero_variant(sp(2, "[|2,1,0]", "[|]"), sp(0, "[0|]", "[|]"), FJ, plain);
  CHECK(none.nonzero.empty());

  // symmetric Λ' on both sides: the family is a single pair
  auto one = variant_family(sp(1, "[1|]", "[|]"), sp(1, "[1,0|1]", "[|]"), FJ, plain);
  CHECK(one.variants.size() == 1);
}

TEST_CASE("branch decompositions")
{
  TowerContext ctx;
  auto o1 = oodd(0, "[0|]", "[0|]", Sign::Plus);
  auto rows = branch_decomposition(o1, GroupTag::o_even(0, Sign::Plus), ctx, default_rho_catalog(0));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].label == oeven(0, Sign::Plus, "[|]", "[|]"));
  CHECK(rows[0].mult == Multiplicity::one());

  auto o3 = oodd(1, "[1|]", "[0|]", Sign::Plus);
  for (Sign s : {Sign::Plus, Sign::Minus}) {
    auto r = branch_decomposition(o3, GroupTag::o_even(1, s), ctx, default_rho_catalog(1));
    std::set<std::string> seen;
    int trivial = 0;
    const RepLabel t = s == Sign::Plus ? oeven(1, s, "[1|0]", "[|]") : oeven(1, s, "[|1,0]", "[|]");
    for (const auto& row : r) {
      CHECK(seen.insert(format_label(row.label)).second);
      CHECK(row.mult.value != MultValue::SymbolicBase);
      if (row.label == t) {
        ++trivial;
        CHECK(row.mult == Multiplicity::one());
      }
    }
    CHECK(trivial == 1);
  }

  // Sp_2 trivial: every listed member passes the G gate against Λ = [1|]
  auto p = sp(1, "[1|]", "[|]");
  auto fj = branch_decomposition(p, GroupTag::sp(1), ctx, default_rho_catalog(1));
  CHECK_FALSE(fj.empty());
  for (const auto& row : fj) {
    CHECK(std::is_sorted(fj.begin(), fj.end(),
                         [](const BranchRow& a, const BranchRow& b) { return label_less(a.label, b.label); }));
    if (row.mult.value == MultValue::One && row.label.rho.is_trivial())
      CHECK((in_G_any(p.lam, row.label.lam_prime) || in_G_any(p.lam, row.label.lam_prime.transpose())));
  }

  CHECK_THROWS_AS(branch_decomposition(sp(1, "[0|]", "[1|0]"), GroupTag::sp(1), ctx, {triv}), Error);
  CHECK_THROWS_AS(branch_decomposition(o3, GroupTag::o_even(2, Sign::Plus), ctx, {triv}), Error);
  CHECK_THROWS_AS(branch_decomposition(o3, GroupTag::sp(1), ctx, {triv}), Error);
}

namespace {

std::vector<RepLabel> labels_up_to(GroupFamily fam, int max_rank, Sign em1)
{
  std::vector<RepLabel> out;
  for (int n = 0; n <= max_rank; ++n)
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      GroupTag g = fam == GroupFamily::Sp      ? GroupTag::sp(n)
                   : fam == GroupFamily::OOdd ? GroupTag::o_odd(n, s)
                                              : GroupTag::o_even(n, s);
      for (auto& l : enumerate_labels(g, default_rho_catalog(2), em1)) out.push_back(l);
      if (fam == GroupFamily::Sp) break;
    }
  return out;
}

}  // namespace

TEST_CASE("symmetrization swaps with ε0' = ε_{-1}ε0")
{
  std::mt19937 rng(7);
  for (Sign em1 : {Sign::Plus, Sign::Minus}) {
    auto sp_labels = labels_up_to(GroupFamily::Sp, 3, em1);
    for (int iter = 0; iter < 2000; ++iter) {
      const auto& a = sp_labels[rng() % sp_labels.size()];
      const auto& b = sp_labels[rng() % sp_labels.size()];
      if (a.group.rank >= b.group.rank) continue;
      for (Sign e0 : {Sign::Plus, Sign::Minus}) {
        TowerContext ctx;
        ctx.eps_minus_one = em1;
        ctx.left = full(rng);
        ctx.right = full(rng);
        GGPCase c{CaseKind::FourierJacobi, e0, true};
        TowerContext swapped = ctx;
        std::swap(swapped.left, swapped.right);
        GGPCase cs{CaseKind::FourierJacobi, em1 * e0, false};
        CHECK(ggp_multiplicity(a, b, c, ctx) == ggp_multiplicity(b, a, cs, swapped));
      }
    }
  }
}

TEST_CASE("Bessel multiplicity is invariant under sgn on both sides")
{
  std::mt19937 rng(11);
  auto odd = labels_up_to(GroupFamily::OOdd, 2, Sign::Plus);
  auto even = labels_up_to(GroupFamily::OEven, 2, Sign::Plus);
  for (int iter = 0; iter < 4000; ++iter) {
    const auto& a = odd[rng() % odd.size()];
    const auto& b = even[rng() % even.size()];
    TowerContext ctx;
    ctx.left = full(rng);
    ctx.right = full(rng);
    TowerContext tw = ctx;
    tw.left = twist_orientation(ctx.left, GroupFamily::OOdd, Twist::Sgn);
    tw.right = twist_orientation(ctx.right, GroupFamily::OEven, Twist::Sgn);
    CAPTURE(format_label(a));
    CAPTURE(format_label(b));
    CHECK(ggp_multiplicity(a, b, BESSEL, ctx) ==
          ggp_multiplicity(twist_label(a, Twist::Sgn), twist_label(b, Twist::Sgn), BESSEL, tw));
  }
}

TEST_CASE("gate soundness on random pairs")
{
  std::mt19937 rng(3);
  for (Sign em1 : {Sign::Plus, Sign::Minus}) {
    auto sp_labels = labels_up_to(GroupFamily::Sp, 4, em1);
    auto odd = labels_up_to(GroupFamily::OOdd, 4, em1);
    auto even = labels_up_to(GroupFamily::OEven, 4, em1);
    for (int iter = 0; iter < 5000; ++iter) {
      const bool fj = iter % 2 == 0;
      RepLabel a = fj ? sp_labels[rng() % sp_labels.size()] : odd[rng() % odd.size()];
      RepLabel b = fj ? sp_labels[rng() % sp_labels.size()] : even[rng() % even.size()];
      GGPCase c = fj ? FJ : BESSEL;
      c.symmetrize = true;
      TowerContext ctx;
      ctx.eps_minus_one = em1;
      auto m = ggp_multiplicity(a, b, c, ctx);
      KH ka = kh_of(a), kb = kh_of(b);
      if (fj && a.group.rank < b.group.rank) std::swap(ka, kb);
      if (!relevance_necessary(ka, kb, c)) CHECK(m == Multiplicity::zero());
      if (a.rho.is_trivial() && b.rho.is_trivial()) CHECK(m.value != MultValue::SymbolicBase);
      ctx.left = full(rng);
      ctx.right = full(rng);
      CHECK(ggp_multiplicity(a, b, c, ctx).value != MultValue::Undetermined);
    }
  }
}
