#include "ggp/oracle.hpp"

#include <array>
#include <cstdlib>
#include <set>

#include <json.hpp>

#include "ggp/error.hpp"

namespace ggp {

std::string VerificationReport::to_json() const
{
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["checked"] = checked;
  j["failures"] = nlohmann::ordered_json::array();
  for (const auto& f : failures)
    j["failures"].push_back({{"input", f.input}, {"expected", f.expected}, {"actual", f.actual}});
  j["elapsed_ms"] = elapsed.count();
  return j.dump();
}

namespace {

using Clock = std::chrono::steady_clock;

std::chrono::milliseconds since(Clock::time_point t0)
{
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0);
}

std::string fmt_opt(const std::optional<int>& v) { return v ? std::to_string(*v) : "none"; }

std::string fmt_syms(const std::vector<Symbol>& v)
{
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_symbol(v[i]);
  return s + "}";
}

}  // namespace

int default_scan_bound(const Symbol& lam)
{
  return lam.rank() + (std::abs(lam.defect()) + 1) / 2 + 1;
}

std::optional<int> brute_first_occurrence(const Symbol& lam, Sign sign, int max_rank)
{
  for (int r = 0; r <= max_rank; ++r)
    if (!theta_fiber(lam, sign, r).empty()) return r;
  return std::nullopt;
}

std::optional<int> brute_first_occurrence_reverse(const Symbol& lam_prime, int max_rank)
{
  for (int r = 0; r <= max_rank; ++r)
    if (!theta_fiber_reverse(lam_prime, r).empty()) return r;
  return std::nullopt;
}

VerificationReport verify_f1(int max_rank, int lambda1_shift)
{
  const auto t0 = Clock::now();
  VerificationReport rep;
  rep.suite = "f1";

  auto compare = [&](const std::string& input, const FirstOccurrence& closed,
                     std::optional<int> brute, const std::vector<Symbol>& fiber) {
    ++rep.checked;
    std::string expected = "index " + fmt_opt(brute) + " fiber " + fmt_syms(fiber);
    std::string actual = "index " + std::to_string(closed.index) + " lift " +
                         (closed.lift ? format_symbol(*closed.lift) : "none");
    bool ok = brute && *brute == closed.index && fiber.size() == 1 && closed.lift &&
              fiber.front() == *closed.lift;
    if (!ok) rep.failures.push_back({input, expected, actual});
  };

  for (int n = 0; n <= max_rank; ++n) {
    for (const auto& lam : enumerate_symbols(n, SymbolFamily::SpUnipotent)) {
      for (Sign s : {Sign::Plus, Sign::Minus}) {
        auto closed = detail::first_occurrence_unipotent_impl(lam, s, Direction::SpToO, lambda1_shift);
        auto brute = brute_first_occurrence(lam, s, default_scan_bound(lam));
        std::vector<Symbol> fiber;
        if (brute) fiber = theta_fiber(lam, s, *brute);
        compare(format_symbol(lam) + " " + sign_char(s) + " sp-to-o", closed, brute, fiber);
      }
    }
    for (auto fam : {SymbolFamily::OEvenPlus, SymbolFamily::OEvenMinus}) {
      for (const auto& lam : enumerate_symbols(n, fam)) {
        Sign s = fam == SymbolFamily::OEvenPlus ? Sign::Plus : Sign::Minus;
        auto closed = detail::first_occurrence_unipotent_impl(lam, s, Direction::OToSp, lambda1_shift);
        auto brute = brute_first_occurrence_reverse(lam, default_scan_bound(lam));
        std::vector<Symbol> fiber;
        if (brute) fiber = theta_fiber_reverse(lam, *brute);
        compare(format_symbol(lam) + " " + sign_char(s) + " o-to-sp", closed, brute, fiber);
      }
    }
  }
  rep.elapsed = since(t0);
  return rep;
}

long long bipartition_count(int n)
{
  if (n < 0) return 0;
  std::vector<long long> p(n + 1, 0);
  p[0] = 1;
  for (int part = 1; part <= n; ++part)
    for (int m = part; m <= n; ++m) p[m] += p[m - part];
  long long total = 0;
  for (int a = 0; a <= n; ++a) total += p[a] * p[n - a];
  return total;
}

VerificationReport verify_counts(int max_rank)
{
  const auto t0 = Clock::now();
  VerificationReport rep;
  rep.suite = "counts";

  struct Fam {
    SymbolFamily f;
    int residue;  // admissible defects mod 4
    bool even;    // residue 0 or 2 means even defects
  };
  const std::array<Fam, 4> fams{{{SymbolFamily::SpUnipotent, 1, false},
                                 {SymbolFamily::OEvenPlus, 0, true},
                                 {SymbolFamily::OEvenMinus, 2, true},
                                 {SymbolFamily::OOdd, 1, false}}};

  for (const auto& fam : fams) {
    for (int n = 0; n <= max_rank; ++n) {
      // offsets computed from scratch: a staircase row pair of defect β
      // has rows of lengths m+β, m with m = 0 or -β
      long long expected = 0;
      int cusp_expected = 0;
      for (int beta = -(2 * n + 2); beta <= 2 * n + 2; ++beta) {
        if (((beta % 4) + 4) % 4 != fam.residue) continue;
        int len_a = beta >= 0 ? beta : 0, len_b = beta >= 0 ? 0 : -beta;
        long long sum = 0;
        for (int i = 0; i < len_a; ++i) sum += i;
        for (int i = 0; i < len_b; ++i) sum += i;
        long long len = len_a + len_b;
        long long off = sum - (len == 0 ? 0 : (len - 1) * (len - 1) / 4);
        if (off > n) continue;
        expected += bipartition_count(n - static_cast<int>(off));
        if (off == n) ++cusp_expected;
      }
      auto syms = enumerate_symbols(n, fam.f);
      ++rep.checked;
      if (static_cast<long long>(syms.size()) != expected)
        rep.failures.push_back({std::string(to_string(fam.f)) + " rank " + std::to_string(n),
                                std::to_string(expected), std::to_string(syms.size())});

      int cusp = 0;
      std::set<int> defects;
      for (const auto& s : syms) {
        auto bp = upsilon(s);
        if (bp.upper.empty() && bp.lower.empty()) {
          ++cusp;
          defects.insert(s.defect());
        }
      }
      ++rep.checked;
      if (cusp != cusp_expected || static_cast<int>(defects.size()) != cusp)
        rep.failures.push_back({std::string(to_string(fam.f)) + " rank " + std::to_string(n) +
                                    " cuspidal",
                                std::to_string(cusp_expected) + " with distinct defects",
                                std::to_string(cusp) + " over " + std::to_string(defects.size()) +
                                    " defects"});
    }
  }
  rep.elapsed = since(t0);
  return rep;
}

namespace {

std::vector<RepLabel> trivial_rho_labels(const GroupTag& g, Sign eps_minus_one)
{
  return enumerate_labels(g, {RhoDescriptor::trivial()}, eps_minus_one);
}

// the same family is reached from each of its members; key it by the
// sorted member texts of both sides
std::string family_key(const RepLabel& a, const RepLabel& b, CaseKind k)
{
  auto members = [](const RepLabel& l, bool lam_too) {
    std::set<std::string> out;
    for (bool tl : {false, true})
      for (bool tp : {false, true}) {
        if (tl && !lam_too) continue;
        RepLabel m = l;
        if (tl) m.lam = l.lam.transpose();
        if (tp) m.lam_prime = l.lam_prime.transpose();
        out.insert(format_label(m));
      }
    std::string s;
    for (const auto& x : out) s += x + ";";
    return s;
  };
  if (k == CaseKind::FourierJacobi) return members(a, false) + "|" + members(b, false);
  return format_label(a) + "|" + members(b, true);
}

}  // namespace

VerificationReport verify_variant_uniqueness(int max_rank, const TowerContext& ctx,
                                             std::optional<CaseKind> kind)
{
  const auto t0 = Clock::now();
  VerificationReport rep;
  rep.suite = "variants";
  std::set<std::string> seen;

  auto run = [&](const RepLabel& a, const RepLabel& b, CaseKind k) {
    if (!seen.insert(family_key(a, b, k)).second) return;
    ++rep.checked;
    GGPCase c{k, std::nullopt, false};
    TowerContext cx = ctx;
    cx.left = {};
    cx.right = {};
    try {
      variant_family(a, b, c, cx);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::MultipleNonzero) throw;
      rep.failures.push_back({format_label(a) + " x " + format_label(b), "at most one nonzero variant",
                              e.what()});
    }
  };

  std::vector<GroupTag> sp, odd, even;
  for (int n = 0; n <= max_rank; ++n) {
    sp.push_back(GroupTag::sp(n));
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      odd.push_back(GroupTag::o_odd(n, s));
      even.push_back(GroupTag::o_even(n, s));
    }
  }
  const Sign em1 = ctx.eps_minus_one;
  if (!kind || *kind == CaseKind::FourierJacobi) {
    for (const auto& g1 : sp)
      for (const auto& g2 : sp) {
        if (g1.rank < g2.rank) continue;
        for (const auto& a : trivial_rho_labels(g1, em1))
          for (const auto& b : trivial_rho_labels(g2, em1)) run(a, b, CaseKind::FourierJacobi);
      }
  }
  if (!kind || *kind == CaseKind::Bessel) {
    for (const auto& g1 : odd)
      for (const auto& g2 : even)
        for (const auto& a : trivial_rho_labels(g1, em1))
          for (const auto& b : trivial_rho_labels(g2, em1)) run(a, b, CaseKind::Bessel);
  }
  rep.elapsed = since(t0);
  return rep;
}

RestrictionCheck restrict_trivial_o3(int q, Sign sign)
{
  if (q < 3 || q % 2 == 0) throw Error(ErrorKind::ParseError, "q must be an odd prime");
  auto mod = [q](long long x) { return static_cast<int>(((x % q) + q) % q); };
  auto is_square = [&](int x) {
    for (int y = 0; y < q; ++y)
      if (mod(static_cast<long long>(y) * y) == mod(x)) return true;
    return false;
  };
  int nonsq = 2;
  while (is_square(nonsq)) ++nonsq;
  // form diag(1, a, 1); v = e3; v^perp carries x^2 + a y^2, split iff -a is
  // a square
  const int a = sign == Sign::Plus ? mod(-1) : mod(-nonsq);
  const std::array<int, 3> form{1, a, 1};

  RestrictionCheck rc;
  std::array<int, 9> m{};
  const long long total = 1LL * q * q * q * q * q * q * q * q * q;
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    for (int i = 0; i < 9; ++i) {
      m[i] = static_cast<int>(c % q);
      c /= q;
    }
    // columns g e_j must satisfy B(g e_i, g e_j) = form_i δ_ij
    bool ok = true;
    for (int i = 0; i < 3 && ok; ++i)
      for (int j = i; j < 3 && ok; ++j) {
        long long b = 0;
        for (int r = 0; r < 3; ++r) b += 1LL * form[r] * m[r * 3 + i] * m[r * 3 + j];
        ok = mod(b) == (i == j ? form[i] : 0);
      }
    if (!ok) continue;
    ++rc.order_g;
    if (m[2] != 0 || m[5] != 0 || m[8] != 1) continue;
    ++rc.order_h;
    long long det = 1LL * m[0] * (m[4] * m[8] - m[5] * m[7]) - 1LL * m[1] * (m[3] * m[8] - m[5] * m[6]) +
                    1LL * m[2] * (m[3] * m[7] - m[4] * m[6]);
    rc.det += mod(det) == 1 ? 1 : -1;
    rc.trivial += 1;
  }
  rc.trivial /= rc.order_h;
  rc.det /= rc.order_h;
  return rc;
}

}  // namespace ggp
