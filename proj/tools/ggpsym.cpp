// ggpsym: command line front end for the ggp library.
//
// Exit status: 0 success, 1 domain or usage error, 2 verification failure.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cache.hpp"
#include "ggp/error.hpp"
#include "ggp/ggp.hpp"
#include "ggp/oracle.hpp"
#include "ggp/theta.hpp"

using namespace ggp;
using json = nlohmann::ordered_json;

namespace {

// A library error attributed to the flag that caused it.
struct FlagError {
  std::string flag;
  std::string message;
};

FlagError blame(const std::string& flag, const Error& e)
{
  return FlagError{flag, e.what()};
}

template <class F>
auto with_flag(const std::string& flag, F&& f) -> decltype(f())
{
  try {
    return f();
  } catch (const Error& e) {
    throw blame(flag, e);
  }
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

std::string cell_text(const json& v)
{
  return v.is_string() ? v.get<std::string>() : v.dump();
}

std::string csv_field(const std::string& s)
{
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void emit(const Table& t, const std::string& format, std::ostream& os)
{
  if (format == "json") {
    for (const auto& r : t.rows) {
      json o;
      for (std::size_t i = 0; i < t.columns.size(); ++i) o[t.columns[i]] = r[i];
      os << o.dump() << '\n';
    }
    return;
  }
  if (format == "csv") {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& r : t.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_field(cell_text(r[i]));
      os << '\n';
    }
    return;
  }
  std::vector<std::size_t> width(t.columns.size());
  for (std::size_t i = 0; i < t.columns.size(); ++i) width[i] = t.columns[i].size();
  for (const auto& r : t.rows)
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], cell_text(r[i]).size());
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      s += cells[i];
      if (i + 1 < cells.size()) s += std::string(width[i] - cells[i].size() + 2, ' ');
    }
    os << s << '\n';
  };
  line(t.columns);
  for (const auto& r : t.rows) {
    std::vector<std::string> cells;
    for (const auto& c : r) cells.push_back(cell_text(c));
    line(cells);
  }
}

bool is_odd_prime_power(long long q)
{
  if (q < 3 || q % 2 == 0) return false;
  long long p = 3;
  while (p * p <= q && q % p != 0) p += 2;
  if (p * p > q) return true;  // q itself is prime
  while (q % p == 0) q /= p;
  return q == 1;
}

Orientation parse_orientation(const std::string& text)
{
  auto bit = [](char c) -> std::optional<Sign> {
    if (c == '+') return Sign::Plus;
    if (c == '-') return Sign::Minus;
    if (c == '?') return std::nullopt;
    throw Error(ErrorKind::ParseError, std::string("orientation bit must be +, - or ?, got '") + c + "'");
  };
  Orientation o;
  if (text.size() == 1) {
    o.primary = bit(text[0]);
    return o;
  }
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) parts.push_back(p);
  if (parts.empty() || parts.size() > 4)
    throw Error(ErrorKind::ParseError, "orientation is p[,s[,t[,u]]]");
  std::optional<Sign>* slots[] = {&o.primary, &o.secondary, &o.tilde, &o.tilde_prime};
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].size() != 1) throw Error(ErrorKind::ParseError, "orientation bit must be one character");
    *slots[i] = bit(parts[i][0]);
  }
  return o;
}

struct Options {
  std::string format = "pretty";
  std::optional<std::string> eps_minus_one;
  std::optional<long long> q;
};

Sign resolve_eps(const Options& o, bool required)
{
  if (o.eps_minus_one && o.q)
    throw FlagError{"--eps-minus-one", "give exactly one of --eps-minus-one and --q"};
  if (o.q) {
    if (!is_odd_prime_power(*o.q)) throw FlagError{"--q", "q must be an odd prime power"};
    return eps_minus_one_from_q(*o.q);
  }
  if (o.eps_minus_one) return with_flag("--eps-minus-one", [&] { return parse_sign(*o.eps_minus_one); });
  if (required) throw FlagError{"--eps-minus-one", "this verb needs --eps-minus-one or --q"};
  return Sign::Plus;
}

void add_eps_flags(CLI::App* cmd, Options& o)
{
  cmd->add_option("--eps-minus-one", o.eps_minus_one, "square class of -1 (+ or -)");
  cmd->add_option("--q", o.q, "field size; derives --eps-minus-one");
}

Table multiplicity_table()
{
  return Table{{"label", "multiplicity", "status"}, {}};
}

void push_mult(Table& t, const std::string& label, const Multiplicity& m)
{
  t.rows.push_back({label, format_multiplicity(m), std::string(status_of(m))});
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"symbol combinatorics, theta lifts and branching multiplicities"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--format", opt.format, "pretty, json or csv")
      ->check(CLI::IsMember({"pretty", "json", "csv"}));

  std::function<Table()> action;
  bool verify_failed = false;

  // symbols-enumerate
  std::string fam_text;
  int rank = 0;
  bool no_cache = false;
  auto* se = app.add_subcommand("symbols-enumerate", "list the symbols of one family and rank");
  se->add_option("--family", fam_text, "sp, o+even, o-even or oodd")->required();
  se->add_option("--rank", rank, "rank n")->required()->check(CLI::NonNegativeNumber);
  se->add_flag("--no-cache", no_cache, "skip the on-disk cache");
  se->callback([&] {
    action = [&] {
      auto fam = with_flag("--family", [&] { return ggpsym::parse_family_token(fam_text); });
      std::vector<Symbol> syms;
      auto dir = ggpsym::default_cache_dir();
      if (no_cache || !dir)
        syms = with_flag("--rank", [&] { return enumerate_symbols(rank, fam); });
      else
        syms = with_flag("--rank", [&] { return ggpsym::SymbolCache(*dir).enumerate(fam, rank).symbols; });
      Table t{{"symbol", "rank", "defect", "bipartition"}, {}};
      for (const auto& s : syms) t.rows.push_back({format_symbol(s), s.rank(), s.defect(), format_bipartition(upsilon(s))});
      return t;
    };
  });

  // theta-fiber
  std::string sym_text, sign_text;
  int target_rank = 0;
  bool reverse = false;
  auto* tf = app.add_subcommand("theta-fiber", "symbols related to one symbol by the theta relation");
  tf->add_option("--symbol", sym_text, "source symbol")->required();
  tf->add_option("--sign", sign_text, "sign of the even orthogonal tower");
  tf->add_option("--rank", target_rank, "target rank")->required()->check(CLI::NonNegativeNumber);
  tf->add_flag("--reverse", reverse, "source is even orthogonal, target symplectic");
  tf->callback([&] {
    action = [&] {
      Symbol s = with_flag("--symbol", [&] { return parse_symbol(sym_text); });
      std::vector<Symbol> fiber;
      if (reverse) {
        fiber = with_flag("--symbol", [&] { return theta_fiber_reverse(s, target_rank); });
      } else {
        if (sign_text.empty()) throw FlagError{"--sign", "theta-fiber needs --sign unless --reverse"};
        Sign sg = with_flag("--sign", [&] { return parse_sign(sign_text); });
        fiber = with_flag("--symbol", [&] { return theta_fiber(s, sg, target_rank); });
      }
      Table t{{"symbol", "rank", "defect"}, {}};
      for (const auto& f : fiber) t.rows.push_back({format_symbol(f), f.rank(), f.defect()});
      return t;
    };
  });

  // theta-first
  std::string dir_text, label_text, tower_text, orient_left_text, orient_right_text;
  auto* tfo = app.add_subcommand("theta-first", "first occurrence index and lift");
  tfo->add_option("--symbol", sym_text, "unipotent symbol");
  tfo->add_option("--sign", sign_text, "sign of the even orthogonal tower");
  tfo->add_option("--direction", dir_text, "sp-to-o or o-to-sp")
      ->check(CLI::IsMember({"sp-to-o", "o-to-sp"}));
  tfo->add_option("--label", label_text, "label with cuspidal symbols (instead of --symbol)");
  tfo->add_option("--tower", tower_text, "sp, o+even, o-even, o+odd or o-odd (with --label)");
  tfo->add_option("--orient-left", orient_left_text, "orientation of the label: p[,s[,t[,u]]]");
  add_eps_flags(tfo, opt);
  tfo->callback([&] {
    action = [&] {
      Table t{{"index", "lift", "resolved"}, {}};
      if (!label_text.empty()) {
        if (!sym_text.empty()) throw FlagError{"--symbol", "give --symbol or --label, not both"};
        Sign em1 = resolve_eps(opt, true);
        TowerContext ctx;
        ctx.eps_minus_one = em1;
        bool found = false;
        for (auto tw : {Tower::Sp, Tower::OEvenPlus, Tower::OEvenMinus, Tower::OOddPlus, Tower::OOddMinus})
          if (tower_text == to_string(tw)) {
            ctx.tower = tw;
            found = true;
          }
        if (!found) throw FlagError{"--tower", "unknown tower '" + tower_text + "'"};
        if (!orient_left_text.empty())
          ctx.left = with_flag("--orient-left", [&] { return parse_orientation(orient_left_text); });
        RepLabel l = with_flag("--label", [&] { return parse_label(label_text, em1); });
        FirstOccurrence fo = with_flag("--tower", [&] { return first_occurrence_supported(l, ctx); });
        std::string lift = fo.lift_kh ? "(" + std::to_string(fo.lift_kh->k) + "," +
                                            std::to_string(fo.lift_kh->h) + ")"
                                      : "none";
        t.columns[1] = "lift_kh";
        t.rows.push_back({fo.index, lift, fo.resolved});
        return t;
      }
      if (sym_text.empty()) throw FlagError{"--symbol", "theta-first needs --symbol or --label"};
      if (dir_text.empty()) throw FlagError{"--direction", "theta-first needs --direction"};
      if (sign_text.empty()) throw FlagError{"--sign", "theta-first needs --sign"};
      Symbol s = with_flag("--symbol", [&] { return parse_symbol(sym_text); });
      Sign sg = with_flag("--sign", [&] { return parse_sign(sign_text); });
      Direction d = dir_text == "sp-to-o" ? Direction::SpToO : Direction::OToSp;
      FirstOccurrence fo = with_flag("--symbol", [&] { return first_occurrence_unipotent(s, sg, d); });
      t.rows.push_back({fo.index, fo.lift ? format_symbol(*fo.lift) : "none", fo.resolved});
      return t;
    };
  });

  // theta-cuspidal
  int cusp_k = 0;
  std::string variant_text = "down";
  auto* tc = app.add_subcommand("theta-cuspidal", "theta lift of the cuspidal unipotent of Sp_{2k(k+1)}");
  tc->add_option("--k", cusp_k, "k")->required()->check(CLI::NonNegativeNumber);
  tc->add_option("--variant", variant_text, "down or up")->check(CLI::IsMember({"down", "up"}));
  tc->callback([&] {
    action = [&] {
      auto ct = with_flag("--k", [&] {
        return cuspidal_theta(cusp_k, variant_text == "up" ? ThetaVariant::Up : ThetaVariant::Down);
      });
      Table t{{"sp", "o", "eps"}, {}};
      t.rows.push_back({format_symbol(ct.sp), format_symbol(ct.o), std::string(1, sign_char(ct.eps))});
      return t;
    };
  });

  // ggp-mult
  std::string left_text, right_text, case_text, eps_zero_text;
  bool symmetrize = false;
  auto* gm = app.add_subcommand("ggp-mult", "branching multiplicity of one pair");
  gm->add_option("--left", left_text, "left label")->required();
  gm->add_option("--right", right_text, "right label")->required();
  gm->add_option("--case", case_text, "bessel or fj")->required()->check(CLI::IsMember({"bessel", "fj"}));
  gm->add_option("--eps-zero", eps_zero_text, "FJ character sign; defaults to eps_{-1}");
  gm->add_flag("--symmetrize", symmetrize, "FJ: accept rank(left) < rank(right)");
  gm->add_option("--orient-left", orient_left_text, "p[,s[,t[,u]]] with ? for unknown");
  gm->add_option("--orient-right", orient_right_text, "p[,s[,t[,u]]] with ? for unknown");
  add_eps_flags(gm, opt);
  gm->callback([&] {
    action = [&] {
      Sign em1 = resolve_eps(opt, true);
      RepLabel l = with_flag("--left", [&] { return parse_label(left_text, em1); });
      RepLabel r = with_flag("--right", [&] { return parse_label(right_text, em1); });
      GGPCase c;
      c.kind = case_text == "bessel" ? CaseKind::Bessel : CaseKind::FourierJacobi;
      c.symmetrize = symmetrize;
      if (!eps_zero_text.empty())
        c.eps_zero = with_flag("--eps-zero", [&] { return parse_sign(eps_zero_text); });
      TowerContext ctx;
      ctx.eps_minus_one = em1;
      if (!orient_left_text.empty())
        ctx.left = with_flag("--orient-left", [&] { return parse_orientation(orient_left_text); });
      if (!orient_right_text.empty())
        ctx.right = with_flag("--orient-right", [&] { return parse_orientation(orient_right_text); });
      Multiplicity m;
      try {
        m = ggp_multiplicity(l, r, c, ctx);
      } catch (const Error& e) {
        throw blame(e.kind() == ErrorKind::RankOrder ? "--symmetrize" : "--case", e);
      }
      Table t = multiplicity_table();
      push_mult(t, format_label(l) + " x " + format_label(r), m);
      return t;
    };
  });

  // ggp-branch
  std::string pi_text, target_text;
  int rho_max_rank = 0;
  auto* gb = app.add_subcommand("ggp-branch", "decompose a unipotent label over a smaller group");
  gb->add_option("--pi", pi_text, "unipotent label")->required();
  gb->add_option("--target", target_text, "target group, e.g. o+(2) or sp(2)")->required();
  gb->add_option("--rho-max-rank", rho_max_rank, "largest rank in the default rho catalog")
      ->check(CLI::NonNegativeNumber);
  gb->add_option("--orient-left", orient_left_text, "orientation of pi: p[,s[,t[,u]]]");
  add_eps_flags(gb, opt);
  gb->callback([&] {
    action = [&] {
      Sign em1 = resolve_eps(opt, true);
      RepLabel pi = with_flag("--pi", [&] { return parse_label(pi_text, em1); });
      GroupTag target = with_flag("--target", [&] { return parse_group(target_text); });
      TowerContext ctx;
      ctx.eps_minus_one = em1;
      if (!orient_left_text.empty())
        ctx.left = with_flag("--orient-left", [&] { return parse_orientation(orient_left_text); });
      std::vector<BranchRow> rows;
      try {
        rows = branch_decomposition(pi, target, ctx, default_rho_catalog(rho_max_rank));
      } catch (const Error& e) {
        throw blame(e.kind() == ErrorKind::NotUnipotent ? "--pi" : "--target", e);
      }
      Table t = multiplicity_table();
      for (const auto& row : rows) push_mult(t, format_label(row.label), row.mult);
      return t;
    };
  });

  // verify
  std::string suite = "all";
  int max_rank = 4, shift = 0;
  std::string vcase = "both";
  auto* vf = app.add_subcommand("verify", "run the brute-force verifiers");
  vf->add_option("--suite", suite, "f1, counts, variants or all")
      ->check(CLI::IsMember({"f1", "counts", "variants", "all"}));
  vf->add_option("--max-rank", max_rank, "largest rank checked")->check(CLI::NonNegativeNumber);
  vf->add_option("--shift", shift, "offset injected into the closed form (harness self-test)");
  vf->add_option("--case", vcase, "variants suite: bessel, fj or both")
      ->check(CLI::IsMember({"bessel", "fj", "both"}));
  add_eps_flags(vf, opt);
  vf->callback([&] {
    action = [&] {
      std::vector<VerificationReport> reports;
      if (suite == "f1" || suite == "all") reports.push_back(verify_f1(max_rank, shift));
      if (suite == "counts" || suite == "all") reports.push_back(verify_counts(max_rank));
      if (suite == "variants" || suite == "all") {
        TowerContext ctx;
        ctx.eps_minus_one = resolve_eps(opt, true);
        std::optional<CaseKind> k;
        if (vcase == "bessel") k = CaseKind::Bessel;
        if (vcase == "fj") k = CaseKind::FourierJacobi;
        reports.push_back(verify_variant_uniqueness(max_rank, ctx, k));
      }
      Table t{{"suite", "checked", "failures", "first_failure"}, {}};
      for (const auto& r : reports) {
        if (!r.passing()) verify_failed = true;
        if (opt.format == "json") {
          // the full report shape, timing included
          t.columns = {"report"};
          t.rows.push_back({json::parse(r.to_json())});
          continue;
        }
        std::string first = r.failures.empty()
                                ? ""
                                : r.failures.front().input + ": expected " + r.failures.front().expected +
                                      ", got " + r.failures.front().actual;
        t.rows.push_back({r.suite, r.checked, static_cast<long long>(r.failures.size()), first});
      }
      return t;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    Table t = action();
    if (opt.format == "json" && t.columns == std::vector<std::string>{"report"}) {
      for (const auto& r : t.rows) std::cout << r[0].dump() << '\n';
    } else {
      emit(t, opt.format, std::cout);
    }
  } catch (const FlagError& e) {
    std::cerr << "error: " << e.flag << ": " << e.message << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return verify_failed ? 2 : 0;
}
