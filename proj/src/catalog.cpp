#include "ggp/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "ggp/error.hpp"

namespace ggp {

namespace {

int mod4(int x) { return ((x % 4) + 4) % 4; }

std::string_view trim(std::string_view s)
{
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// offset of a trimmed view inside its parent
std::size_t offset_in(std::string_view parent, std::string_view part)
{
  return static_cast<std::size_t>(part.data() - parent.data());
}

int parse_int(std::string_view s, std::size_t base_offset)
{
  if (s.empty()) throw Error(ErrorKind::ParseError, "expected an integer", base_offset);
  long long v = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw Error(ErrorKind::ParseError, "expected a digit", base_offset + i);
    v = v * 10 + (s[i] - '0');
    if (v > 1'000'000) throw Error(ErrorKind::ParseError, "integer out of range", base_offset);
  }
  return static_cast<int>(v);
}

}  // namespace

Sign parse_sign(std::string_view text)
{
  text = trim(text);
  if (text == "+" || text == "plus") return Sign::Plus;
  if (text == "-" || text == "minus") return Sign::Minus;
  throw Error(ErrorKind::ParseError, "expected + or -", 0);
}

Sign eps_minus_one_from_q(long long q)
{
  if (q < 3 || q % 2 == 0)
    throw Error(ErrorKind::ParseError, "q must be an odd prime power");
  return q % 4 == 1 ? Sign::Plus : Sign::Minus;
}

std::string format_group(const GroupTag& g)
{
  std::string s;
  if (g.family == GroupFamily::Sp)
    s = "sp";
  else
    s = std::string("o") + sign_char(g.sign.value_or(Sign::Plus));
  return s + "(" + std::to_string(g.dimension()) + ")";
}

GroupTag parse_group(std::string_view text)
{
  std::string_view t = trim(text);
  std::size_t base = offset_in(text, t);
  GroupTag g;
  std::size_t pos = 0;
  if (t.substr(0, 2) == "sp") {
    g.family = GroupFamily::Sp;
    pos = 2;
  } else if (t.size() >= 2 && t[0] == 'o' && (t[1] == '+' || t[1] == '-')) {
    g.family = GroupFamily::OEven;
    g.sign = t[1] == '+' ? Sign::Plus : Sign::Minus;
    pos = 2;
  } else {
    throw Error(ErrorKind::ParseError, "expected sp(..), o+(..) or o-(..)", base);
  }
  if (pos >= t.size() || t[pos] != '(')
    throw Error(ErrorKind::ParseError, "expected '('", base + pos);
  std::size_t close = t.find(')', pos);
  if (close == std::string_view::npos)
    throw Error(ErrorKind::ParseError, "expected ')'", base + t.size());
  if (close + 1 != t.size())
    throw Error(ErrorKind::ParseError, "trailing characters", base + close + 1);
  int dim = parse_int(t.substr(pos + 1, close - pos - 1), base + pos + 1);
  if (g.family == GroupFamily::Sp) {
    if (dim % 2 != 0)
      throw Error(ErrorKind::ParseError, "symplectic dimension must be even", base + pos + 1);
    g.rank = dim / 2;
  } else {
    g.family = dim % 2 == 0 ? GroupFamily::OEven : GroupFamily::OOdd;
    g.rank = dim / 2;
  }
  return g;
}

static bool slot_admits(GroupFamily g, bool prime_slot, int defect)
{
  bool odd_slot = g == GroupFamily::OOdd || (g == GroupFamily::Sp && !prime_slot);
  return odd_slot ? mod4(defect) == 1 : defect % 2 == 0;
}

bool lam_prime_admits(GroupFamily g, int defect) { return slot_admits(g, true, defect); }

Symbol empty_slot_symbol(GroupFamily g, bool prime_slot)
{
  bool odd_slot = g == GroupFamily::OOdd || (g == GroupFamily::Sp && !prime_slot);
  return odd_slot ? Symbol::normalize({0}, {}) : Symbol{};
}

std::optional<Sign> oeven_group_sign(const RhoDescriptor& rho, const Symbol& lam,
                                     const Symbol& lam_prime, Sign eps_minus_one)
{
  if (lam.defect() % 2 != 0 || lam_prime.defect() % 2 != 0) return std::nullopt;
  Sign prod = even_symbol_sign(lam) * even_symbol_sign(lam_prime);
  // ε(Λ)ε(Λ') = ε for ρ trivial, ε_{-1}·ε otherwise
  return rho.is_trivial() ? prod : prod * eps_minus_one;
}

RepLabel make_label(const GroupTag& group, const RhoDescriptor& rho,
                    const Symbol& lam, const Symbol& lam_prime,
                    std::optional<Sign> eps_flag, Sign eps_minus_one)
{
  if (rho.glu_rank < 0)
    throw Error(ErrorKind::RankOverflow, "negative rho rank");
  if (rho.glu_rank == 0 && (rho.id != "trivial" || !rho.regular))
    throw Error(ErrorKind::NormalizationError,
                "a rank 0 rho must be the regular descriptor 'trivial'");
  if (rho.glu_rank > 0 && (rho.id.empty() || rho.id == "trivial"))
    throw Error(ErrorKind::NormalizationError,
                "a positive rank rho needs a non-trivial id");

  bool orth = group.family != GroupFamily::Sp;
  if (orth != group.sign.has_value())
    throw Error(ErrorKind::SignMismatch,
                orth ? "orthogonal group needs a sign" : "symplectic group takes no sign");
  if ((group.family == GroupFamily::OOdd) != eps_flag.has_value())
    throw Error(ErrorKind::SignMismatch,
                "the eps flag is present exactly for odd orthogonal groups");

  if (!slot_admits(group.family, false, lam.defect()))
    throw Error(ErrorKind::DefectClassMismatch,
                "defect " + std::to_string(lam.defect()) + " not admissible in the L slot of " +
                    format_group(group));
  if (!slot_admits(group.family, true, lam_prime.defect()))
    throw Error(ErrorKind::DefectClassMismatch,
                "defect " + std::to_string(lam_prime.defect()) +
                    " not admissible in the L' slot of " + format_group(group));

  int total = rho.glu_rank + lam.rank() + lam_prime.rank();
  if (group.rank < 0 || total != group.rank)
    throw Error(ErrorKind::RankOverflow,
                "component ranks sum to " + std::to_string(total) + " but the group rank is " +
                    std::to_string(group.rank));

  if (group.family == GroupFamily::OEven) {
    Sign expect = *oeven_group_sign(rho, lam, lam_prime, eps_minus_one);
    if (expect != *group.sign)
      throw Error(ErrorKind::SignMismatch,
                  "symbol signs give " + std::string(1, sign_char(expect)) +
                      " but the group is " + format_group(group));
  }
  return RepLabel{group, rho, lam, lam_prime, eps_flag};
}

int kh_component(int defect)
{
  if (mod4(defect) == 1) return (std::abs(defect) - 1) / 2;
  return defect / 2;
}

KH kh_of(const RepLabel& label)
{
  return {kh_component(label.lam.defect()), kh_component(label.lam_prime.defect())};
}

Symbol staircase_symbol(int defect) { return upsilon_inverse({}, defect); }

Symbol cuspidal_symbol(CuspKind kind, int k)
{
  if (k < 0) throw Error(ErrorKind::NormalizationError, "negative cuspidal index");
  switch (kind) {
    case CuspKind::SpCusp:
    case CuspKind::OOddCusp: return staircase_symbol(k % 2 == 0 ? 2 * k + 1 : -(2 * k + 1));
    case CuspKind::OEvenCusp: return staircase_symbol(2 * k);
  }
  return {};
}

bool is_unipotent_cuspidal(const Symbol& s, SymbolFamily f)
{
  return family_admits(f, s.defect()) && s.rank() == staircase_rank(s.defect());
}

RepLabel cuspidal_support_label(const RepLabel& label)
{
  RepLabel out = label;
  out.lam = staircase_symbol(label.lam.defect());
  out.lam_prime = staircase_symbol(label.lam_prime.defect());
  out.group.rank = label.rho.glu_rank + out.lam.rank() + out.lam_prime.rank();
  return out;
}

bool is_unipotent(const RepLabel& label)
{
  return label.rho.is_trivial() &&
         label.lam_prime == empty_slot_symbol(label.group.family, true);
}

std::string_view to_string(Twist t)
{
  switch (t) {
    case Twist::Sgn: return "sgn";
    case Twist::Chi: return "chi";
    case Twist::Conj: return "conj";
  }
  return "?";
}

RepLabel twist_label(const RepLabel& label, Twist t)
{
  RepLabel out = label;
  const GroupFamily g = label.group.family;
  switch (t) {
    case Twist::Sgn:
      if (g == GroupFamily::OEven) {
        out.lam = label.lam.transpose();
        out.lam_prime = label.lam_prime.transpose();
      } else if (g == GroupFamily::OOdd) {
        out.eps_flag = -*label.eps_flag;
      } else {
        throw Error(ErrorKind::InapplicableTwist, "sgn twist needs an orthogonal group");
      }
      break;
    case Twist::Chi:
      if (g == GroupFamily::Sp)
        throw Error(ErrorKind::InapplicableTwist, "chi twist needs an orthogonal group");
      std::swap(out.lam, out.lam_prime);
      break;
    case Twist::Conj:
      if (g == GroupFamily::OOdd)
        throw Error(ErrorKind::InapplicableTwist, "conjugation acts trivially on odd orthogonal labels");
      out.lam_prime = label.lam_prime.transpose();
      break;
  }
  return out;
}

std::vector<RhoDescriptor> default_rho_catalog(int max_rank)
{
  std::vector<RhoDescriptor> out{RhoDescriptor::trivial()};
  for (int r = 1; r <= max_rank; ++r) out.push_back({r, true, "gen"});
  return out;
}

std::string format_rho(const RhoDescriptor& rho)
{
  std::string s = rho.id + ":" + std::to_string(rho.glu_rank);
  if (rho.regular) s += ":reg";
  return s;
}

RhoDescriptor parse_rho(std::string_view text)
{
  std::string_view t = trim(text);
  std::size_t base = offset_in(text, t);
  std::size_t c1 = t.find(':');
  if (c1 == std::string_view::npos || c1 == 0)
    throw Error(ErrorKind::ParseError, "rho must look like id:rank[:reg]", base);
  RhoDescriptor rho;
  rho.id = std::string(t.substr(0, c1));
  std::size_t c2 = t.find(':', c1 + 1);
  std::string_view rank_part = t.substr(c1 + 1, c2 == std::string_view::npos ? t.npos : c2 - c1 - 1);
  rho.glu_rank = parse_int(rank_part, base + c1 + 1);
  rho.regular = false;
  if (c2 != std::string_view::npos) {
    std::string_view flag = t.substr(c2 + 1);
    if (flag == "reg")
      rho.regular = true;
    else if (flag != "nonreg")
      throw Error(ErrorKind::ParseError, "expected 'reg' or 'nonreg'", base + c2 + 1);
  }
  return rho;
}

std::string format_label(const RepLabel& label)
{
  std::string s = format_group(label.group) + ": rho=" + format_rho(label.rho) +
                  " ; L=" + format_symbol(label.lam) + " ; L'=" + format_symbol(label.lam_prime);
  if (label.eps_flag) s += std::string(" ; eps=") + sign_char(*label.eps_flag);
  return s;
}

RepLabel parse_label(std::string_view text, Sign eps_minus_one)
{
  std::size_t colon = text.find(':');
  if (colon == std::string_view::npos)
    throw Error(ErrorKind::ParseError, "expected ':' after the group", text.size());
  GroupTag group;
  try {
    group = parse_group(text.substr(0, colon));
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, "bad group", e.offset().value_or(0));
  }

  std::optional<RhoDescriptor> rho;
  std::optional<Symbol> lam, lam_prime;
  std::optional<Sign> eps;

  std::size_t pos = colon + 1;
  while (pos <= text.size()) {
    std::size_t semi = text.find(';', pos);
    std::size_t end = semi == std::string_view::npos ? text.size() : semi;
    std::string_view field = trim(text.substr(pos, end - pos));
    std::size_t foff = offset_in(text, field);
    std::size_t eq = field.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorKind::ParseError, "expected key=value", foff);
    std::string_view key = trim(field.substr(0, eq));
    std::string_view val = field.substr(eq + 1);
    std::size_t voff = foff + eq + 1;
    auto rethrow_at = [&](const Error& e) {
      if (e.kind() == ErrorKind::ParseError)
        throw Error(ErrorKind::ParseError, std::string(key) + ": bad value",
                    voff + e.offset().value_or(0));
      throw e;
    };
    try {
      if (key == "rho") {
        rho = parse_rho(val);
      } else if (key == "L") {
        lam = parse_symbol(val);
      } else if (key == "L'") {
        lam_prime = parse_symbol(val);
      } else if (key == "eps") {
        std::string_view v = trim(val);
        if (v != "+" && v != "-") throw Error(ErrorKind::ParseError, "expected + or -", offset_in(val, v));
        eps = v == "+" ? Sign::Plus : Sign::Minus;
      } else {
        throw Error(ErrorKind::ParseError, "unknown key '" + std::string(key) + "'", foff);
      }
    } catch (const Error& e) {
      if (key == "rho" || key == "L" || key == "L'" || key == "eps") rethrow_at(e);
      throw;
    }
    if (semi == std::string_view::npos) break;
    pos = semi + 1;
  }
  if (!rho) throw Error(ErrorKind::ParseError, "missing rho=", text.size());
  if (!lam) throw Error(ErrorKind::ParseError, "missing L=", text.size());
  if (!lam_prime) throw Error(ErrorKind::ParseError, "missing L'=", text.size());
  return make_label(group, *rho, *lam, *lam_prime, eps, eps_minus_one);
}

}  // namespace ggp
