#pragma once

// Branching multiplicities: relevance, the G-set gates and the base factor
// m(π_ρ, π_ρ'), plus variant selection and branching decompositions.

#include <optional>
#include <string>
#include <vector>

#include "ggp/catalog.hpp"
#include "ggp/theta.hpp"

namespace ggp {

enum class CaseKind { Bessel, FourierJacobi };
std::string_view to_string(CaseKind k);

struct GGPCase {
  CaseKind kind = CaseKind::FourierJacobi;
  std::optional<Sign> eps_zero;  // FJ only; defaults to ε_{-1}
  // FJ with rank(left) < rank(right): evaluate the swapped pair instead of
  // throwing RankOrder
  bool symmetrize = false;
};

enum class MultValue { Zero, One, SymbolicBase, Undetermined };

struct Multiplicity {
  MultValue value = MultValue::Zero;
  std::string rho_left;   // SymbolicBase only
  std::string rho_right;  // SymbolicBase only
  std::string reason;     // Undetermined only, machine readable

  static Multiplicity zero() { return {}; }
  static Multiplicity one() { return {MultValue::One, {}, {}, {}}; }
  static Multiplicity symbolic(std::string a, std::string b)
  {
    return {MultValue::SymbolicBase, std::move(a), std::move(b), {}};
  }
  static Multiplicity undetermined(std::string why)
  {
    return {MultValue::Undetermined, {}, {}, std::move(why)};
  }
  bool nonzero() const { return value == MultValue::One || value == MultValue::SymbolicBase; }
  bool operator==(const Multiplicity&) const = default;
};

// "0", "1", "m(a,b)", "undetermined(reason)"
std::string format_multiplicity(const Multiplicity& m);
// "zero", "one", "symbolic", "undetermined"
std::string_view status_of(const Multiplicity& m);

// FJ: both arguments are (k,h) of symplectic labels.
// Bessel: left is the odd orthogonal (k,h), right the even one.
bool relevance_necessary(const KH& kh_left, const KH& kh_right, const GGPCase& c);

// nullopt when the answer depends on an absent orientation bit
std::optional<bool> is_strongly_relevant(const RepLabel& left, const RepLabel& right,
                                         const GGPCase& c, const TowerContext& ctx);

Multiplicity ggp_multiplicity(const RepLabel& left, const RepLabel& right, const GGPCase& c,
                              const TowerContext& ctx);

struct VariantEntry {
  RepLabel left;
  RepLabel right;
  Multiplicity mult;
};

struct VariantReport {
  std::vector<VariantEntry> variants;
  std::vector<std::size_t> nonzero;  // indices into variants
};

// The transpose family: {Λ', Λ'^t} on both sides for FJ; {Λ_1, Λ_1^t} x
// {Λ_1', Λ_1'^t} on the even side for Bessel.  Throws MultipleNonzero when
// some completion of the orientation bits gives two nonzero variants.
VariantReport variant_family(const RepLabel& left, const RepLabel& right, const GGPCase& c,
                             const TowerContext& ctx);
VariantReport select_nonzero_variant(const RepLabel& left, const RepLabel& right,
                                     const GGPCase& c, const TowerContext& ctx);

struct BranchRow {
  RepLabel label;
  Multiplicity mult;
};

// Sp unipotent against Sp of the same rank (FJ, ε_0 = ε_{-1}), or odd
// orthogonal unipotent restricted to an even orthogonal group of the same
// rank (Bessel).  ctx.left orients pi; candidates use their own defaults.
std::vector<BranchRow> branch_decomposition(const RepLabel& pi, const GroupTag& target,
                                            const TowerContext& ctx,
                                            const std::vector<RhoDescriptor>& rho_catalog);

// every label of the group with ρ from the catalog, in canonical order
std::vector<RepLabel> enumerate_labels(const GroupTag& group,
                                       const std::vector<RhoDescriptor>& rho_catalog,
                                       Sign eps_minus_one);

// canonical row order: L, then L', then ρ
bool label_less(const RepLabel& a, const RepLabel& b);

}  // namespace ggp
