#pragma once

// Brute-force verifiers.  These only use the defining predicates (in_B,
// enumeration, counting) and compare against the closed forms.

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "ggp/ggp.hpp"
#include "ggp/theta.hpp"

namespace ggp {

struct VerificationFailure {
  std::string input;
  std::string expected;
  std::string actual;
};

struct VerificationReport {
  std::string suite;
  long long checked = 0;
  std::vector<VerificationFailure> failures;
  std::chrono::milliseconds elapsed{0};

  bool passing() const { return failures.empty(); }
  // {"suite", "checked", "failures":[{input, expected, actual}], "elapsed_ms"}
  std::string to_json() const;
};

// scan bound used when none is given: rank + (|def|+1)/2 + 1
int default_scan_bound(const Symbol& lam);

std::optional<int> brute_first_occurrence(const Symbol& lam, Sign sign, int max_rank);
// even-orthogonal source, Sp tower
std::optional<int> brute_first_occurrence_reverse(const Symbol& lam_prime, int max_rank);

// lambda1_shift is the harness self-test hook forwarded to the closed form
VerificationReport verify_f1(int max_rank, int lambda1_shift = 0);
VerificationReport verify_counts(int max_rank);
// kind absent: both cases
VerificationReport verify_variant_uniqueness(int max_rank, const TowerContext& ctx,
                                             std::optional<CaseKind> kind = std::nullopt);

// number of ordered bipartitions of n, by dynamic programming
long long bipartition_count(int n);

struct RestrictionCheck {
  int order_g = 0;
  int order_h = 0;
  int trivial = 0;  // <1_G|_H, 1_H>
  int det = 0;      // <1_G|_H, det_H>
};

// O_3(F_q) ⊃ O^{sign}_2(F_q) as the stabilizer of an anisotropic vector,
// built from matrices; q an odd prime.
RestrictionCheck restrict_trivial_o3(int q, Sign sign);

}  // namespace ggp
