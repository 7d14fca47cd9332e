#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tetra/geometry.hpp"
#include "tetra/triples.hpp"

namespace tetra::harness {

enum class GenKind {
  e_unitary,
  toeplitz_compression,
  direct_sum,
  conjugated,
  near_miss,
};

/// Instance recipe. Identical spec => identical instance, byte for byte.
struct GeneratorSpec {
  GenKind kind = GenKind::toeplitz_compression;
  int dim = 2;          // unitary dimension (e_unitary / direct_sum summand)
  int defect_dim = 1;   // symbol fiber size k
  int levels = 4;       // Toeplitz truncation depth N
  std::uint64_t seed = 1;
  GenKind inner = GenKind::direct_sum;  // wrapped kind for `conjugated`
  ToleranceProfile tol;
};

/// What the generator knows about its instance, for suite assertions.
struct GroundTruth {
  bool is_e_contraction = true;
  Eigen::Index unitary_dim = 0;
  bool pure = false;
  std::string description;
  /// near-miss flavor: "outside_point", "symbol_condition_1|2|3"; empty
  /// for genuine instances.
  std::string near_miss_kind;
  std::optional<geometry::TetraPoint> point;           // scalar near-miss
  std::optional<std::pair<CMatrix, CMatrix>> symbols;  // Toeplitz symbols
};

/// Diagonal triple (conj(b_i) p_i, b_i, p_i) with unimodular p and |b| <= 1,
/// conjugated by a Haar-random unitary. Always passes classify_E_unitary.
triples::OperatorTriple gen_e_unitary(int d, std::uint64_t seed);

/// Instance generator with known ground truth; see GenKind. Near-miss
/// instances alternate between scalar points outside closed E and symbol
/// pairs violating exactly one of the three Toeplitz model conditions.
std::pair<triples::OperatorTriple, GroundTruth> gen_e_contraction(
    const GeneratorSpec& spec);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string details;
  std::map<std::string, double> stats;
  double seconds = 0;
};

struct SuiteConfig {
  int seeds = 100;
  int max_dim = 12;
  int max_levels = 8;
  std::uint64_t base_seed = 1;
  std::vector<std::string> checks;  // names to run; empty runs nothing

  /// All known checks with the default budgets.
  static SuiteConfig standard();
};

struct SuiteReport {
  std::vector<CheckResult> checks;
  bool all_passed = true;
};

/// Names of every registered theorem-keyed property check.
std::vector<std::string> suite_check_names();

/// Executes the configured checks over seeded instance batches. An unknown
/// check name yields a failed entry rather than an exception.
SuiteReport run_suite(const SuiteConfig& config);

}  // namespace tetra::harness
