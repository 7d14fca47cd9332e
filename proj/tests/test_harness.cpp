#include <doctest.h>

#include "tetra/decomposition.hpp"
#include "tetra/geometry.hpp"
#include "tetra/harness.hpp"
#include "tetra/models.hpp"
#include "tetra/triples.hpp"

using namespace tetra;
using harness::GenKind;
using harness::GeneratorSpec;

TEST_CASE("gen_e_unitary outputs pass the structure test") {
  for (int d = 1; d <= 5; ++d) {
    const auto t = harness::gen_e_unitary(d, 100 + d);
    CHECK(t.validated());
    CHECK(triples::classify_E_unitary(t));
    const auto eigs = triples::joint_eigenvalues(t);
    REQUIRE(eigs.has_value());
    for (const auto& p : *eigs)
      CHECK(geometry::in_bE(p, ToleranceProfile::uniform(1e-8)));
  }
}

TEST_CASE("toeplitz compressions carry their advertised ground truth") {
  GeneratorSpec spec;
  spec.kind = GenKind::toeplitz_compression;
  spec.seed = 5;
  spec.defect_dim = 2;
  spec.levels = 3;
  auto [t, gt] = harness::gen_e_contraction(spec);
  CHECK(gt.is_e_contraction);
  CHECK(gt.pure);
  CHECK(t.dim() == 6);
  CHECK(t.validated());
  CHECK(triples::purity(t.P(), t.tol()).is_pure);
}

TEST_CASE("direct sums record the unitary dimension") {
  GeneratorSpec spec;
  spec.kind = GenKind::direct_sum;
  spec.seed = 8;
  spec.dim = 3;
  spec.defect_dim = 1;
  spec.levels = 3;
  auto [t, gt] = harness::gen_e_contraction(spec);
  CHECK(gt.unitary_dim == 3);
  const auto dec = decomp::canonical_decompose(t);
  CHECK(dec.H1_basis.cols() == 3);

  GeneratorSpec conj = spec;
  conj.kind = GenKind::conjugated;
  conj.inner = GenKind::direct_sum;
  auto [tc, gtc] = harness::gen_e_contraction(conj);
  CHECK(decomp::canonical_decompose(tc).H1_basis.cols() == 3);
}

TEST_CASE("near-miss flavors are each caught by their checker") {
  int seen_point = 0, seen_symbols[4] = {0, 0, 0, 0};
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    GeneratorSpec spec;
    spec.kind = GenKind::near_miss;
    spec.seed = seed;
    auto [t, gt] = harness::gen_e_contraction(spec);
    CHECK_FALSE(gt.is_e_contraction);
    if (gt.point) {
      ++seen_point;
      CHECK_FALSE(geometry::in_closed_E(*gt.point, {}).member);
    } else {
      REQUIRE(gt.symbols.has_value());
      int condition = 0;
      try {
        models::build_toeplitz_pure_isometry(gt.symbols->first,
                                             gt.symbols->second, 3);
      } catch (const SymbolConditionsViolated& e) {
        condition = e.condition;
      }
      REQUIRE(condition >= 1);
      ++seen_symbols[condition];
      CHECK(("symbol_condition_" + std::to_string(condition)) == gt.near_miss_kind);
    }
  }
  CHECK(seen_point == 4);
  CHECK(seen_symbols[1] == 4);
  CHECK(seen_symbols[2] == 4);
  CHECK(seen_symbols[3] == 4);
}

TEST_CASE("generators are deterministic") {
  for (GenKind kind : {GenKind::e_unitary, GenKind::toeplitz_compression,
                       GenKind::direct_sum, GenKind::conjugated, GenKind::near_miss}) {
    GeneratorSpec spec;
    spec.kind = kind;
    spec.seed = 12345;
    auto [t1, g1] = harness::gen_e_contraction(spec);
    auto [t2, g2] = harness::gen_e_contraction(spec);
    CHECK(t1.A() == t2.A());
    CHECK(t1.B() == t2.B());
    CHECK(t1.P() == t2.P());
    CHECK(g1.description == g2.description);
  }
}

TEST_CASE("run_suite with the empty config is an empty report") {
  harness::SuiteConfig cfg;
  cfg.checks.clear();
  const auto report = harness::run_suite(cfg);
  CHECK(report.checks.empty());
  CHECK(report.all_passed);
}

TEST_CASE("run_suite flags unknown checks") {
  harness::SuiteConfig cfg;
  cfg.checks = {"no.such.check"};
  const auto report = harness::run_suite(cfg);
  REQUIRE(report.checks.size() == 1);
  CHECK_FALSE(report.all_passed);
  CHECK(report.checks[0].details == "unknown check");
}

TEST_CASE("run_suite executes a fast slice of the registry") {
  harness::SuiteConfig cfg;
  cfg.seeds = 4;
  cfg.checks = {"geometry.certificate_roundtrip", "geometry.bE_subset",
                "fundamental.scalar_coherence", "harness.generator_determinism"};
  const auto report = harness::run_suite(cfg);
  REQUIRE(report.checks.size() == 4);
  for (const auto& c : report.checks) {
    INFO(c.name, ": ", c.details);
    CHECK(c.passed);
  }
  CHECK(report.all_passed);
}

TEST_CASE("the standard config lists every registered check") {
  const auto cfg = harness::SuiteConfig::standard();
  CHECK(cfg.seeds == 100);
  CHECK(cfg.max_dim == 12);
  CHECK(cfg.max_levels == 8);
  CHECK(cfg.checks == harness::suite_check_names());
  CHECK(cfg.checks.size() >= 20);
}
