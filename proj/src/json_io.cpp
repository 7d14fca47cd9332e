#include "tetra/json_io.hpp"

#include <fstream>
#include <sstream>

namespace tetra::io {

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("complex number must be a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const CMatrix& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      data.push_back(complex_to_json(m(i, j)));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("data"))
    throw ParseError("matrix must carry rows, cols and data");
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  if (rows < 0 || cols < 0) throw ParseError("matrix dimensions must be >= 0");
  const json& data = j.at("data");
  if (!data.is_array() ||
      static_cast<Eigen::Index>(data.size()) != rows * cols)
    throw ParseError("matrix data length must equal rows*cols");
  CMatrix m(rows, cols);
  Eigen::Index at = 0;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index jx = 0; jx < cols; ++jx)
      m(i, jx) = complex_from_json(data[at++]);
  if (!numkit::entries_finite(m)) throw ParseError("matrix entries must be finite");
  return m;
}

json tol_to_json(const ToleranceProfile& t) {
  return json{{"eq_atol", t.eq_atol},
              {"psd_slack", t.psd_slack},
              {"rank_rtol", t.rank_rtol},
              {"contraction_slack", t.contraction_slack}};
}

ToleranceProfile tol_from_json(const json& j) {
  ToleranceProfile t;
  t.eq_atol = j.value("eq_atol", t.eq_atol);
  t.psd_slack = j.value("psd_slack", t.psd_slack);
  t.rank_rtol = j.value("rank_rtol", t.rank_rtol);
  t.contraction_slack = j.value("contraction_slack", t.contraction_slack);
  t.validate();
  return t;
}

json point_to_json(const geometry::TetraPoint& p) {
  return json{{"x1", complex_to_json(p.x1)},
              {"x2", complex_to_json(p.x2)},
              {"x3", complex_to_json(p.x3)}};
}

geometry::TetraPoint point_from_json(const json& j) {
  return {complex_from_json(j.at("x1")), complex_from_json(j.at("x2")),
          complex_from_json(j.at("x3"))};
}

json triple_to_json(const triples::OperatorTriple& t) {
  return json{{"dim", t.dim()},
              {"A", matrix_to_json(t.A())},
              {"B", matrix_to_json(t.B())},
              {"P", matrix_to_json(t.P())},
              {"tol", tol_to_json(t.tol())}};
}

triples::OperatorTriple triple_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("triple file must be a JSON object");
  for (const char* key : {"A", "B", "P"})
    if (!j.contains(key))
      throw ParseError(std::string("triple file missing matrix ") + key);
  CMatrix A = matrix_from_json(j.at("A"));
  CMatrix B = matrix_from_json(j.at("B"));
  CMatrix P = matrix_from_json(j.at("P"));
  if (j.contains("dim") && j.at("dim").get<Eigen::Index>() != A.rows())
    throw ParseError("declared dim does not match the matrices");
  ToleranceProfile tol;
  if (j.contains("tol")) tol = tol_from_json(j.at("tol"));
  return triples::OperatorTriple::make(std::move(A), std::move(B), std::move(P), tol);
}

triples::OperatorTriple parse_triple_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return triple_from_json(j);
}

triples::OperatorTriple parse_triple_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_triple_text(buf.str());
}

std::string emit(const json& j, bool pretty) { return j.dump(pretty ? 2 : -1); }

namespace {

const char* purity_name(triples::PurityClass c) {
  switch (c) {
    case triples::PurityClass::pure: return "pure";
    case triples::PurityClass::unitary: return "unitary";
    case triples::PurityClass::cnu: return "cnu";
    case triples::PurityClass::mixed: return "mixed";
  }
  return "mixed";
}

const char* verdict_name(triples::Verdict v) {
  switch (v) {
    case triples::Verdict::falsified: return "falsified";
    case triples::Verdict::evidence_consistent: return "evidence_consistent";
    case triples::Verdict::unknown: return "unknown";
  }
  return "unknown";
}

}  // namespace

json classification_to_json(const triples::ClassificationReport& r) {
  json violations = json::array();
  for (const auto& v : r.vn_violations)
    violations.push_back(json{{"poly", v.poly.to_string()},
                              {"lhs_norm", v.lhs_norm},
                              {"sampled_sup", v.sampled_sup}});
  json j{{"is_E_unitary", r.is_E_unitary},
         {"is_E_isometry", r.is_E_isometry},
         {"necessary_ok", r.necessary_ok},
         {"vn_violations", std::move(violations)},
         {"rho_min_eigs",
          {{"rho1", r.rho_min_eigs.min_eig_rho1}, {"rho2", r.rho_min_eigs.min_eig_rho2}}},
         {"norms", {{"A", r.norm_A}, {"B", r.norm_B}, {"P", r.norm_P}}},
         {"purity", purity_name(r.purity)},
         {"verdict", verdict_name(r.verdict)},
         {"notes", r.notes}};
  if (r.joint_eigenvalues) {
    json eigs = json::array();
    for (const auto& p : *r.joint_eigenvalues) eigs.push_back(point_to_json(p));
    j["joint_eigenvalues"] = std::move(eigs);
  }
  return j;
}

json fundamental_to_json(const fundamental::FundamentalPair& fp,
                         const fundamental::CommutatorReport& cr) {
  return json{{"F1", matrix_to_json(fp.F1)},
              {"F2", matrix_to_json(fp.F2)},
              {"residual1", fp.residual1},
              {"residual2", fp.residual2},
              {"defect_dim", fp.defect_dim},
              {"commutator_report",
               {{"comm_12", cr.comm_12}, {"self_comm_gap", cr.self_comm_gap}}}};
}

json decomposition_to_json(const decomp::DecompositionResult& d) {
  return json{{"H1_basis", matrix_to_json(d.H1_basis)},
              {"H2_basis", matrix_to_json(d.H2_basis)},
              {"unitary_part",
               {{"A", matrix_to_json(d.A1)},
                {"B", matrix_to_json(d.B1)},
                {"P", matrix_to_json(d.P1)}}},
              {"cnu_part",
               {{"A", matrix_to_json(d.A2)},
                {"B", matrix_to_json(d.B2)},
                {"P", matrix_to_json(d.P2)}}},
              {"offdiag_residuals",
               {{"H1_to_H2", {d.offdiag_21[0], d.offdiag_21[1], d.offdiag_21[2]}},
                {"H2_to_H1", {d.offdiag_12[0], d.offdiag_12[1], d.offdiag_12[2]}}}},
              {"block_identity_A", d.block_identity_A},
              {"block_identity_B", d.block_identity_B},
              {"unitary_check", d.unitary_check},
              {"cnu_check", d.cnu_check},
              {"rho_warning", d.rho_warning}};
}

json graded_to_json(const GradedTriple& g) {
  return json{{"T1", matrix_to_json(g.T1)},
              {"T2", matrix_to_json(g.T2)},
              {"T3", matrix_to_json(g.T3)},
              {"level_dims", g.level_dims},
              {"levels", g.levels},
              {"edge_note", g.edge_note}};
}

json dilation_verification_to_json(const models::DilationVerification& v) {
  return json{{"max_compression_dev", v.max_compression_dev},
              {"words_checked", v.words_checked},
              {"commutators", {v.comm_12, v.comm_13, v.comm_23}},
              {"e_isometry_defect", v.e_isometry_defect},
              {"isometry_defect", v.isometry_defect},
              {"minimality_span_dim", v.minimality_span_dim}};
}

json wold_to_json(const decomp::WoldResult& w) {
  return json{{"unitary_dim", w.unitary_basis.cols()},
              {"shift_dim", w.shift_basis.cols()},
              {"stabilized", w.stabilized},
              {"near_degenerate", w.near_degenerate},
              {"iterations", w.iterations}};
}

json assembly_to_json(const models::ModelAssembly& m) {
  json j{{"model", graded_to_json(m.model)},
         {"G1", matrix_to_json(m.G1)},
         {"G2", matrix_to_json(m.G2)},
         {"adjoint_commutators",
          {{"comm_12", m.adjoint_commutators.comm_12},
           {"self_comm_gap", m.adjoint_commutators.self_comm_gap}}},
         {"defect_dim_T3", m.defect_dim_T3},
         {"defect_dim_P", m.defect_dim_P},
         {"wold", wold_to_json(m.wold)},
         {"residuals", m.residuals}};
  if (m.k2_model) {
    j["k2_model"] = {{"symbol_const", matrix_to_json(m.k2_model->symbol_const)},
                     {"symbol_lin", matrix_to_json(m.k2_model->symbol_lin)},
                     {"levels", m.k2_model->levels},
                     {"boundary_max", m.k2_model->boundary_max}};
  }
  return j;
}

json suite_report_to_json(const harness::SuiteReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back(json{{"name", c.name},
                          {"passed", c.passed},
                          {"details", c.details},
                          {"stats", c.stats},
                          {"seconds", c.seconds}});
  return json{{"all_passed", r.all_passed}, {"checks", std::move(checks)}};
}

std::string suite_report_to_junit(const harness::SuiteReport& r) {
  std::size_t failures = 0;
  for (const auto& c : r.checks)
    if (!c.passed) ++failures;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<testsuite name=\"tetra\" tests=\"" << r.checks.size()
     << "\" failures=\"" << failures << "\">\n";
  for (const auto& c : r.checks) {
    os << "  <testcase name=\"" << c.name << "\" time=\"" << c.seconds << "\"";
    if (c.passed) {
      os << "/>\n";
    } else {
      os << ">\n    <failure message=\"" << c.details << "\"/>\n  </testcase>\n";
    }
  }
  os << "</testsuite>\n";
  return os.str();
}

harness::SuiteConfig suite_config_from_json(const json& j) {
  harness::SuiteConfig cfg;
  cfg.seeds = j.value("seeds", cfg.seeds);
  cfg.max_dim = j.value("max_dim", cfg.max_dim);
  cfg.max_levels = j.value("max_levels", cfg.max_levels);
  cfg.base_seed = j.value("base_seed", cfg.base_seed);
  // No "checks" key means the empty config: nothing runs.
  cfg.checks.clear();
  if (j.contains("checks")) {
    for (const auto& name : j.at("checks"))
      cfg.checks.push_back(name.get<std::string>());
  }
  return cfg;
}

std::string gen_kind_to_string(harness::GenKind k) {
  switch (k) {
    case harness::GenKind::e_unitary: return "e_unitary";
    case harness::GenKind::toeplitz_compression: return "toeplitz_compression";
    case harness::GenKind::direct_sum: return "direct_sum";
    case harness::GenKind::conjugated: return "conjugated";
    case harness::GenKind::near_miss: return "near_miss";
  }
  return "direct_sum";
}

harness::GenKind gen_kind_from_string(const std::string& s) {
  if (s == "e_unitary") return harness::GenKind::e_unitary;
  if (s == "toeplitz_compression") return harness::GenKind::toeplitz_compression;
  if (s == "direct_sum") return harness::GenKind::direct_sum;
  if (s == "conjugated") return harness::GenKind::conjugated;
  if (s == "near_miss") return harness::GenKind::near_miss;
  throw ValidationError("unknown generator kind: " + s);
}

}  // namespace tetra::io
