#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "tetra/json_io.hpp"

namespace {

using tetra::Complex;
using tetra::ToleranceProfile;
using json = tetra::io::json;

constexpr int kExitOk = 0;
constexpr int kExitFalsified = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDegenerate = 3;

struct GlobalOptions {
  double tol = 0;  // 0 keeps the defaults
  std::uint64_t seed = 1;
  bool pretty = false;

  ToleranceProfile profile() const {
    return tol > 0 ? ToleranceProfile::uniform(tol) : ToleranceProfile{};
  }
};

void print(const json& j, const GlobalOptions& g) {
  std::cout << tetra::io::emit(j, g.pretty) << "\n";
}

tetra::triples::OperatorTriple load_triple(const std::string& path,
                                           const GlobalOptions& g) {
  auto t = tetra::io::parse_triple_file(path);
  if (g.tol > 0)
    return tetra::triples::OperatorTriple::make(t.A(), t.B(), t.P(), g.profile());
  return t;
}

int run_geom(const std::vector<double>& coords, const std::string& input,
             int grid, bool oracle, const GlobalOptions& g) {
  tetra::geometry::TetraPoint p;
  if (!input.empty()) {
    std::ifstream in(input);
    if (!in) throw tetra::ParseError("cannot open " + input);
    json j = json::parse(in, nullptr, true);
    p = tetra::io::point_from_json(j);
  } else if (coords.size() == 6) {
    p = {{coords[0], coords[1]}, {coords[2], coords[3]}, {coords[4], coords[5]}};
  } else {
    std::cerr << "geom: give six reals (re/im interleaved) or --input\n";
    return kExitUsage;
  }
  const auto tol = g.profile();
  const auto member = tetra::geometry::in_closed_E(p, tol);
  json out{{"member_closed", member.member},
           {"member_bE", tetra::geometry::in_bE(p, tol)},
           {"boundary_indeterminate", member.indeterminate}};
  if (member.certificate) {
    out["c1"] = tetra::io::complex_to_json(member.certificate->c1);
    out["c2"] = tetra::io::complex_to_json(member.certificate->c2);
    out["slack"] = member.certificate->slack;
  } else {
    out["c1"] = nullptr;
    out["c2"] = nullptr;
    out["slack"] = nullptr;
  }
  if (oracle) {
    out["oracle_min_modulus"] =
        tetra::geometry::bidisc_zero_oracle(p, grid).min_modulus;
    out["member_open"] = tetra::geometry::in_open_E(p, tol, grid);
  } else {
    out["oracle_min_modulus"] = nullptr;
    out["member_open"] = nullptr;
  }
  print(out, g);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tetra: a numerical laboratory for tetrablock contractions"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--tol", g.tol, "uniform tolerance for all profile fields");
  app.add_option("--seed", g.seed, "seed for randomized checks");
  app.add_flag("--pretty,!--json", g.pretty,
               "indent output (default: compact single-line JSON)");

  // geom
  auto* geom = app.add_subcommand("geom", "tetrablock membership of a point");
  std::vector<double> coords;
  std::string geom_input;
  int grid = 64;
  bool oracle = true;
  geom->add_option("coords", coords, "x1re x1im x2re x2im x3re x3im");
  geom->add_option("--input", geom_input, "JSON file with {x1, x2, x3}");
  geom->add_option("--grid", grid, "oracle grid resolution")->default_val(64);
  geom->add_flag("--oracle,!--no-oracle", oracle, "run the bidisc oracle");

  // classify
  auto* classify = app.add_subcommand("classify", "classification report for a triple");
  std::string classify_input;
  tetra::triples::ClassifyOptions copt;
  classify->add_option("--input", classify_input)->required();
  classify->add_option("--degree", copt.vn_max_degree, "max polynomial degree");
  classify->add_option("--polys", copt.vn_polys, "number of random polynomials");
  classify->add_option("--samples", copt.vn_points, "sup-norm sample count");

  // fundamental
  auto* fund = app.add_subcommand("fundamental", "fundamental operators on the defect space");
  std::string fund_input;
  bool fund_adjoint = false;
  fund->add_option("--input", fund_input)->required();
  fund->add_flag("--adjoint", fund_adjoint, "solve for (A*, B*, P*)");

  // decompose
  auto* decompose = app.add_subcommand("decompose", "canonical decomposition");
  std::string dec_input;
  decompose->add_option("--input", dec_input)->required();

  // dilate
  auto* dilate = app.add_subcommand("dilate", "explicit tetrablock-isometric dilation");
  std::string dil_input;
  int dil_levels = 4;
  int verify_degree = 0;
  dilate->add_option("--input", dil_input)->required();
  dilate->add_option("--levels", dil_levels, "defect levels N")->required();
  dilate->add_option("--verify-degree", verify_degree,
                     "also verify compressions up to this word length");

  // model
  auto* model = app.add_subcommand("model", "co-isometry model assembly");
  std::string model_input;
  int model_levels = 6;
  model->add_option("--input", model_input)->required();
  model->add_option("--levels", model_levels, "defect levels N")->required();

  // generate
  auto* generate = app.add_subcommand("generate", "instances with known ground truth");
  std::string gen_kind = "direct_sum", gen_out;
  tetra::harness::GeneratorSpec spec;
  generate->add_option("--kind", gen_kind,
                       "e_unitary|toeplitz_compression|direct_sum|conjugated|near_miss");
  generate->add_option("--dim", spec.dim, "unitary summand dimension");
  generate->add_option("--defect-dim", spec.defect_dim, "symbol fiber size");
  generate->add_option("--levels", spec.levels, "Toeplitz truncation depth");
  generate->add_option("-o,--output", gen_out, "triple file to write");

  // verify
  auto* verify = app.add_subcommand("verify", "run the property-test suite");
  std::string verify_config, junit_out;
  verify->add_option("--config", verify_config, "suite config JSON");
  verify->add_option("--junit", junit_out, "write a JUnit XML report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*geom) return run_geom(coords, geom_input, grid, oracle, g);

    if (*classify) {
      const auto t = load_triple(classify_input, g);
      copt.seed = g.seed;
      const auto report = tetra::triples::classify(t, copt);
      print(tetra::io::classification_to_json(report), g);
      return report.verdict == tetra::triples::Verdict::falsified ? kExitFalsified
                                                                  : kExitOk;
    }

    if (*fund) {
      const auto t = load_triple(fund_input, g);
      const auto fp = fund_adjoint ? tetra::fundamental::adjoint_fundamentals(t)
                                   : tetra::fundamental::fundamental_operators(t);
      print(tetra::io::fundamental_to_json(fp, tetra::fundamental::commutator_report(fp)), g);
      return kExitOk;
    }

    if (*decompose) {
      const auto t = load_triple(dec_input, g);
      const auto d = tetra::decomp::canonical_decompose(t);
      print(tetra::io::decomposition_to_json(d), g);
      return kExitOk;
    }

    if (*dilate) {
      const auto t = load_triple(dil_input, g);
      const auto fp = tetra::fundamental::fundamental_operators(t);
      const auto gd = tetra::models::build_dilation(t, fp, dil_levels);
      json out{{"dilation", tetra::io::graded_to_json(gd)},
               {"fundamental",
                tetra::io::fundamental_to_json(
                    fp, tetra::fundamental::commutator_report(fp))}};
      if (verify_degree > 0)
        out["verification"] = tetra::io::dilation_verification_to_json(
            tetra::models::verify_dilation(t, gd, verify_degree, 50, g.seed));
      print(out, g);
      return kExitOk;
    }

    if (*model) {
      const auto t = load_triple(model_input, g);
      const auto m = tetra::models::build_coisometry_model(t, model_levels);
      print(tetra::io::assembly_to_json(m), g);
      return kExitOk;
    }

    if (*generate) {
      spec.kind = tetra::io::gen_kind_from_string(gen_kind);
      spec.seed = g.seed;
      if (g.tol > 0) spec.tol = g.profile();
      auto [t, gt] = tetra::harness::gen_e_contraction(spec);
      const json file = tetra::io::triple_to_json(t);
      if (!gen_out.empty()) {
        std::ofstream out(gen_out);
        out << tetra::io::emit(file, g.pretty) << "\n";
      }
      json info{{"description", gt.description},
                {"is_e_contraction", gt.is_e_contraction},
                {"unitary_dim", gt.unitary_dim},
                {"pure", gt.pure}};
      if (!gt.near_miss_kind.empty()) info["near_miss_kind"] = gt.near_miss_kind;
      if (gen_out.empty()) info["triple"] = file;
      print(info, g);
      return kExitOk;
    }

    if (*verify) {
      tetra::harness::SuiteConfig cfg;
      if (verify_config.empty()) {
        cfg = tetra::harness::SuiteConfig::standard();
      } else {
        std::ifstream in(verify_config);
        if (!in) throw tetra::ParseError("cannot open " + verify_config);
        cfg = tetra::io::suite_config_from_json(json::parse(in));
      }
      cfg.base_seed = g.seed;
      const auto report = tetra::harness::run_suite(cfg);
      if (!junit_out.empty()) {
        std::ofstream out(junit_out);
        out << tetra::io::suite_report_to_junit(report);
      }
      print(tetra::io::suite_report_to_json(report), g);
      return report.all_passed ? kExitOk : kExitFalsified;
    }
  } catch (const tetra::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const tetra::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const tetra::DegenerateDefect& e) {
    std::cerr << "numerical degeneracy: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const tetra::NotIsometricInterior& e) {
    std::cerr << "numerical degeneracy: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const tetra::SymbolConditionsViolated& e) {
    std::cerr << "falsified: " << e.what() << "\n";
    return kExitFalsified;
  } catch (const tetra::HypothesisViolated& e) {
    std::cerr << "falsified: " << e.what() << "\n";
    return kExitFalsified;
  } catch (const tetra::NotAContraction& e) {
    std::cerr << "falsified: " << e.what() << "\n";
    return kExitFalsified;
  } catch (const tetra::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegenerate;
  }
  return kExitUsage;
}
