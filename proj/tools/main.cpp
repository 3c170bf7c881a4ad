// rpd: fit, score and evaluate random polytope descriptors from the shell.
//
// Exit codes: 0 success, 1 bad input or usage, 2 numerical failure.
// Errors are written to stderr as one line: "rpd: error: <kind>: <message>".

#include <CLI11.hpp>

#include <algorithm>
#include <exception>
#include <iostream>
#include <string>

#include "commands.hpp"
#include "rpd/errors.hpp"

namespace {

int report_error(const char* kind, const std::string& message, int code) {
  std::string line = message;
  std::replace(line.begin(), line.end(), '\n', ' ');
  std::cerr << "rpd: error: " << kind << ": " << line << '\n';
  return code;
}

void add_eval_common(CLI::App* cmd, rpd::cli::EvalCommon& c) {
  cmd->add_option("--out-json", c.out_json, "Report JSON path")->required();
  cmd->add_option("--out-csv", c.out_csv, "Flat CSV path");
  cmd->add_option("--timings-out", c.timings_out, "Wall-clock timings JSON path");
  cmd->add_option("--policy", c.policy, "sample-mean | chebyshev | vertex-barycenter")
      ->capture_default_str();
  cmd->add_option("--seeds", c.seeds, "Comma-separated seeds")->delimiter(',')->capture_default_str();
  cmd->add_option("--threads", c.threads, "Worker threads, 0 = all cores")->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
  using namespace rpd::cli;
  CLI::App app{"Random polytope descriptors: fit, score, evaluate"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "rpd 0.1.0");

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a model on a labeled CSV");
  fit_cmd->add_option("--train", fit.train, "Training CSV")->required()->check(CLI::ExistingFile);
  fit_cmd->add_option("--out", fit.out, "Model file to write")->required();
  fit_cmd->add_option("--m", fit.m, "Directions per class")->capture_default_str();
  fit_cmd->add_option("--ell", fit.ell, "Order statistic for offsets")->capture_default_str();
  fit_cmd->add_option("--policy", fit.policy, "sample-mean | chebyshev | vertex-barycenter")
      ->capture_default_str();
  fit_cmd->add_option("--seed", fit.seed, "Master seed")->capture_default_str();
  fit_cmd->add_flag("--shared-y", fit.shared_y, "One direction set for all classes");
  fit_cmd->add_option("--barycenter-samples", fit.barycenter_samples,
                      "Random vertices for the vertex-barycenter policy")
      ->capture_default_str();
  fit_cmd->add_option("--threads", fit.threads, "Worker threads, 0 = all cores")
      ->capture_default_str();

  ScoreArgs sc;
  auto* score_cmd = app.add_subcommand("score", "Score a labeled CSV against a model");
  score_cmd->add_option("--model", sc.model, "Model file")->required()->check(CLI::ExistingFile);
  score_cmd->add_option("--data", sc.data, "CSV to score")->required()->check(CLI::ExistingFile);
  score_cmd->add_option("--out", sc.out, "Scores CSV to write")->required();
  score_cmd->add_option("--reject-threshold", sc.reject_threshold,
                        "Reject when delta exceeds this; inf disables")
      ->capture_default_str();

  auto* eval_cmd = app.add_subcommand("eval", "Run an evaluation protocol");
  eval_cmd->require_subcommand(1);

  SeparationArgs sep;
  auto* sep_cmd = eval_cmd->add_subcommand("separation", "Per-class AUC, RPD vs centroid");
  sep_cmd->add_option("--train", sep.train)->required()->check(CLI::ExistingFile);
  sep_cmd->add_option("--test", sep.test)->required()->check(CLI::ExistingFile);
  sep_cmd->add_option("--m", sep.m)->capture_default_str();
  sep_cmd->add_option("--ell", sep.ell)->capture_default_str();
  sep_cmd->add_flag("--shared-y", sep.shared_y);
  add_eval_common(sep_cmd, sep.common);

  AnomalyArgs an;
  auto* an_cmd = eval_cmd->add_subcommand("anomaly", "Contaminated single-class detection");
  an_cmd->add_option("--train", an.train)->required()->check(CLI::ExistingFile);
  an_cmd->add_option("--test", an.test)->required()->check(CLI::ExistingFile);
  an_cmd->add_option("--p", an.p, "Contamination fraction")->capture_default_str();
  an_cmd->add_option("--m", an.m)->capture_default_str();
  an_cmd->add_option("--ell", an.ell)->capture_default_str();
  an_cmd->add_option("--classes", an.classes, "Target classes (default all)")->delimiter(',');
  add_eval_common(an_cmd, an.common);

  OodArgs ood;
  auto* ood_cmd = eval_cmd->add_subcommand("ood", "Out-of-distribution delta histograms");
  ood_cmd->add_option("--train", ood.train)->required()->check(CLI::ExistingFile);
  ood_cmd->add_option("--test", ood.test)->required()->check(CLI::ExistingFile);
  ood_cmd->add_option("--ood", ood.ood, "OOD CSV; labels ignored")->required()->check(CLI::ExistingFile);
  ood_cmd->add_option("--m", ood.m, "Directions per class (default max(640, 40d))");
  ood_cmd->add_option("--ell", ood.ell)->capture_default_str();
  ood_cmd->add_option("--bins", ood.bins)->capture_default_str();
  add_eval_common(ood_cmd, ood.common);

  GridArgs grid;
  auto* grid_cmd = eval_cmd->add_subcommand(
      "grid", "Anomaly AUC over m and d; synthetic clusters unless --train/--test are given");
  grid_cmd->add_option("--train", grid.train, "Training CSV, one per d (repeatable)")
      ->check(CLI::ExistingFile);
  grid_cmd->add_option("--test", grid.test, "Test CSV paired with each --train")
      ->check(CLI::ExistingFile);
  grid_cmd->add_option("--p", grid.p)->capture_default_str();
  grid_cmd->add_option("--ell", grid.ell)->capture_default_str();
  grid_cmd->add_option("--m-values", grid.m_values)->delimiter(',')->capture_default_str();
  grid_cmd->add_option("--classes", grid.classes)->delimiter(',');
  grid_cmd->add_option("--d-min", grid.d_min)->capture_default_str();
  grid_cmd->add_option("--d-max", grid.d_max)->capture_default_str();
  grid_cmd->add_option("--synth-classes", grid.synth_classes)->capture_default_str();
  grid_cmd->add_option("--synth-train", grid.synth_train, "Training points per class")
      ->capture_default_str();
  grid_cmd->add_option("--synth-test", grid.synth_test, "Test points per class")
      ->capture_default_str();
  grid_cmd->add_option("--synth-spacing", grid.synth_spacing)->capture_default_str();
  grid_cmd->add_option("--data-seed", grid.data_seed)->capture_default_str();
  add_eval_common(grid_cmd, grid.common);

  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic labeled CSV");
  PresetArgs preset;
  synth_cmd->add_option("--preset", preset.name, "Named scenario: fig1");
  synth_cmd->add_option("--out", preset.out, "CSV path for --preset");
  synth_cmd->add_option("--seed", preset.seed, "Seed for --preset")->capture_default_str();
  synth_cmd->require_subcommand(0, 1);

  GaussianArgs gauss;
  auto* gauss_cmd = synth_cmd->add_subcommand("gaussian", "Gaussian clusters");
  gauss_cmd->add_option("--out", gauss.out)->required();
  gauss_cmd->add_option("--classes", gauss.classes)->capture_default_str();
  gauss_cmd->add_option("--d", gauss.dim)->capture_default_str();
  gauss_cmd->add_option("--n", gauss.per_class, "Points per class")->capture_default_str();
  gauss_cmd->add_option("--spacing", gauss.spacing)->capture_default_str();
  gauss_cmd->add_option("--anisotropy", gauss.anisotropy,
                        "Variance r on axes 1..d-1 (axis 0 keeps 1); means along axis 0");
  gauss_cmd->add_option("--seed", gauss.seed)->capture_default_str();

  SphereArgs sphere;
  auto* sphere_cmd = synth_cmd->add_subcommand("sphere", "Uniform points on a sphere");
  sphere_cmd->add_option("--out", sphere.out)->required();
  sphere_cmd->add_option("--n", sphere.n)->capture_default_str();
  sphere_cmd->add_option("--d", sphere.dim)->capture_default_str();
  sphere_cmd->add_option("--radius", sphere.radius)->capture_default_str();
  sphere_cmd->add_option("--center", sphere.center, "Comma-separated center")->delimiter(',');
  sphere_cmd->add_option("--label", sphere.label)->capture_default_str();
  sphere_cmd->add_option("--seed", sphere.seed)->capture_default_str();

  auto* theory_cmd = app.add_subcommand("theory", "Empirical checks of the random polytope theory");
  theory_cmd->require_subcommand(1);

  VertexCountArgs vc;
  auto* vc_cmd = theory_cmd->add_subcommand("vertex-count", "Vertex count against m (d <= 4)");
  vc_cmd->add_option("--out", vc.out)->required();
  vc_cmd->add_option("--d", vc.dim)->capture_default_str();
  vc_cmd->add_option("--n", vc.n)->capture_default_str();
  vc_cmd->add_option("--ell", vc.ell)->capture_default_str();
  vc_cmd->add_option("--m-values", vc.m_values)->delimiter(',')->capture_default_str();
  vc_cmd->add_option("--trials", vc.trials)->capture_default_str();
  vc_cmd->add_option("--seed", vc.seed)->capture_default_str();
  vc_cmd->add_flag("--cube", vc.cube, "Enumerate the cube [-1,1]^d instead");

  BarycenterArgs bc;
  auto* bc_cmd = theory_cmd->add_subcommand("barycenter", "Vertex-barycenter concentration");
  bc_cmd->add_option("--out", bc.out)->required();
  bc_cmd->add_option("--d", bc.dim)->capture_default_str();
  bc_cmd->add_option("--n", bc.n)->capture_default_str();
  bc_cmd->add_option("--m", bc.m)->capture_default_str();
  bc_cmd->add_option("--samples", bc.samples, "Comma-separated s values")
      ->delimiter(',')
      ->capture_default_str();
  bc_cmd->add_option("--trials", bc.trials)->capture_default_str();
  bc_cmd->add_option("--eps", bc.eps)->capture_default_str();
  bc_cmd->add_option("--center", bc.center, "Sphere center, comma-separated")->delimiter(',');
  bc_cmd->add_option("--seed", bc.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("usage", e.what(), 1);
  }

  try {
    if (*fit_cmd) {
      run_fit(fit);
    } else if (*score_cmd) {
      run_score(sc);
    } else if (*sep_cmd) {
      run_eval_separation(sep);
    } else if (*an_cmd) {
      run_eval_anomaly(an);
    } else if (*ood_cmd) {
      run_eval_ood(ood);
    } else if (*grid_cmd) {
      run_eval_grid(grid);
    } else if (*gauss_cmd) {
      run_synth_gaussian(gauss);
    } else if (*sphere_cmd) {
      run_synth_sphere(sphere);
    } else if (*synth_cmd) {
      if (preset.name.empty() || preset.out.empty()) {
        return report_error("usage", "synth needs a generator subcommand or --preset with --out",
                            1);
      }
      run_synth_preset(preset);
    } else if (*vc_cmd) {
      run_theory_vertex_count(vc);
    } else if (*bc_cmd) {
      run_theory_barycenter(bc);
    }
  } catch (const rpd::InvalidArgument& e) {
    return report_error("invalid-argument", e.what(), 1);
  } catch (const rpd::UnsupportedVersion& e) {
    return report_error("unsupported-version", e.what(), 1);
  } catch (const rpd::ParseError& e) {
    return report_error("parse-error", e.what(), 1);
  } catch (const rpd::IoError& e) {
    return report_error("io-error", e.what(), 1);
  } catch (const rpd::StateError& e) {
    return report_error("state-error", e.what(), 1);
  } catch (const rpd::NotInteriorError& e) {
    return report_error("not-interior", e.what(), 2);
  } catch (const rpd::NotBoundedError& e) {
    return report_error("not-bounded", e.what(), 2);
  } catch (const rpd::DegeneratePolytopeError& e) {
    return report_error("degenerate-polytope", e.what(), 2);
  } catch (const rpd::SolverFailure& e) {
    return report_error("solver-failure", e.what(), 2);
  } catch (const rpd::NumericalError& e) {
    return report_error("numerical", e.what(), 2);
  } catch (const std::exception& e) {
    return report_error("internal", e.what(), 2);
  }
  return 0;
}
