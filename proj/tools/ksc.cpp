#include "commands.hpp"

#include "ksc/error.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace {

using namespace ksc::cli;

void add_model_options(CLI::App* cmd, ModelOptions& m, bool with_kernel) {
  cmd->add_option("--k", m.k, "number of clusters");
  if (with_kernel)
    cmd->add_option("--kernel", m.kernel, "rbf|chi2")->check(CLI::IsMember({"rbf", "chi2"}));
  cmd->add_option("--param", m.param, "kernel parameter (RBF gamma or chi-square sigma)");
  cmd->add_option("--eps-tol", m.eps_tol, "ICD relative residual trace tolerance");
  cmd->add_option("--rmax", m.r_max, "maximum reduced set size");
  cmd->add_option("--encoding", m.encoding, "sign|direction")
      ->check(CLI::IsMember({"sign", "direction"}));
  cmd->add_option("--bias", m.bias, "proposed|original")
      ->check(CLI::IsMember({"proposed", "original"}));
  cmd->add_option("--seed", m.seed, "random seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse kernel spectral clustering with incomplete Cholesky acceleration", "ksc"};
  app.require_subcommand(1);

  GenSpiralOptions gen;
  auto* gen_cmd = app.add_subcommand("gen-spiral", "write a labeled two-spiral CSV");
  gen_cmd->add_option("--n", gen.n, "number of points")->required();
  gen_cmd->add_option("--noise", gen.noise, "Gaussian noise standard deviation");
  gen_cmd->add_option("--seed", gen.seed, "random seed");
  gen_cmd->add_option("--out", gen.out, "output CSV")->required();

  TrainOptions tr;
  auto* train_cmd = app.add_subcommand("train", "train a sparse model");
  train_cmd->add_option("--data", tr.data, "input CSV")->required();
  train_cmd->add_flag("--labeled", tr.labeled, "last CSV column is a label");
  train_cmd->add_option("--ntr", tr.n_train, "training subset size (default: all rows)");
  train_cmd->add_option("--model", tr.model_out, "output model file")->required();
  add_model_options(train_cmd, tr.model, true);

  PredictOptions pr;
  auto* predict_cmd = app.add_subcommand("predict", "assign cluster labels");
  predict_cmd->add_option("--model", pr.model, "model file")->required();
  predict_cmd->add_option("--data", pr.data, "input CSV")->required();
  predict_cmd->add_flag("--labeled", pr.labeled, "last CSV column is a label; prints ARI");
  predict_cmd->add_option("--out", pr.out, "output label file")->required();

  TuneOptions tu;
  auto* tune_cmd = app.add_subcommand("tune", "grid search over K and the kernel parameter");
  tune_cmd->add_option("--data", tu.data, "input CSV")->required();
  tune_cmd->add_flag("--labeled", tu.labeled, "last CSV column is a label");
  tune_cmd->add_option("--kmin", tu.k_min, "smallest K");
  tune_cmd->add_option("--kmax", tu.k_max, "largest K");
  tune_cmd->add_option("--grid", tu.grid, "lo:hi:steps:log|lin")->required();
  tune_cmd->add_option("--criterion", tu.criterion, "blf|bas")->check(CLI::IsMember({"blf", "bas"}));
  tune_cmd->add_option("--eta", tu.eta, "fit versus balance weight");
  tune_cmd->add_option("--ntr", tu.n_train, "training subset size");
  tune_cmd->add_option("--nval", tu.n_val, "validation subset size");
  tune_cmd->add_option("--out", tu.out, "report CSV")->required();
  add_model_options(tune_cmd, tu.model, true);
  tune_cmd->get_option("--k")->description("unused by tune");

  BenchOptions be;
  auto* bench_cmd = app.add_subcommand("bench", "timing and ARI over (n_tr, R) pairs");
  bench_cmd->add_option("--data", be.data, "labeled input CSV")->required();
  bench_cmd->add_option("--ntr-list", be.ntr_list, "training sizes")->delimiter(',')->required();
  bench_cmd->add_option("--r-list", be.r_list, "reduced set sizes")->delimiter(',')->required();
  bench_cmd->add_option("--repeats", be.repeats, "runs per pair, seeds seed+i");
  bench_cmd->add_option("--out", be.out, "report CSV")->required();
  be.model.eps_tol = 1e-12;
  add_model_options(bench_cmd, be.model, true);

  SegmentOptions se;
  auto* seg_cmd = app.add_subcommand("segment", "segment a PPM image");
  seg_cmd->add_option("--image", se.image, "input P6 image")->required();
  seg_cmd->add_option("--out", se.out, "output P5 label map")->required();
  seg_cmd->add_option("--truth", se.truth, "P5 ground-truth label map");
  seg_cmd->add_option("--levels", se.levels, "quantization levels");
  seg_cmd->add_option("--window", se.window, "odd histogram window");
  seg_cmd->add_option("--ntr", se.n_train, "training subset size");
  seg_cmd->add_option("--nval", se.n_val, "validation subset size for --auto-tune");
  seg_cmd->add_flag("--auto-tune", se.auto_tune, "pick K and sigma by grid search");
  seg_cmd->add_option("--kmin", se.k_min, "smallest K for --auto-tune");
  seg_cmd->add_option("--kmax", se.k_max, "largest K for --auto-tune");
  seg_cmd->add_option("--grid", se.grid, "sigma grid for --auto-tune");
  seg_cmd->add_option("--criterion", se.criterion, "blf|bas")->check(CLI::IsMember({"blf", "bas"}));
  seg_cmd->add_option("--eta", se.eta, "fit versus balance weight");
  se.model.param = 0.1;
  se.model.encoding = "direction";
  add_model_options(seg_cmd, se.model, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "ksc: error: usage: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*gen_cmd) return run_gen_spiral(gen);
    if (*train_cmd) return run_train(tr);
    if (*predict_cmd) return run_predict(pr);
    if (*tune_cmd) return run_tune(tu);
    if (*bench_cmd) return run_bench(be);
    if (*seg_cmd) return run_segment(se);
  } catch (const ksc::Error& e) {
    std::cerr << "ksc: error: " << ksc::to_string(e.kind()) << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "ksc: error: internal: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
