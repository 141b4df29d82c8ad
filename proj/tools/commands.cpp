#include "commands.hpp"

#include "ksc/dataset.hpp"
#include "ksc/error.hpp"
#include "ksc/image.hpp"
#include "ksc/metrics.hpp"
#include "ksc/model_io.hpp"
#include "ksc/selection.hpp"
#include "ksc/sparse_model.hpp"
#include "ksc/spiral.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>

namespace ksc::cli {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

KernelSpec kernel_of(const ModelOptions& m) {
  KernelSpec spec{parse_kernel_kind(m.kernel), m.param};
  spec.validate();
  return spec;
}

TrainConfig train_config(const ModelOptions& m, long n_train) {
  if (m.r_max < 1) fail(ErrorKind::InvalidArgument, "--rmax must be positive");
  TrainConfig cfg;
  cfg.k_clusters = m.k;
  cfg.kernel = kernel_of(m);
  cfg.eps_tol = m.eps_tol;
  cfg.r_max = m.r_max;
  cfg.n_train = n_train;
  cfg.seed = m.seed;
  cfg.encoding = parse_encoding(m.encoding);
  cfg.bias_variant = parse_bias_variant(m.bias);
  return cfg;
}

TuneConfig tune_config(const ModelOptions& m, const std::string& criterion, double eta,
                       long n_train, long n_val) {
  TuneConfig cfg;
  cfg.n_train = n_train;
  cfg.n_val = n_val;
  cfg.eps_tol = m.eps_tol;
  cfg.r_max = m.r_max;
  cfg.seed = m.seed;
  cfg.criterion = parse_criterion(criterion);
  cfg.eta = eta;
  cfg.kernel = parse_kernel_kind(m.kernel);
  cfg.encoding = parse_encoding(m.encoding);
  cfg.bias_variant = parse_bias_variant(m.bias);
  return cfg;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
  return out;
}

void print_train_summary(const TrainResult& r) {
  std::cout << "R " << r.rank << '\n'
            << "icd_eps " << fmt(r.icd_eps) << '\n'
            << "train_seconds " << fmt(r.seconds) << '\n'
            << "lambda";
  for (Index j = 0; j < r.lambdas.size(); ++j) std::cout << ' ' << fmt(r.lambdas[j]);
  std::cout << '\n';
}

}  // namespace

int run_gen_spiral(const GenSpiralOptions& opt) {
  if (opt.n < 2) fail(ErrorKind::InvalidArgument, "--n must be at least 2");
  if (!(opt.noise >= 0.0)) fail(ErrorKind::InvalidArgument, "--noise must be nonnegative");
  const Dataset ds = generate_two_spirals(opt.n, opt.noise, opt.seed);
  save_csv(opt.out, ds, true);
  std::cout << "rows " << ds.size() << '\n';
  return 0;
}

int run_train(const TrainOptions& opt) {
  const Dataset data = load_csv(opt.data, opt.labeled);
  if (data.size() == 0) fail(ErrorKind::InvalidArgument, "'" + opt.data + "' holds no rows");
  if (opt.n_train > data.size())
    fail(ErrorKind::InvalidArgument, "--ntr " + std::to_string(opt.n_train) +
                                         " exceeds the " + std::to_string(data.size()) +
                                         " rows of '" + opt.data + "'");
  const TrainResult r = train(data, train_config(opt.model, opt.n_train));
  save_model(opt.model_out, r.model);
  print_train_summary(r);
  return 0;
}

int run_predict(const PredictOptions& opt) {
  const SparseKscModel model = load_model(opt.model);
  const Dataset data = load_csv(opt.data, opt.labeled);
  const auto t0 = Clock::now();
  Labels labels;
  if (data.size() > 0) labels = predict(model, data.rows);
  const double seconds = seconds_since(t0);
  save_labels(opt.out, labels);
  std::cout << "rows " << labels.size() << '\n' << "test_seconds " << fmt(seconds) << '\n';
  if (data.labels && labels.size() >= 2)
    std::cout << "ari " << fmt(adjusted_rand_index(labels, *data.labels)) << '\n';
  return 0;
}

int run_tune(const TuneOptions& opt) {
  const Dataset data = load_csv(opt.data, opt.labeled);
  const auto grid = parse_grid(opt.grid);
  const TuneReport report = tune(data, opt.k_min, opt.k_max, grid,
                                 tune_config(opt.model, opt.criterion, opt.eta, opt.n_train, opt.n_val));
  auto out = open_out(opt.out);
  write_tune_csv(out, report);
  if (!out) fail(ErrorKind::Io, "write error on '" + opt.out + "'");
  std::cout << "best K=" << report.best_k << " param=" << fmt(report.best_param) << '\n';
  return 0;
}

int run_bench(const BenchOptions& opt) {
  if (opt.ntr_list.empty() || opt.ntr_list.size() != opt.r_list.size())
    fail(ErrorKind::InvalidArgument,
         "--ntr-list and --r-list must have the same nonzero length (got " +
             std::to_string(opt.ntr_list.size()) + " and " + std::to_string(opt.r_list.size()) + ")");
  if (opt.repeats < 1) fail(ErrorKind::InvalidArgument, "--repeats must be positive");
  const Dataset data = load_csv(opt.data, true);
  if (data.size() < 2) fail(ErrorKind::InvalidArgument, "bench needs at least two labeled rows");

  auto out = open_out(opt.out);
  out << "n_tr,R,train_seconds,test_seconds,ari_mean,ari_std,repeats\n";
  for (std::size_t c = 0; c < opt.ntr_list.size(); ++c) {
    ModelOptions m = opt.model;
    m.r_max = opt.r_list[c];
    std::vector<double> aris;
    double train_total = 0.0, test_total = 0.0;
    Index rank = 0;
    for (int rep = 0; rep < opt.repeats; ++rep) {
      m.seed = opt.model.seed + static_cast<std::uint64_t>(rep);
      const TrainResult r = train(data, train_config(m, opt.ntr_list[c]));
      const auto t0 = Clock::now();
      const Labels labels = predict(r.model, data.rows);
      test_total += seconds_since(t0);
      train_total += r.seconds;
      rank = r.rank;
      aris.push_back(adjusted_rand_index(labels, *data.labels));
    }
    const double n = static_cast<double>(aris.size());
    const double mean = std::accumulate(aris.begin(), aris.end(), 0.0) / n;
    double var = 0.0;
    for (double a : aris) var += (a - mean) * (a - mean);
    const double sd = std::sqrt(var / n);
    out << opt.ntr_list[c] << ',' << rank << ',' << fmt(train_total / n) << ','
        << fmt(test_total / n) << ',' << fmt(mean) << ',' << fmt(sd) << ',' << opt.repeats << '\n';
    std::cout << "n_tr " << opt.ntr_list[c] << " R " << rank << " ari_mean " << fmt(mean)
              << " train_seconds " << fmt(train_total / n) << '\n';
  }
  if (!out) fail(ErrorKind::Io, "write error on '" + opt.out + "'");
  return 0;
}

int run_segment(const SegmentOptions& opt) {
  const LabeledImage image = read_ppm(opt.image);
  const Dataset features = image_to_histogram_dataset(image, opt.window, opt.levels);
  std::cout << "histograms " << features.size() << '\n';

  ModelOptions m = opt.model;
  m.kernel = "chi2";
  if (opt.auto_tune) {
    const Index n_train = std::min<Index>(opt.n_train, features.size() / 2);
    const Index n_val = std::min<Index>(opt.n_val, features.size() - n_train);
    const TuneReport report = tune(features, opt.k_min, opt.k_max, parse_grid(opt.grid),
                                   tune_config(m, opt.criterion, opt.eta, n_train, n_val));
    m.k = static_cast<int>(report.best_k);
    m.param = report.best_param;
    std::cout << "best K=" << m.k << " param=" << fmt(m.param) << '\n';
  }
  const long n_train = std::min<long>(opt.n_train, static_cast<long>(features.size()));
  const TrainResult r = train(features, train_config(m, n_train));
  const auto t0 = Clock::now();
  const Labels labels = predict(r.model, features.rows);
  const double test_seconds = seconds_since(t0);
  write_pgm(opt.out, gray_from_labels(image.width, image.height, labels));
  std::cout << "R " << r.rank << '\n'
            << "train_seconds " << fmt(r.seconds) << '\n'
            << "test_seconds " << fmt(test_seconds) << '\n';
  if (!opt.truth.empty()) {
    const GrayImage truth = read_pgm(opt.truth);
    if (truth.width != image.width || truth.height != image.height)
      fail(ErrorKind::DimensionMismatch, "truth map size differs from the image");
    std::cout << "f_measure " << fmt(pairwise_f_measure(labels, labels_from_gray(truth))) << '\n';
  }
  return 0;
}

}  // namespace ksc::cli
