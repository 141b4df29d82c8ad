#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ksc::cli {

struct GenSpiralOptions {
  long n = 0;
  double noise = 0.02;
  std::uint64_t seed = 0;
  std::string out;
};

struct ModelOptions {
  int k = 2;
  std::string kernel = "rbf";
  double param = 0.006;
  double eps_tol = 1e-9;
  long r_max = 500;
  std::string encoding = "sign";
  std::string bias = "proposed";
  std::uint64_t seed = 0;
};

struct TrainOptions {
  std::string data;
  bool labeled = false;
  long n_train = 0;
  ModelOptions model;
  std::string model_out;
};

struct PredictOptions {
  std::string model;
  std::string data;
  bool labeled = false;
  std::string out;
};

struct TuneOptions {
  std::string data;
  bool labeled = false;
  int k_min = 2;
  int k_max = 4;
  std::string grid;
  std::string criterion = "blf";
  double eta = 0.75;
  long n_train = 1000;
  long n_val = 1000;
  ModelOptions model;
  std::string out;
};

struct BenchOptions {
  std::string data;
  std::vector<long> ntr_list;
  std::vector<long> r_list;
  ModelOptions model;
  int repeats = 10;
  std::string out;
};

struct SegmentOptions {
  std::string image;
  std::string out;
  std::string truth;
  int levels = 8;
  int window = 5;
  long n_train = 10000;
  long n_val = 20000;
  bool auto_tune = false;
  int k_min = 3;
  int k_max = 10;
  std::string grid = "0.001:1:7:log";
  std::string criterion = "bas";
  double eta = 0.75;
  ModelOptions model;
};

int run_gen_spiral(const GenSpiralOptions& opt);
int run_train(const TrainOptions& opt);
int run_predict(const PredictOptions& opt);
int run_tune(const TuneOptions& opt);
int run_bench(const BenchOptions& opt);
int run_segment(const SegmentOptions& opt);

}  // namespace ksc::cli
