#pragma once

#include <optional>
#include <string>
#include <vector>

namespace steerkit::cli {

struct SweepOptions {
  std::string scenario;
  std::string schemes;  // comma list of scheme strings
  std::string direction = "ab";
  std::string ns;  // comma list (wins over range and single)
  double n_min = 0.0, n_max = 0.0, n_step = 0.0;
  std::optional<double> n;
  std::string alphas;  // comma list
  double alpha_min = 0.0, alpha_max = 0.0, alpha_step = 0.0;
  std::optional<double> alpha;
  std::string mus;  // comma list; default grid is {mu}
  std::optional<double> mu;
  std::string out;
  std::string format = "csv";
};

struct ThresholdOptions {
  std::string scenario;
  std::string scheme = "m2";
  std::string direction = "ab";
  std::optional<double> n;
  std::optional<double> alpha;
  double mu = 0.0;
  std::string method = "auto";
  std::string out;
};

struct ClassifyOptions {
  std::string scenario;
  std::string scheme = "m2";
  double n = 0.0;
  double alpha = 0.0;
  double mu = 0.0;
  std::string out;
};

struct OracleOptions {
  std::string scenario;  // empty if --state given
  std::string state_file;
  std::string scheme = "m2";
  std::string direction = "ab";
  double n = 0.0;
  double alpha = 0.0;
  double mu = 0.0;
  int resolution = 162;  // hidden-polytope resolution for analytic schemes
  std::string polytope = "auto";  // auto | inscribed | circumscribed
  std::string out;
};

struct ReduceOptions {
  std::string scenario;
  std::string direction = "ab";
  double n = 0.0;
  double alpha = 0.0;
  double mu = 0.0;
  std::string out;
  std::string format = "csv";
};

struct VerifyOptions {
  std::string cert;
};

int cmd_sweep(const SweepOptions& opt);
int cmd_threshold(const ThresholdOptions& opt);
int cmd_classify(const ClassifyOptions& opt);
int cmd_oracle(const OracleOptions& opt);
int cmd_reduce(const ReduceOptions& opt);
int cmd_verify(const VerifyOptions& opt);

}  // namespace steerkit::cli
