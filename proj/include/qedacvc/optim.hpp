#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace qedacvc {

struct OptimState {
  std::vector<double> first_moment;
  std::vector<double> second_moment;
  int64_t step_count = 0;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  static OptimState make(size_t n_params, double lr);
};

// Adam update with bias correction, in place. Non-finite gradient entries
// abort with the offending index.
void adam_step(std::span<double> params, std::span<const double> grads, OptimState& opt);

}  // namespace qedacvc
