#include "qedacvc/optim.hpp"

#include <cmath>
#include <string>

#include "qedacvc/error.hpp"

namespace qedacvc {

OptimState OptimState::make(size_t n_params, double lr) {
  OptimState s;
  if (!(lr > 0)) raise(errc::config, "learning rate must be positive");
  s.first_moment.assign(n_params, 0.0);
  s.second_moment.assign(n_params, 0.0);
  s.learning_rate = lr;
  return s;
}

void adam_step(std::span<double> params, std::span<const double> grads, OptimState& opt) {
  if (params.size() != grads.size() || params.size() != opt.first_moment.size()) {
    raise(errc::shape, "adam_step: parameter/gradient/moment sizes disagree");
  }
  for (size_t i = 0; i < grads.size(); ++i) {
    if (!std::isfinite(grads[i])) {
      raise(errc::numeric, "non-finite gradient at parameter " + std::to_string(i));
    }
  }
  opt.step_count += 1;
  const double bc1 = 1.0 - std::pow(opt.beta1, static_cast<double>(opt.step_count));
  const double bc2 = 1.0 - std::pow(opt.beta2, static_cast<double>(opt.step_count));
  for (size_t i = 0; i < params.size(); ++i) {
    double& m = opt.first_moment[i];
    double& v = opt.second_moment[i];
    m = opt.beta1 * m + (1.0 - opt.beta1) * grads[i];
    v = opt.beta2 * v + (1.0 - opt.beta2) * grads[i] * grads[i];
    const double mhat = m / bc1;
    const double vhat = v / bc2;
    params[i] -= opt.learning_rate * mhat / (std::sqrt(vhat) + opt.epsilon);
  }
}

}  // namespace qedacvc
