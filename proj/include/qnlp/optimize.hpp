// Copyright 2026 The qnlp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Gradient-free optimizers: SPSA, Nelder-Mead, and basin hopping with
// Nelder-Mead as the local stage. All randomness is seeded explicitly and
// every run is bit-reproducible given a deterministic cost function.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "qnlp/rng.hpp"

namespace qnlp {

using CostFunction = std::function<double(const std::vector<double>&)>;

struct TracePoint {
  int iteration = 0;
  double cost = 0.0;
  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct OptimResult {
  std::vector<double> theta;
  double cost = 0.0;
  std::vector<TracePoint> trace;
  long evaluations = 0;
  /// Cost of the accepted point after each hop (basin hopping only);
  /// distinct from `trace`, which records the best-so-far.
  std::vector<double> accepted_costs;
};

struct SpsaOptions {
  double a = 0.1;
  double c = 0.1;
  int iterations = 1000;
  std::uint64_t seed = 0;
};

/// Simultaneous perturbation stochastic approximation with the standard
/// gain schedules a_k = a/(k+1)^0.602 and c_k = c/(k+1)^0.101. Each
/// iteration draws one random +/-1 direction and spends exactly two cost
/// evaluations; the recorded cost is the mean of the two.
inline OptimResult spsa_minimize(const CostFunction& f, std::vector<double> theta,
                                 const SpsaOptions& opt) {
  if (opt.iterations < 1) throw std::invalid_argument("SPSA needs at least one iteration");
  const std::size_t n = theta.size();
  std::mt19937_64 rng(opt.seed);
  OptimResult result;
  std::vector<double> delta(n), plus(n), minus(n);
  for (int k = 0; k < opt.iterations; ++k) {
    const double ak = opt.a / std::pow(k + 1, 0.602);
    const double ck = opt.c / std::pow(k + 1, 0.101);
    for (std::size_t i = 0; i < n; ++i) {
      delta[i] = rademacher(rng);
      plus[i] = theta[i] + ck * delta[i];
      minus[i] = theta[i] - ck * delta[i];
    }
    const double fp = f(plus);
    const double fm = f(minus);
    result.evaluations += 2;
    const double scale = (fp - fm) / (2.0 * ck);
    // delta is +/-1, so elementwise inverse equals delta itself
    for (std::size_t i = 0; i < n; ++i) theta[i] -= ak * scale * delta[i];
    result.trace.push_back({k + 1, 0.5 * (fp + fm)});
  }
  result.theta = std::move(theta);
  result.cost = result.trace.back().cost;
  return result;
}

struct NelderMeadOptions {
  int max_evals = 0;    // 0: 200 * dimension
  double xtol = 1e-6;   // simplex size threshold
};

/// Nelder-Mead simplex descent (reflection 1, expansion 2, contraction 0.5,
/// shrink 0.5), stopping when the simplex diameter drops below xtol or the
/// evaluation budget runs out.
inline OptimResult nelder_mead(const CostFunction& f, const std::vector<double>& theta0,
                               const NelderMeadOptions& opt = {}) {
  const std::size_t n = theta0.size();
  if (n == 0) throw std::invalid_argument("cannot optimize a zero-length parameter vector");
  const long max_evals = opt.max_evals > 0 ? opt.max_evals : static_cast<long>(200 * n);

  OptimResult result;
  auto eval = [&](const std::vector<double>& x) {
    ++result.evaluations;
    return f(x);
  };

  // Initial simplex: theta0 plus a bumped copy per coordinate.
  std::vector<std::vector<double>> xs(n + 1, theta0);
  std::vector<double> fs(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    double& v = xs[i + 1][i];
    v = (v != 0.0) ? v * 1.05 : 0.00025;
  }
  for (std::size_t i = 0; i <= n; ++i) fs[i] = eval(xs[i]);

  std::vector<std::size_t> order(n + 1);
  int iteration = 0;
  while (true) {
    for (std::size_t i = 0; i <= n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });

    double diameter = 0;
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t d = 0; d < n; ++d) {
        diameter = std::max(diameter, std::abs(xs[order[i]][d] - xs[order[0]][d]));
      }
    }
    if (diameter < opt.xtol || result.evaluations >= max_evals) break;

    const std::size_t best = order[0], worst = order[n], second_worst = order[n - 1];
    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t d = 0; d < n; ++d) centroid[d] += xs[order[i]][d];
    }
    for (double& v : centroid) v /= static_cast<double>(n);

    auto blend = [&](double coeff) {
      std::vector<double> x(n);
      for (std::size_t d = 0; d < n; ++d) x[d] = centroid[d] + coeff * (centroid[d] - xs[worst][d]);
      return x;
    };

    const std::vector<double> xr = blend(1.0);
    const double fr = eval(xr);
    bool do_shrink = false;
    if (fr < fs[best]) {
      const std::vector<double> xe = blend(2.0);
      const double fe = eval(xe);
      if (fe < fr) { xs[worst] = xe; fs[worst] = fe; }
      else { xs[worst] = xr; fs[worst] = fr; }
    } else if (fr < fs[second_worst]) {
      xs[worst] = xr; fs[worst] = fr;
    } else if (fr < fs[worst]) {
      const std::vector<double> xc = blend(0.5);  // outside contraction
      const double fc = eval(xc);
      if (fc <= fr) { xs[worst] = xc; fs[worst] = fc; }
      else do_shrink = true;
    } else {
      const std::vector<double> xc = blend(-0.5);  // inside contraction
      const double fc = eval(xc);
      if (fc < fs[worst]) { xs[worst] = xc; fs[worst] = fc; }
      else do_shrink = true;
    }
    if (do_shrink) {
      for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t d = 0; d < n; ++d) {
          xs[order[i]][d] = xs[best][d] + 0.5 * (xs[order[i]][d] - xs[best][d]);
        }
        fs[order[i]] = eval(xs[order[i]]);
      }
    }
    ++iteration;
    const std::size_t arg = static_cast<std::size_t>(
        std::min_element(fs.begin(), fs.end()) - fs.begin());
    result.trace.push_back({iteration, fs[arg]});
  }

  const std::size_t arg = static_cast<std::size_t>(std::min_element(fs.begin(), fs.end()) - fs.begin());
  result.theta = xs[arg];
  result.cost = fs[arg];
  return result;
}

struct BasinhoppingOptions {
  int hops = 100;
  double temperature = 1.0;
  double step_size = 0.5;
  NelderMeadOptions inner;
  std::uint64_t seed = 0;
};

/// Basin hopping: from the current local minimum, jump by a uniform
/// displacement in [-step, step]^n, descend with Nelder-Mead, and accept the
/// hop by the Metropolis rule (always on improvement; with probability
/// exp(-df/T) otherwise, never at T = 0). Returns the best minimum seen.
inline OptimResult basinhopping(const CostFunction& f, const std::vector<double>& theta0,
                                const BasinhoppingOptions& opt) {
  if (opt.hops < 1) throw std::invalid_argument("basinhopping needs at least one hop");
  std::mt19937_64 rng(opt.seed);
  OptimResult result;

  OptimResult current = nelder_mead(f, theta0, opt.inner);
  result.evaluations += current.evaluations;
  std::vector<double> best_x = current.theta;
  double best_f = current.cost;
  result.trace.push_back({0, best_f});
  result.accepted_costs.push_back(current.cost);

  const std::size_t n = theta0.size();
  for (int hop = 1; hop <= opt.hops; ++hop) {
    std::vector<double> candidate(n);
    for (std::size_t i = 0; i < n; ++i) {
      candidate[i] = current.theta[i] + uniform_double(rng, -opt.step_size, opt.step_size);
    }
    OptimResult local = nelder_mead(f, candidate, opt.inner);
    result.evaluations += local.evaluations;

    if (local.cost < best_f) {
      best_f = local.cost;
      best_x = local.theta;
    }
    const double df = local.cost - current.cost;
    bool accept = df <= 0.0;
    if (!accept && opt.temperature > 0.0) {
      accept = uniform_double(rng) < std::exp(-df / opt.temperature);
    }
    if (accept) current = std::move(local);
    result.trace.push_back({hop, best_f});
    result.accepted_costs.push_back(current.cost);
  }
  result.theta = std::move(best_x);
  result.cost = best_f;
  return result;
}

}  // namespace qnlp
