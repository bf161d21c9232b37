// Copyright 2026 The Newsrec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "newsrec/tensor/grad_check.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "fmt/format.h"
#include "newsrec/errors.h"
#include "newsrec/tensor/rng.h"

namespace newsrec {

GradCheckResult GradCheck(const std::function<Tensor()>& f, ParamStore& store,
                          const GradCheckOptions& options) {
  const Tensor loss = f();
  const double reference = loss.scalar();
  Backward(loss, store);

  {
    NoGradGuard no_grad;
    const double again = f().scalar();
    if (again != reference) {
      throw FlakinessError(fmt::format(
          "grad_check: f is not deterministic ({} vs {})", reference, again));
    }
  }

  GradCheckResult result;
  Rng rng = Rng::Derive(options.seed, "grad_check");
  for (const auto& [name, param] : store) {
    if (!param.requires_grad()) continue;
    Tensor p = param;
    const std::vector<float> analytic(p.grad().begin(), p.grad().end());
    std::vector<std::size_t> coords(p.numel());
    std::iota(coords.begin(), coords.end(), std::size_t{0});
    if (coords.size() > options.max_coords_per_param) {
      rng.Shuffle(std::span<std::size_t>(coords));
      coords.resize(options.max_coords_per_param);
      std::sort(coords.begin(), coords.end());
    }
    double worst = 0.0;
    NoGradGuard no_grad;
    for (const std::size_t i : coords) {
      auto values = p.mutable_values();
      const float original = values[i];
      // f at original + k * eps; `taken` receives the step after rounding to
      // float.
      auto at = [&](double k, double& taken) {
        const float moved = static_cast<float>(original + k * options.eps);
        taken = static_cast<double>(moved) - static_cast<double>(original);
        values[i] = moved;
        const double y = f().scalar();
        values[i] = original;
        return y;
      };
      double h_plus, h_minus;
      const double f_plus = at(1.0, h_plus);
      const double f_minus = at(-1.0, h_minus);
      double numeric = (f_plus - f_minus) / (h_plus - h_minus);
      if (options.five_point) {
        double h2_plus, h2_minus;
        const double f2_plus = at(2.0, h2_plus);
        const double f2_minus = at(-2.0, h2_minus);
        const double wide = (f2_plus - f2_minus) / (h2_plus - h2_minus);
        numeric = (4.0 * numeric - wide) / 3.0;
      }
      const double a = analytic[i];
      const double denom =
          std::max({std::fabs(a), std::fabs(numeric), options.abs_floor});
      const double rel = std::fabs(a - numeric) / denom;
      worst = std::max(worst, rel);
      ++result.coords_checked;
    }
    result.per_param[name] = worst;
    if (worst >= result.max_rel_error) {
      result.max_rel_error = worst;
      result.worst_param = name;
    }
  }
  return result;
}

}  // namespace newsrec
