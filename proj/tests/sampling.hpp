/*
* Copyright (C) 2026 The sveiqhr authors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*/
#ifndef SVEIQHR_TESTS_SAMPLING_HPP
#define SVEIQHR_TESTS_SAMPLING_HPP

#include "sveiqhr/equilibrium.hpp"
#include "sveiqhr/parameters.hpp"

#include <cmath>
#include <random>

namespace sampling
{

/**
 * Random valid parameter set: rates scaled log-uniformly within a factor of five of the
 * table values, fractions uniform on [0,1). The transmission scale is wide enough that
 * both sides of R0 = 1 are well represented.
 */
inline sveiqhr::ParameterValues random_parameters(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> log_scale(std::log(0.2), std::log(5.0));
    auto v = sveiqhr::table1_values(0.5);
    for (auto p : sveiqhr::all_parameters) {
        v[p] = sveiqhr::is_unit_interval(p) ? unit(rng) : v[p] * std::exp(log_scale(rng));
    }
    return v;
}

/// Random state inside the invariant region: non-negative with N at most (lambda + lambda') / mu.
inline sveiqhr::State random_state(std::mt19937_64& rng, const sveiqhr::ModelParameters& p)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double cap = (p.lambda() + p.lambda_prime()) / p.mu();
    sveiqhr::Vector7 x;
    for (auto& c : x) {
        c = unit(rng);
    }
    x *= unit(rng) * cap / x.sum();
    return sveiqhr::State::from_vector(x);
}

} // namespace sampling

#endif // SVEIQHR_TESTS_SAMPLING_HPP
