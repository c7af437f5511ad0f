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
#ifndef SVEIQHR_PARAMETERS_HPP
#define SVEIQHR_PARAMETERS_HPP

#include "sveiqhr/errors.hpp"

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace sveiqhr
{

/**
 * The seventeen model parameters, in the declaration order of the parameter table.
 * The order is significant: it is the tie-break order of the significance ranking.
 */
enum class Parameter : std::size_t {
    Lambda,
    LambdaPrime,
    Mu,
    MuPrime,
    Beta,
    Delta,
    Alpha,
    Theta,
    Gamma,
    Phi,
    Kappa,
    Tau,
    U1,
    U2,
    U3,
    U4,
    U5,
};

inline constexpr std::size_t num_parameters = 17;

inline constexpr std::array<Parameter, num_parameters> all_parameters = {
    Parameter::Lambda, Parameter::LambdaPrime, Parameter::Mu,    Parameter::MuPrime, Parameter::Beta,
    Parameter::Delta,  Parameter::Alpha,       Parameter::Theta, Parameter::Gamma,   Parameter::Phi,
    Parameter::Kappa,  Parameter::Tau,         Parameter::U1,    Parameter::U2,      Parameter::U3,
    Parameter::U4,     Parameter::U5};

inline constexpr std::array<std::string_view, num_parameters> parameter_names = {
    "lambda", "lambda_prime", "mu", "mu_prime", "beta", "delta", "alpha", "theta", "gamma",
    "phi",    "kappa",        "tau", "u1",      "u2",   "u3",    "u4",    "u5"};

inline constexpr std::string_view name_of(Parameter p)
{
    return parameter_names[static_cast<std::size_t>(p)];
}

inline std::optional<Parameter> parameter_from_name(std::string_view name)
{
    for (std::size_t i = 0; i < num_parameters; ++i) {
        if (parameter_names[i] == name) {
            return all_parameters[i];
        }
    }
    return std::nullopt;
}

/// Parameters bounded to [0,1]; all others must be strictly positive.
inline constexpr bool is_unit_interval(Parameter p)
{
    switch (p) {
    case Parameter::Delta:
    case Parameter::U1:
    case Parameter::U2:
    case Parameter::U3:
    case Parameter::U4:
    case Parameter::U5:
        return true;
    default:
        return false;
    }
}

/// Interventions u1..u5.
inline constexpr bool is_intervention(Parameter p)
{
    return p == Parameter::U1 || p == Parameter::U2 || p == Parameter::U3 || p == Parameter::U4 ||
           p == Parameter::U5;
}

/**
 * Raw, unvalidated parameter values. Rates are per day, recruitment in individuals per day,
 * beta per individual and day. Use ModelParameters for anything that feeds the model.
 */
struct ParameterValues {
    double lambda       = 0.0;
    double lambda_prime = 0.0;
    double mu           = 0.0;
    double mu_prime     = 0.0;
    double beta         = 0.0;
    double delta        = 0.0;
    double alpha        = 0.0;
    double theta        = 0.0;
    double gamma        = 0.0;
    double phi          = 0.0;
    double kappa        = 0.0;
    double tau          = 0.0;
    double u1           = 0.0;
    double u2           = 0.0;
    double u3           = 0.0;
    double u4           = 0.0;
    double u5           = 0.0;

    double& operator[](Parameter p)
    {
        return *slot(*this, p);
    }
    double operator[](Parameter p) const
    {
        return *slot(*this, p);
    }

    bool operator==(const ParameterValues&) const = default;

private:
    template <class Self>
    static auto slot(Self& self, Parameter p) -> decltype(&self.lambda)
    {
        switch (p) {
        case Parameter::Lambda:
            return &self.lambda;
        case Parameter::LambdaPrime:
            return &self.lambda_prime;
        case Parameter::Mu:
            return &self.mu;
        case Parameter::MuPrime:
            return &self.mu_prime;
        case Parameter::Beta:
            return &self.beta;
        case Parameter::Delta:
            return &self.delta;
        case Parameter::Alpha:
            return &self.alpha;
        case Parameter::Theta:
            return &self.theta;
        case Parameter::Gamma:
            return &self.gamma;
        case Parameter::Phi:
            return &self.phi;
        case Parameter::Kappa:
            return &self.kappa;
        case Parameter::Tau:
            return &self.tau;
        case Parameter::U1:
            return &self.u1;
        case Parameter::U2:
            return &self.u2;
        case Parameter::U3:
            return &self.u3;
        case Parameter::U4:
            return &self.u4;
        case Parameter::U5:
            return &self.u5;
        }
        return &self.lambda;
    }
};

/// Throws ValidationError naming the first offending field.
inline void validate(const ParameterValues& values)
{
    for (auto p : all_parameters) {
        const double x = values[p];
        const std::string name(name_of(p));
        if (!std::isfinite(x)) {
            throw ValidationError(name, "finite", name + " must be finite");
        }
        if (is_unit_interval(p)) {
            if (x < 0.0 || x > 1.0) {
                throw ValidationError(name, "[0,1]", name + " = " + std::to_string(x) + " is outside [0,1]");
            }
        }
        else if (!(x > 0.0)) {
            throw ValidationError(name, "(0,inf)", name + " = " + std::to_string(x) + " must be strictly positive");
        }
    }
}

/**
 * Validated, immutable parameter set. Construction rejects out-of-range values
 * instead of clamping them.
 */
class ModelParameters
{
public:
    explicit ModelParameters(const ParameterValues& values)
        : m_values(values)
    {
        validate(m_values);
    }

    const ParameterValues& values() const noexcept
    {
        return m_values;
    }

    double operator[](Parameter p) const
    {
        return m_values[p];
    }

    /// Copy with one parameter replaced (validated).
    ModelParameters with(Parameter p, double value) const
    {
        ParameterValues v = m_values;
        v[p]              = value;
        return ModelParameters(v);
    }

    double lambda() const noexcept { return m_values.lambda; }
    double lambda_prime() const noexcept { return m_values.lambda_prime; }
    double mu() const noexcept { return m_values.mu; }
    double mu_prime() const noexcept { return m_values.mu_prime; }
    double beta() const noexcept { return m_values.beta; }
    double delta() const noexcept { return m_values.delta; }
    double alpha() const noexcept { return m_values.alpha; }
    double theta() const noexcept { return m_values.theta; }
    double gamma() const noexcept { return m_values.gamma; }
    double phi() const noexcept { return m_values.phi; }
    double kappa() const noexcept { return m_values.kappa; }
    double tau() const noexcept { return m_values.tau; }
    double u1() const noexcept { return m_values.u1; }
    double u2() const noexcept { return m_values.u2; }
    double u3() const noexcept { return m_values.u3; }
    double u4() const noexcept { return m_values.u4; }
    double u5() const noexcept { return m_values.u5; }

    bool operator==(const ModelParameters&) const = default;

private:
    ParameterValues m_values;
};

namespace table1
{
/// Initial total population used to estimate the newborn recruitment rate.
inline constexpr double initial_population = 273523621.0;
/// Natural death rate: one over a 65-year life expectancy in days.
inline constexpr double mu           = 1.0 / (65.0 * 365.0);
inline constexpr double lambda       = mu * initial_population;
inline constexpr double lambda_prime = 3000.0;
inline constexpr double mu_prime     = 0.0291;
inline constexpr double beta         = 4.74396e-8;
inline constexpr double alpha        = 0.011;
inline constexpr double theta        = 0.4;
inline constexpr double gamma        = 0.1;
inline constexpr double phi          = 0.8198;
inline constexpr double kappa        = 0.1;
inline constexpr double tau          = 0.01;
inline constexpr double u1           = 0.4;
inline constexpr double u3           = 0.5;
inline constexpr double u4           = 0.3;
inline constexpr double u5           = 0.0833;
/// Not part of the table; the level-1 social-restriction value used with it throughout.
inline constexpr double u2_fallback = 0.278;
} // namespace table1

/// Table values for every parameter that has one; delta and u2 are supplied by the caller.
inline ParameterValues table1_values(double delta, double u2 = table1::u2_fallback)
{
    ParameterValues v;
    v.lambda       = table1::lambda;
    v.lambda_prime = table1::lambda_prime;
    v.mu           = table1::mu;
    v.mu_prime     = table1::mu_prime;
    v.beta         = table1::beta;
    v.delta        = delta;
    v.alpha        = table1::alpha;
    v.theta        = table1::theta;
    v.gamma        = table1::gamma;
    v.phi          = table1::phi;
    v.kappa        = table1::kappa;
    v.tau          = table1::tau;
    v.u1           = table1::u1;
    v.u2           = u2;
    v.u3           = table1::u3;
    v.u4           = table1::u4;
    v.u5           = table1::u5;
    return v;
}

inline ModelParameters table1_parameters(double delta, double u2 = table1::u2_fallback)
{
    return ModelParameters(table1_values(delta, u2));
}

/// The two reference sets of the sensitivity study (delta = 0.653).
inline ModelParameters disease_free_reference()
{
    return table1_parameters(0.653).with(Parameter::U1, 1e-8).with(Parameter::U2, 0.93);
}

inline ModelParameters endemic_reference()
{
    return table1_parameters(0.653).with(Parameter::U1, 0.4).with(Parameter::U2, 0.278);
}

enum class Compartment : std::size_t { S, V, E, I, Q, H, R };

inline constexpr std::size_t num_compartments = 7;

inline constexpr std::array<std::string_view, num_compartments> compartment_names = {"S", "V", "E", "I",
                                                                                    "Q", "H", "R"};

using Vector7 = Eigen::Matrix<double, 7, 1>;
using Matrix7 = Eigen::Matrix<double, 7, 7>;

/// Compartment populations (individuals, real-valued).
struct State {
    double S = 0.0;
    double V = 0.0;
    double E = 0.0;
    double I = 0.0;
    double Q = 0.0;
    double H = 0.0;
    double R = 0.0;

    double total() const noexcept
    {
        return S + V + E + I + Q + H + R;
    }

    /// E + I + Q + H.
    double non_healthy() const noexcept
    {
        return E + I + Q + H;
    }

    Vector7 to_vector() const
    {
        Vector7 x;
        x << S, V, E, I, Q, H, R;
        return x;
    }

    static State from_vector(const Vector7& x)
    {
        return State{x[0], x[1], x[2], x[3], x[4], x[5], x[6]};
    }

    bool operator==(const State&) const = default;
};

/// Throws ValidationError if a component is negative or not finite.
inline void validate(const State& s)
{
    const Vector7 x = s.to_vector();
    for (std::size_t i = 0; i < num_compartments; ++i) {
        const std::string name(compartment_names[i]);
        if (!std::isfinite(x[i]) || x[i] < 0.0) {
            throw ValidationError(name, "[0,inf)", "compartment " + name + " must be finite and non-negative");
        }
    }
}

} // namespace sveiqhr

#endif // SVEIQHR_PARAMETERS_HPP
