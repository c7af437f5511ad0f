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
#ifndef SVEIQHR_ERRORS_HPP
#define SVEIQHR_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace sveiqhr
{

enum class ErrorCode {
    ParseError,
    ValidationError,
    StepFailure,
    InvariantViolation,
    EmptyTrajectory,
    DegenerateQuadratic,
    SingularDenominator,
    SingularL1,
    ZeroR0,
    UnknownLevel,
};

inline constexpr std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::ParseError:
        return "ParseError";
    case ErrorCode::ValidationError:
        return "ValidationError";
    case ErrorCode::StepFailure:
        return "StepFailure";
    case ErrorCode::InvariantViolation:
        return "InvariantViolation";
    case ErrorCode::EmptyTrajectory:
        return "EmptyTrajectory";
    case ErrorCode::DegenerateQuadratic:
        return "DegenerateQuadratic";
    case ErrorCode::SingularDenominator:
        return "SingularDenominator";
    case ErrorCode::SingularL1:
        return "SingularL1";
    case ErrorCode::ZeroR0:
        return "ZeroR0";
    case ErrorCode::UnknownLevel:
        return "UnknownLevel";
    }
    return "Unknown";
}

/**
 * Base of every error raised by the library. The code identifies the failure class,
 * which the service maps onto HTTP status codes.
 */
class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message)
        , m_code(code)
    {
    }

    ErrorCode code() const noexcept
    {
        return m_code;
    }

private:
    ErrorCode m_code;
};

/// A value outside its admissible range. Names the field and the violated bound.
class ValidationError : public Error
{
public:
    ValidationError(std::string field, std::string bound, const std::string& message)
        : Error(ErrorCode::ValidationError, message)
        , m_field(std::move(field))
        , m_bound(std::move(bound))
    {
    }

    const std::string& field() const noexcept
    {
        return m_field;
    }
    const std::string& bound() const noexcept
    {
        return m_bound;
    }

private:
    std::string m_field;
    std::string m_bound;
};

/// Malformed configuration text; line and column are 1-based.
class ParseError : public Error
{
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : Error(ErrorCode::ParseError, message)
        , m_line(line)
        , m_column(column)
    {
    }

    std::size_t line() const noexcept
    {
        return m_line;
    }
    std::size_t column() const noexcept
    {
        return m_column;
    }

private:
    std::size_t m_line;
    std::size_t m_column;
};

/// d vanished; carries the root of the linear fallback e*I + f = 0 (NaN if e is zero too).
class DegenerateQuadraticError : public Error
{
public:
    DegenerateQuadraticError(double linear_root, const std::string& message)
        : Error(ErrorCode::DegenerateQuadratic, message)
        , m_linear_root(linear_root)
    {
    }

    double linear_root() const noexcept
    {
        return m_linear_root;
    }

private:
    double m_linear_root;
};

} // namespace sveiqhr

#endif // SVEIQHR_ERRORS_HPP
