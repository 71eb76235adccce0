#pragma once

#include <stdexcept>
#include <string>

namespace abm {

// Base class for all library errors. `kind()` is stable and machine-readable;
// it is what reports and the CLI exit-code mapping key on.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define ABM_DEFINE_ERROR(Name)                                        \
    class Name : public Error {                                      \
    public:                                                          \
        explicit Name(const std::string& msg) : Error(#Name, msg) {} \
    }

ABM_DEFINE_ERROR(DivisionByZeroJet);
ABM_DEFINE_ERROR(DomainError);
ABM_DEFINE_ERROR(OutOfDomain);
ABM_DEFINE_ERROR(Degenerate);
ABM_DEFINE_ERROR(SingularMetric);
ABM_DEFINE_ERROR(ZeroBeta);
ABM_DEFINE_ERROR(OutOfCone);
ABM_DEFINE_ERROR(IllConditioned);
ABM_DEFINE_ERROR(QuadratureFailure);
ABM_DEFINE_ERROR(InsufficientSamples);
ABM_DEFINE_ERROR(RankDeficient);
ABM_DEFINE_ERROR(DegenerateAngular);
ABM_DEFINE_ERROR(NotPolynomial);
ABM_DEFINE_ERROR(PreconditionNotMet);

#undef ABM_DEFINE_ERROR

// Config-layer diagnostics carry a location.
class ParseError : public Error {
public:
    ParseError(int line, const std::string& msg)
        : Error("ParseError", "line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& msg)
        : Error("ValidationError", field + ": " + msg), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace abm
