#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

namespace relce {

/// Base for every error caused by bad input rather than by the mathematics.
/// `kind()` is the machine-readable tag emitted by the CLI error object.
class InputError : public std::runtime_error {
public:
    InputError(std::string kind, const std::string& message,
               nlohmann::ordered_json details = nlohmann::ordered_json::object())
        : std::runtime_error(message), kind_(std::move(kind)), details_(std::move(details)) {}

    const std::string& kind() const noexcept { return kind_; }
    const nlohmann::ordered_json& details() const noexcept { return details_; }

private:
    std::string kind_;
    nlohmann::ordered_json details_;
};

class InputTooLarge : public InputError {
public:
    explicit InputTooLarge(const std::string& message)
        : InputError("input-too-large", message) {}
};

class BudgetExceeded : public InputError {
public:
    BudgetExceeded(const std::string& message, nlohmann::ordered_json details)
        : InputError("budget-exceeded", message, std::move(details)) {}
};

class SchemaError : public InputError {
public:
    explicit SchemaError(const std::string& message,
                         nlohmann::ordered_json details = nlohmann::ordered_json::object())
        : InputError("schema", message, std::move(details)) {}
};

class PreconditionViolated : public InputError {
public:
    PreconditionViolated(const std::string& message, nlohmann::ordered_json details)
        : InputError("precondition-violated", message, std::move(details)) {}
};

}  // namespace relce
