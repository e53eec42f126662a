#pragma once

#include <stdexcept>
#include <string>

namespace causal {

// Base of all library errors. `name()` is the stable identifier printed by
// the CLI diagnostic stream; messages may change, names may not.
class CausalError : public std::runtime_error {
public:
    CausalError(std::string name, const std::string& message)
        : std::runtime_error(name + ": " + message), name_(std::move(name)) {}

    const std::string& name() const { return name_; }

private:
    std::string name_;
};

class ParseError : public CausalError {
public:
    explicit ParseError(const std::string& message) : CausalError("ParseError", message) {}
};

class IoError : public CausalError {
public:
    explicit IoError(const std::string& message) : CausalError("IoError", message) {}
};

class SchemaMismatch : public CausalError {
public:
    explicit SchemaMismatch(const std::string& message) : CausalError("SchemaMismatch", message) {}
};

class InvalidArgument : public CausalError {
public:
    explicit InvalidArgument(const std::string& message) : CausalError("InvalidArgument", message) {}
};

// Tier constraints leave no admissible edge (e.g. every label in one tier).
class DegenerateSchema : public CausalError {
public:
    explicit DegenerateSchema(const std::string& message) : CausalError("DegenerateSchema", message) {}
};

class NotFullyOriented : public CausalError {
public:
    explicit NotFullyOriented(const std::string& message) : CausalError("NotFullyOriented", message) {}
};

class CycleIntroduced : public CausalError {
public:
    explicit CycleIntroduced(const std::string& message) : CausalError("CycleIntroduced", message) {}
};

class InfeasibleSpec : public CausalError {
public:
    explicit InfeasibleSpec(const std::string& message) : CausalError("InfeasibleSpec", message) {}
};

}  // namespace causal
