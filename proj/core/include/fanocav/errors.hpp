#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fanocav {

/// Root of every error thrown by the library.
///
/// Two families matter to callers: configuration errors (bad input, bad
/// names, malformed files) and numerical errors (poles, singular systems,
/// diverging trajectories). The command-line tool maps them to distinct
/// exit codes.
class Error : public std::runtime_error {
public:
    enum class Kind { config, numerical };

    Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

class InvalidParameter : public Error {
public:
    explicit InvalidParameter(const std::string& what) : Error(Kind::config, what) {}
};

class InvalidInput : public Error {
public:
    explicit InvalidInput(const std::string& what) : Error(Kind::config, what) {}
};

class InvalidSpec : public Error {
public:
    explicit InvalidSpec(const std::string& what) : Error(Kind::config, what) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(Kind::config, what) {}
};

class DegenerateResponse : public Error {
public:
    DegenerateResponse(const std::string& what, double delta)
        : Error(Kind::numerical, what), delta_(delta) {}
    [[nodiscard]] double delta() const noexcept { return delta_; }

private:
    double delta_;
};

class PoleError : public Error {
public:
    PoleError(const std::string& what, double delta) : Error(Kind::numerical, what), delta_(delta) {}
    [[nodiscard]] double delta() const noexcept { return delta_; }

private:
    double delta_;
};

class PhaseUndefined : public Error {
public:
    PhaseUndefined(const std::string& what, std::size_t index)
        : Error(Kind::numerical, what), index_(index) {}
    [[nodiscard]] std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

class DivisionByZero : public Error {
public:
    explicit DivisionByZero(const std::string& what) : Error(Kind::numerical, what) {}
};

class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, long long step)
        : Error(Kind::numerical, what), step_(step) {}
    [[nodiscard]] long long step() const noexcept { return step_; }

private:
    long long step_;
};

class InstabilityError : public Error {
public:
    explicit InstabilityError(const std::string& what) : Error(Kind::numerical, what) {}
};

class InvalidWindow : public Error {
public:
    explicit InvalidWindow(const std::string& what) : Error(Kind::numerical, what) {}
};

}  // namespace fanocav
