#pragma once

#include <stdexcept>
#include <string>

namespace omsent {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical invariant that should hold by construction was violated.
class IntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid scenario or sweep configuration. Carries the offending key path
/// and the 1-based source line (0 when not tied to a line).
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, std::size_t line, const std::string& what)
        : std::runtime_error(format(key, line, what)),
          key_(std::move(key)),
          line_(line),
          detail_(what) {}

    const std::string& key() const noexcept { return key_; }
    std::size_t line() const noexcept { return line_; }
    /// The message without key and line.
    const std::string& detail() const noexcept { return detail_; }

private:
    static std::string format(const std::string& key, std::size_t line, const std::string& what) {
        std::string out;
        if (line > 0) out += "line " + std::to_string(line) + ": ";
        if (!key.empty()) out += key + ": ";
        return out + what;
    }

    std::string key_;
    std::size_t line_;
    std::string detail_;
};

class IoError : public std::runtime_error {
public:
    IoError(const std::string& path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(path) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace omsent
