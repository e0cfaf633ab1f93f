#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rsv {

// Base class for all library errors.  The CLI maps subclasses onto exit
// codes, so new error kinds should derive from one of the classes below.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed textual input: DIMACS files, logic expressions, JSON records.
class parse_error : public error {
public:
    parse_error(const std::string& msg, long line = -1)
        : error(line >= 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

// Invalid task configuration; `key_path` locates the offending setting.
class config_error : public error {
public:
    explicit config_error(const std::string& msg, const std::string& key_path = "")
        : error(key_path.empty() ? msg : key_path + ": " + msg), key_path_(key_path) {}
    const std::string& key_path() const { return key_path_; }

private:
    std::string key_path_;
};

// An enumeration or encoding exceeds its configured size bound.
class capacity_error : public error {
public:
    explicit capacity_error(const std::string& msg) : error(msg) {}
};

// Semantic misuse of an operation (partial assignment, bad mode, ...).
class eval_error : public error {
public:
    explicit eval_error(const std::string& msg) : error(msg) {}
};

class io_error : public error {
public:
    explicit io_error(const std::string& msg) : error(msg) {}
};

// Raised by the model counter when the decision budget runs out.  Carries
// the partial statistics gathered so far.
class budget_error : public error {
public:
    budget_error(const std::string& msg, std::uint64_t decisions, std::uint64_t propagations)
        : error(msg), decisions_(decisions), propagations_(propagations) {}
    std::uint64_t decisions() const { return decisions_; }
    std::uint64_t propagations() const { return propagations_; }

private:
    std::uint64_t decisions_;
    std::uint64_t propagations_;
};

}  // namespace rsv
