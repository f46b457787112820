#pragma once

#include <stdexcept>
#include <string>

namespace rcf {

// Every failure the library can report maps to one process exit code:
//   1 bad input or out-of-domain argument
//   2 requested computation is outside what this build supports
//   3 a configured resource budget would be exceeded
//   4 a numerical decision could not be certified either way
//   5 an internal invariant failed (always a bug)
class error : public std::runtime_error {
public:
    error(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
    int exit_code() const { return code_; }

private:
    int code_;
};

struct input_error : error {
    explicit input_error(const std::string& what) : error(1, what) {}
};

struct unsupported_error : error {
    explicit unsupported_error(const std::string& what) : error(2, what) {}
};

struct resource_error : error {
    explicit resource_error(const std::string& what) : error(3, what) {}
};

struct undecided_error : error {
    explicit undecided_error(const std::string& what) : error(4, what) {}
};

struct invariant_error : error {
    explicit invariant_error(const std::string& what) : error(5, what) {}
};

inline void check_invariant(bool ok, const std::string& what) {
    if (!ok) throw invariant_error(what);
}

} // namespace rcf
