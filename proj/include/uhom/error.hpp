#ifndef UHOM_ERROR_HPP
#define UHOM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace uhom {

enum class ErrorKind {
    Input,         // malformed or out-of-range argument
    Resource,      // size cap exceeded
    Unsupported,   // operation not defined for this presentation
    Precondition,  // caller violated a stated precondition
    Verdict,       // a queried verdict came out negative
    Internal,      // invariant broken inside the library
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string msg)
        : std::runtime_error(std::move(msg)), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_input(const std::string& msg) { throw Error(ErrorKind::Input, msg); }
[[noreturn]] inline void throw_resource(const std::string& msg) { throw Error(ErrorKind::Resource, msg); }
[[noreturn]] inline void throw_unsupported(const std::string& msg) { throw Error(ErrorKind::Unsupported, msg); }
[[noreturn]] inline void throw_precondition(const std::string& msg) { throw Error(ErrorKind::Precondition, msg); }
[[noreturn]] inline void throw_internal(const std::string& msg) { throw Error(ErrorKind::Internal, msg); }

} // namespace uhom

#endif
