#pragma once

#include <stdexcept>
#include <string>

namespace ral {

enum class ErrorCode {
    InvalidArgument,
    Io,
    Format,
    State,
    Unsupported,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void throw_invalid(std::string message) {
    throw Error(ErrorCode::InvalidArgument, std::move(message));
}

[[noreturn]] inline void throw_io(std::string message) {
    throw Error(ErrorCode::Io, std::move(message));
}

[[noreturn]] inline void throw_format(std::string message) {
    throw Error(ErrorCode::Format, std::move(message));
}

[[noreturn]] inline void throw_state(std::string message) {
    throw Error(ErrorCode::State, std::move(message));
}

} // namespace ral
