#pragma once

#include <stdexcept>
#include <string>

namespace tcp {

enum class errc {
    invalid_input,
    invalid_portal,
    invalid_k,
    not_decomposable,
    too_large,
    parse_error,
    io_error,
};

inline const char* errc_name(errc code) {
    switch (code) {
        case errc::invalid_input: return "invalid-input";
        case errc::invalid_portal: return "invalid-portal";
        case errc::invalid_k: return "invalid-k";
        case errc::not_decomposable: return "not-decomposable";
        case errc::too_large: return "too-large";
        case errc::parse_error: return "parse-error";
        case errc::io_error: return "io-error";
    }
    return "unknown";
}

/// Library error. Every failure the library reports on bad input is one of these;
/// anything else escaping a call is an internal fault.
class error : public std::runtime_error {
 public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    [[nodiscard]] errc code() const noexcept { return code_; }

 private:
    errc code_;
};

}  // namespace tcp
