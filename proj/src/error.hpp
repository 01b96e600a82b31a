#pragma once

#include <stdexcept>
#include <string>

namespace ef {

enum class Errc {
    invalid_argument,
    domain,
    parse,
    integrity,
    exhausted,
    io,
    insufficient_data,
    config,
    no_root,
    unsupported_modulus,
    index_range,
    internal,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace ef
