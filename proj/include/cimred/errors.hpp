#pragma once

#include <stdexcept>
#include <string>

namespace cimred {

enum class Errc {
    parse_error,
    not_skew_symmetric,
    index_out_of_range,
    non_positive_point,
    not_periodic,
    zero_scale,
    shape_mismatch,
    rank_deficient,
    not_symplectic_change,
    full_rank,
    unknown_family,
    residual_rank,
    internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
    throw Error(code, what);
}

} // namespace cimred
