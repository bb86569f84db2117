#ifndef LEVIJET_ERROR_HPP
#define LEVIJET_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace levijet
{

// Stable codes; their spelling is part of the CLI/JSON contract.
enum class errc {
    variable_mismatch,
    unknown_variable,
    division_by_nonunit,
    unsound_composition,
    singular_jacobian,
    not_normalized,
    not_real,
    reality_check_failed,
    point_not_on_surface,
    jet_only_input,
    levi_degenerate,
    wrong_dimension,
    order_out_of_range,
    syntax_error,
    non_polynomial,
    invalid_argument,
    empty_grid,
};

std::string_view errc_name(errc code);

class error : public std::runtime_error
{
public:
    error(errc code, const std::string &what) : std::runtime_error(what), code_(code) {}

    errc code() const
    {
        return code_;
    }

private:
    errc code_;
};

// Parse failures carry the byte offset of the offending token.
class parse_error : public error
{
public:
    parse_error(errc code, const std::string &what, std::size_t position)
        : error(code, what + " at position " + std::to_string(position)), position_(position)
    {
    }

    std::size_t position() const
    {
        return position_;
    }

private:
    std::size_t position_;
};

} // namespace levijet

#endif
