#include <levijet/error.hpp>

namespace levijet
{

std::string_view errc_name(errc code)
{
    switch (code) {
        case errc::variable_mismatch:
            return "E_VARIABLE_MISMATCH";
        case errc::unknown_variable:
            return "E_UNKNOWN_VARIABLE";
        case errc::division_by_nonunit:
            return "E_DIVISION_BY_NONUNIT";
        case errc::unsound_composition:
            return "E_UNSOUND_COMPOSITION";
        case errc::singular_jacobian:
            return "E_SINGULAR_JACOBIAN";
        case errc::not_normalized:
            return "E_NOT_NORMALIZED";
        case errc::not_real:
            return "E_NOT_REAL";
        case errc::reality_check_failed:
            return "E_REALITY_CHECK_FAILED";
        case errc::point_not_on_surface:
            return "E_POINT_NOT_ON_SURFACE";
        case errc::jet_only_input:
            return "E_JET_ONLY_INPUT";
        case errc::levi_degenerate:
            return "E_LEVI_DEGENERATE";
        case errc::wrong_dimension:
            return "E_WRONG_DIMENSION";
        case errc::order_out_of_range:
            return "E_ORDER_OUT_OF_RANGE";
        case errc::syntax_error:
            return "E_SYNTAX";
        case errc::non_polynomial:
            return "E_NON_POLYNOMIAL";
        case errc::invalid_argument:
            return "E_INVALID_ARGUMENT";
        case errc::empty_grid:
            return "E_EMPTY_GRID";
    }
    return "E_UNKNOWN";
}

} // namespace levijet
