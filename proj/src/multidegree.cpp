#include <levijet/multidegree.hpp>

#include <string>

#include <levijet/error.hpp>

namespace levijet
{

void multidegree::set(std::size_t var, int e)
{
    if (var >= max_variables) {
        throw error(errc::invalid_argument, "variable index " + std::to_string(var) + " exceeds the supported maximum");
    }
    if (e < 0 || e > max_exponent) {
        throw error(errc::order_out_of_range, "exponent " + std::to_string(e) + " outside [0, 255]");
    }
    auto &word = var < 8 ? w0_ : w1_;
    const auto s = shift(var);
    word = (word & ~(std::uint64_t{0xFF} << s)) | (static_cast<std::uint64_t>(e) << s);
    int total = 0;
    for (std::size_t v = 0; v < max_variables; ++v) {
        total += (*this)[v];
    }
    if (total > max_exponent) {
        throw error(errc::order_out_of_range, "total degree exceeds 255");
    }
}

multidegree multidegree::from_exponents(std::span<const int> exps)
{
    if (exps.size() > max_variables) {
        throw error(errc::invalid_argument, "too many exponents");
    }
    multidegree m;
    for (std::size_t v = 0; v < exps.size(); ++v) {
        if (exps[v] != 0) {
            m.set(v, exps[v]);
        }
    }
    return m;
}

std::vector<int> multidegree::exponents(std::size_t nvars) const
{
    std::vector<int> out(nvars);
    for (std::size_t v = 0; v < nvars; ++v) {
        out[v] = (*this)[v];
    }
    return out;
}

} // namespace levijet
