#ifndef LEVIJET_MULTIDEGREE_HPP
#define LEVIJET_MULTIDEGREE_HPP

#include <cassert>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace levijet
{

inline constexpr std::size_t max_variables = 16;
inline constexpr int max_exponent = 255;

// Exponent vector packed into two 64-bit words, one byte per variable.
// Variable 0 sits in the most significant byte of the first word so that
// comparing the words as integers is lexicographic comparison of the
// exponent tuples. Total degree must stay <= 255, which also rules out
// carries between bytes when two degrees are added.
class multidegree
{
public:
    constexpr multidegree() = default;

    static multidegree from_exponents(std::span<const int> exps);
    static multidegree unit(std::size_t var)
    {
        multidegree m;
        m.set(var, 1);
        return m;
    }

    int operator[](std::size_t var) const
    {
        assert(var < max_variables);
        const auto word = var < 8 ? w0_ : w1_;
        return static_cast<int>((word >> shift(var)) & 0xFFU);
    }
    void set(std::size_t var, int e);

    int total_degree() const
    {
        return byte_sum(w0_) + byte_sum(w1_);
    }
    bool is_zero() const
    {
        return w0_ == 0 && w1_ == 0;
    }
    std::vector<int> exponents(std::size_t nvars) const;

    friend multidegree operator+(const multidegree &a, const multidegree &b)
    {
        multidegree m;
        m.w0_ = a.w0_ + b.w0_;
        m.w1_ = a.w1_ + b.w1_;
        return m;
    }

    friend bool operator==(const multidegree &, const multidegree &) = default;

    // Plain lexicographic order on the exponent tuple.
    friend bool lex_less(const multidegree &a, const multidegree &b)
    {
        return a.w0_ != b.w0_ ? a.w0_ < b.w0_ : a.w1_ < b.w1_;
    }
    // Graded lexicographic order: total degree first.
    friend std::strong_ordering operator<=>(const multidegree &a, const multidegree &b)
    {
        if (auto c = a.total_degree() <=> b.total_degree(); c != 0) {
            return c;
        }
        if (auto c = a.w0_ <=> b.w0_; c != 0) {
            return c;
        }
        return a.w1_ <=> b.w1_;
    }

    std::size_t hash() const
    {
        return std::hash<std::uint64_t>{}(w0_ * 0x9E3779B97F4A7C15ULL ^ w1_);
    }

    std::uint64_t word0() const
    {
        return w0_;
    }
    std::uint64_t word1() const
    {
        return w1_;
    }

private:
    static constexpr unsigned shift(std::size_t var)
    {
        return static_cast<unsigned>(8 * (7 - (var % 8)));
    }
    static int byte_sum(std::uint64_t w)
    {
        // Top byte of w * 0x0101..01 holds the sum of all bytes mod 256;
        // exact because total degree is capped at 255.
        return static_cast<int>((w * 0x0101010101010101ULL) >> 56);
    }

    std::uint64_t w0_ = 0;
    std::uint64_t w1_ = 0;
};

struct multidegree_hash {
    std::size_t operator()(const multidegree &m) const
    {
        return m.hash();
    }
};

} // namespace levijet

#endif
