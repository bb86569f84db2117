#ifndef LEVIJET_GAUSSIAN_RATIONAL_HPP
#define LEVIJET_GAUSSIAN_RATIONAL_HPP

#include <compare>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace levijet
{

// Exact element of Q(i). Both parts are kept canonical by GMP (lowest
// terms, positive denominator) after every operation.
class gaussian_rational
{
public:
    gaussian_rational() = default;
    gaussian_rational(long re) : re_(re) {}
    gaussian_rational(mpq_class re) : re_(std::move(re))
    {
        re_.canonicalize();
    }
    gaussian_rational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im))
    {
        re_.canonicalize();
        im_.canonicalize();
    }

    static gaussian_rational i()
    {
        return {mpq_class(0), mpq_class(1)};
    }
    // Parses "p" or "p/q" into a real rational; throws std::invalid_argument.
    static mpq_class parse_rational(std::string_view text);

    const mpq_class &re() const
    {
        return re_;
    }
    const mpq_class &im() const
    {
        return im_;
    }

    bool is_zero() const
    {
        return sgn(re_) == 0 && sgn(im_) == 0;
    }
    bool is_real() const
    {
        return sgn(im_) == 0;
    }
    bool is_one() const
    {
        return sgn(im_) == 0 && re_ == 1;
    }

    gaussian_rational conj() const
    {
        return {re_, -im_};
    }
    // |x|^2, always a nonnegative rational.
    mpq_class norm() const
    {
        return re_ * re_ + im_ * im_;
    }
    // Throws std::domain_error on zero.
    gaussian_rational inverse() const;

    gaussian_rational &operator+=(const gaussian_rational &o);
    gaussian_rational &operator-=(const gaussian_rational &o);
    gaussian_rational &operator*=(const gaussian_rational &o);
    gaussian_rational &operator/=(const gaussian_rational &o);

    // this += a * b without materialising the product.
    void add_product(const gaussian_rational &a, const gaussian_rational &b);

    friend gaussian_rational operator+(gaussian_rational a, const gaussian_rational &b)
    {
        return a += b;
    }
    friend gaussian_rational operator-(gaussian_rational a, const gaussian_rational &b)
    {
        return a -= b;
    }
    friend gaussian_rational operator*(const gaussian_rational &a, const gaussian_rational &b);
    friend gaussian_rational operator/(gaussian_rational a, const gaussian_rational &b)
    {
        return a /= b;
    }
    gaussian_rational operator-() const
    {
        return {-re_, -im_};
    }

    friend bool operator==(const gaussian_rational &a, const gaussian_rational &b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    double real_double() const
    {
        return re_.get_d();
    }
    double imag_double() const
    {
        return im_.get_d();
    }

    // "a", "b*i", "a+b*i" with a, b written as p or p/q.
    std::string to_string() const;

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

std::ostream &operator<<(std::ostream &os, const gaussian_rational &x);

// Integer power; negative exponents invert.
gaussian_rational pow(const gaussian_rational &base, int exponent);

} // namespace levijet

#endif
