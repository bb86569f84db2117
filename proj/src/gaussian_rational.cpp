#include <levijet/gaussian_rational.hpp>

#include <stdexcept>
#include <string>

namespace levijet
{

mpq_class gaussian_rational::parse_rational(std::string_view text)
{
    const std::string s(text);
    mpq_class out;
    // mpq_set_str accepts leading whitespace and signs; reject those so
    // the grammar stays in charge of them.
    if (s.empty() || s.find_first_not_of("0123456789/") != std::string::npos
        || out.set_str(s, 10) != 0) {
        throw std::invalid_argument("not a rational literal: '" + s + "'");
    }
    if (out.get_den() == 0) {
        throw std::invalid_argument("zero denominator in '" + s + "'");
    }
    out.canonicalize();
    return out;
}

gaussian_rational gaussian_rational::inverse() const
{
    const mpq_class n = norm();
    if (sgn(n) == 0) {
        throw std::domain_error("inverse of zero gaussian rational");
    }
    return {re_ / n, -im_ / n};
}

gaussian_rational &gaussian_rational::operator+=(const gaussian_rational &o)
{
    if (sgn(o.re_) != 0) {
        re_ += o.re_;
    }
    if (sgn(o.im_) != 0) {
        im_ += o.im_;
    }
    return *this;
}

gaussian_rational &gaussian_rational::operator-=(const gaussian_rational &o)
{
    if (sgn(o.re_) != 0) {
        re_ -= o.re_;
    }
    if (sgn(o.im_) != 0) {
        im_ -= o.im_;
    }
    return *this;
}

gaussian_rational operator*(const gaussian_rational &a, const gaussian_rational &b)
{
    gaussian_rational out;
    out.add_product(a, b);
    return out;
}

gaussian_rational &gaussian_rational::operator*=(const gaussian_rational &o)
{
    *this = *this * o;
    return *this;
}

gaussian_rational &gaussian_rational::operator/=(const gaussian_rational &o)
{
    *this = *this * o.inverse();
    return *this;
}

void gaussian_rational::add_product(const gaussian_rational &a, const gaussian_rational &b)
{
    // Most coefficients in practice are purely real or purely imaginary,
    // so skip the vanishing cross terms.
    thread_local mpq_class tmp;
    const bool ar = sgn(a.re_) != 0, ai = sgn(a.im_) != 0;
    const bool br = sgn(b.re_) != 0, bi = sgn(b.im_) != 0;
    if (ar && br) {
        mpq_mul(tmp.get_mpq_t(), a.re_.get_mpq_t(), b.re_.get_mpq_t());
        re_ += tmp;
    }
    if (ai && bi) {
        mpq_mul(tmp.get_mpq_t(), a.im_.get_mpq_t(), b.im_.get_mpq_t());
        re_ -= tmp;
    }
    if (ar && bi) {
        mpq_mul(tmp.get_mpq_t(), a.re_.get_mpq_t(), b.im_.get_mpq_t());
        im_ += tmp;
    }
    if (ai && br) {
        mpq_mul(tmp.get_mpq_t(), a.im_.get_mpq_t(), b.re_.get_mpq_t());
        im_ += tmp;
    }
}

std::string gaussian_rational::to_string() const
{
    const bool has_re = sgn(re_) != 0, has_im = sgn(im_) != 0;
    if (!has_im) {
        return re_.get_str();
    }
    std::string out;
    if (has_re) {
        out = re_.get_str();
        out += sgn(im_) < 0 ? "-" : "+";
    } else if (sgn(im_) < 0) {
        out = "-";
    }
    const mpq_class mag = abs(im_);
    if (mag != 1) {
        out += mag.get_str() + "*";
    }
    out += "i";
    return out;
}

std::ostream &operator<<(std::ostream &os, const gaussian_rational &x)
{
    return os << x.to_string();
}

gaussian_rational pow(const gaussian_rational &base, int exponent)
{
    if (exponent < 0) {
        return pow(base.inverse(), -exponent);
    }
    gaussian_rational result(1), b = base;
    for (unsigned e = static_cast<unsigned>(exponent); e != 0; e >>= 1) {
        if (e & 1U) {
            result *= b;
        }
        if (e > 1) {
            b *= b;
        }
    }
    return result;
}

} // namespace levijet
