/**
 * Scalar types: exact rationals (GMP-backed) for everything defined over Q,
 * double-precision complex numbers for everything defined over C.
 */

#ifndef HODGE_SCALAR_HPP
#define HODGE_SCALAR_HPP

#include <cmath>
#include <complex>
#include <string>
#include <string_view>
#include <boost/multiprecision/gmp.hpp>
#include "error.hpp"

namespace hodge {

// Expression templates are disabled so that `auto` never captures a proxy.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Complex = std::complex<double>;

inline constexpr double kDefaultTol = 1e-9;
inline constexpr double kPi = 3.14159265358979323846;

/**
 * Per-scalar policy used by the templated linear algebra: exact scalars
 * compare against zero exactly, complex ones against a tolerance.
 */
template <typename T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational>
{
    static constexpr bool exact = true;
    static bool is_zero(const Rational& x, double) { return x == 0; }
    static double magnitude(const Rational& x) { return std::abs(x.convert_to<double>()); }
    static Rational conj(const Rational& x) { return x; }
};

template <>
struct ScalarTraits<Complex>
{
    static constexpr bool exact = false;
    static bool is_zero(const Complex& x, double tol) { return std::abs(x) <= tol; }
    static double magnitude(const Complex& x) { return std::abs(x); }
    static Complex conj(const Complex& x) { return std::conj(x); }
};

inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    auto first = s.find_first_not_of(" \t");
    auto last = s.find_last_not_of(" \t");
    if (first == std::string::npos)
        fail(ErrorKind::InvalidInput, "empty rational literal");
    s = s.substr(first, last - first + 1);
    if (!s.empty() && s.front() == '+')
        s.erase(s.begin());
    try
    {
        auto slash = s.find('/');
        if (slash == std::string::npos)
            return Rational(Integer(s));
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0)
            fail(ErrorKind::InvalidInput, "zero denominator in '" + s + "'");
        return Rational(num, den);
    }
    catch (const HodgeError&)
    {
        throw;
    }
    catch (const std::exception&)
    {
        fail(ErrorKind::InvalidInput, "malformed rational literal '" + s + "'");
    }
}

inline std::string to_string(const Rational& x)
{
    return x.str();
}

inline Complex to_complex(const Rational& x)
{
    return Complex(x.convert_to<double>(), 0.0);
}

inline bool is_integer(const Rational& x)
{
    return boost::multiprecision::denominator(x) == 1;
}

/** Principal logarithm with argument in [0, 2*pi). */
inline Complex principal_log(const Complex& z)
{
    double arg = std::atan2(z.imag(), z.real());
    if (arg < 0)
        arg += 2 * kPi;
    if (arg >= 2 * kPi)
        arg -= 2 * kPi;
    return Complex(std::log(std::abs(z)), arg);
}

}   // namespace hodge

#endif
