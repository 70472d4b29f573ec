#ifndef TORIC_RATIONAL_HPP
#define TORIC_RATIONAL_HPP

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace toric {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

using RationalVec = std::vector<Rational>;
using LatticeVec = std::vector<long long>;

inline Rational dot(const RationalVec& a, const RationalVec& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dot: dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rational dot(const LatticeVec& a, const RationalVec& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dot: dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
    return s;
}

inline long long dot(const LatticeVec& a, const LatticeVec& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dot: dimension mismatch");
    long long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline RationalVec to_rational(const LatticeVec& v) {
    RationalVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i];
    return r;
}

inline std::vector<double> to_double(const RationalVec& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].convert_to<double>();
    return r;
}

/// Round a float to an exact dyadic rational with denominator 2^bits.
inline Rational dyadic_round(double x, int bits = 40) {
    const double scale = std::ldexp(1.0, bits);
    const double scaled = x * scale;
    if (!(scaled > -9.3e18 && scaled < 9.3e18))
        throw std::overflow_error("dyadic_round: value out of range");
    const long long num = static_cast<long long>(std::llround(scaled));
    Rational r(num);
    r /= Rational(Integer(1) << bits);
    return r;
}

inline RationalVec dyadic_round(const std::vector<double>& v, int bits = 40) {
    RationalVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = dyadic_round(v[i], bits);
    return r;
}

/// Parse "3", "-7/2", or a decimal string like "3.25" to an exact rational.
Rational parse_rational(const std::string& s);

/// Parse a comma-separated vector of rationals.
RationalVec parse_rational_vec(const std::string& s);

std::string to_string(const Rational& r);
std::string to_string(const RationalVec& v);

}  // namespace toric

#endif
