#include "toric/rational.hpp"

#include <cctype>
#include <sstream>

namespace toric {

Rational parse_rational(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw std::invalid_argument("parse_rational: empty string");

    auto slash = t.find('/');
    if (slash != std::string::npos) {
        Integer num(t.substr(0, slash));
        Integer den(t.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
        return Rational(num) / Rational(den);
    }

    auto point = t.find('.');
    if (point == std::string::npos) return Rational(Integer(t));

    bool neg = false;
    std::string digits = t;
    if (!digits.empty() && (digits[0] == '+' || digits[0] == '-')) {
        neg = digits[0] == '-';
        digits = digits.substr(1);
        point -= 1;
    }
    std::string intpart = digits.substr(0, point);
    std::string fracpart = digits.substr(point + 1);
    if (intpart.empty()) intpart = "0";
    for (char c : intpart + fracpart)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw std::invalid_argument("parse_rational: bad character in '" + s + "'");
    Integer num(intpart + fracpart);
    Integer den = 1;
    for (std::size_t i = 0; i < fracpart.size(); ++i) den *= 10;
    Rational r = Rational(num) / Rational(den);
    return neg ? -r : r;
}

RationalVec parse_rational_vec(const std::string& s) {
    RationalVec out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
    if (out.empty()) throw std::invalid_argument("parse_rational_vec: empty vector");
    return out;
}

std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

std::string to_string(const RationalVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += to_string(v[i]);
    }
    return s + ")";
}

}  // namespace toric
