#include "qlat/exact.hpp"

#include <boost/multiprecision/number.hpp>

namespace qlat {

BigInt ipow(const BigInt& base, unsigned exp) {
    return boost::multiprecision::pow(base, exp);
}

BigInt ipow(long long base, unsigned exp) {
    return boost::multiprecision::pow(BigInt(base), exp);
}

std::string to_string(const BigInt& v) { return v.str(); }

std::string to_string(const Real& x, int digits) { return x.str(digits, std::ios_base::scientific); }

std::string to_string(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

BigInt floor(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    BigInt quot = num / den; // truncates toward zero
    if (num < 0 && quot * den != num) quot -= 1;
    return quot;
}

Rational to_rational(const Real& x) {
    if (x == 0) return Rational(0);
    int exponent = 0;
    Real mant = boost::multiprecision::frexp(x, &exponent);
    // mant in [0.5, 1); scale to an integer with all mantissa bits.
    mant = boost::multiprecision::ldexp(mant, kRealPrecisionBits + 8);
    BigInt scaled = mant.convert_to<BigInt>();
    const int shift = exponent - (kRealPrecisionBits + 8);
    Rational out(scaled);
    if (shift >= 0) {
        out *= Rational(ipow(2, static_cast<unsigned>(shift)));
    } else {
        out /= Rational(ipow(2, static_cast<unsigned>(-shift)));
    }
    return out;
}

Real to_real(const Rational& r) {
    return Real(boost::multiprecision::numerator(r)) / Real(boost::multiprecision::denominator(r));
}

Rational upper_guard(const Real& x) {
    const Real eps = boost::multiprecision::ldexp(Real(1), -120);
    return to_rational(x + boost::multiprecision::abs(x) * eps + eps);
}

Rational lower_guard(const Real& x) {
    const Real eps = boost::multiprecision::ldexp(Real(1), -120);
    return to_rational(x - boost::multiprecision::abs(x) * eps - eps);
}

} // namespace qlat
