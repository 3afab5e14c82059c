#include "qlat/counting.hpp"

#include "qlat/errors.hpp"

#include <string>

namespace qlat {

namespace {

BigInt factorial(int n) {
    BigInt out = 1;
    for (int i = 2; i <= n; ++i) out *= i;
    return out;
}

BigInt exact_div(const BigInt& num, const BigInt& den, const char* what) {
    BigInt quot;
    BigInt rem;
    boost::multiprecision::divide_qr(num, den, quot, rem);
    if (rem != 0) throw DomainError(std::string("non-integral ") + what);
    return quot;
}

} // namespace

BigInt binom(int n, int k) {
    if (n < 0 || k < 0 || k > n) {
        throw DomainError("binom(" + std::to_string(n) + ", " + std::to_string(k) + ") out of range");
    }
    BigInt out = 1;
    for (int i = 1; i <= k; ++i) {
        out *= n - k + i;
        out /= i;
    }
    return out;
}

BigInt gauss_binom(int n, int k, int q) {
    if (q < 2) throw DomainError("gauss_binom requires q >= 2");
    if (n < 0 || k < 0 || k > n) {
        throw DomainError("gauss_binom(" + std::to_string(n) + ", " + std::to_string(k) + ") out of range");
    }
    BigInt num = 1;
    BigInt den = 1;
    for (int i = 0; i < k; ++i) {
        num *= ipow(q, static_cast<unsigned>(n - i)) - 1;
        den *= ipow(q, static_cast<unsigned>(k - i)) - 1;
    }
    return exact_div(num, den, "Gaussian binomial");
}

BigInt alpha(int q, int n) {
    if (q < 2 || n < 1) throw DomainError("alpha requires q >= 2 and n >= 1");
    const BigInt qn = ipow(q, static_cast<unsigned>(n));
    BigInt ordered = 1;
    for (int i = 0; i < n; ++i) ordered *= qn - ipow(q, static_cast<unsigned>(i));
    return exact_div(ordered, factorial(n), "basis count");
}

BigInt covering_multiplicity(int q, int n, int i) {
    if (q < 2 || n < 1) throw DomainError("covering_multiplicity requires q >= 2 and n >= 1");
    if (i < 0 || i > n) throw DomainError("covering_multiplicity level out of range");
    const BigInt qi = ipow(q, static_cast<unsigned>(i));
    const BigInt qn = ipow(q, static_cast<unsigned>(n));
    BigInt num = 1;
    // Ordered bases of the subspace, then ordered extensions to the whole space.
    for (int j = 0; j < i; ++j) num *= qi - ipow(q, static_cast<unsigned>(j));
    for (int j = i; j < n; ++j) num *= qn - ipow(q, static_cast<unsigned>(j));
    return exact_div(num, factorial(i) * factorial(n - i), "covering multiplicity");
}

BigInt sigma_sets(int n, int k) {
    if (n < 0 || k < 1 || k > n + 1) throw DomainError("sigma_sets requires 1 <= k <= n+1");
    const int base = floor_div(n - k, 2);
    BigInt out = 0;
    for (int i = 1; i <= k; ++i) out += binom(n, base + i);
    return out;
}

BigInt sigma_spaces(int n, int k, int q) {
    if (n < 0 || k < 1 || k > n + 1) throw DomainError("sigma_spaces requires 1 <= k <= n+1");
    const int base = floor_div(n - k, 2);
    BigInt out = 0;
    for (int i = 1; i <= k; ++i) out += gauss_binom(n, base + i, q);
    return out;
}

} // namespace qlat
