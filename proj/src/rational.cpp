#include "filiform/rational.hpp"

#include "filiform/error.hpp"

namespace filiform {

namespace {

Integer parse_integer(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw Error(ErrorCode::ParseError, "empty integer");
    Integer z;
    if (z.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0)
        throw Error(ErrorCode::ParseError, "bad integer '" + s + "'");
    return z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    return make_rational(std::string(text.substr(0, slash)), std::string(text.substr(slash + 1)));
}

Rational make_rational(const std::string& num, const std::string& den) {
    Integer n = parse_integer(num), d = parse_integer(den);
    if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Integer factorial(long n) {
    if (n < 0) throw Error(ErrorCode::OutOfRange, "factorial of negative number");
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

Rational binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(r);
}

size_t bit_size(const Rational& q) {
    return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

}  // namespace filiform
