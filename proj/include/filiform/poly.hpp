#pragma once

#include "filiform/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace filiform {

// Dense univariate polynomial over Q, coefficients low to high, no trailing zeros.
class UPoly {
public:
    UPoly() = default;
    UPoly(Rational c);  // NOLINT: constants convert implicitly
    explicit UPoly(std::vector<Rational> coeffs);
    static UPoly x();

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }
    Rational operator()(const Rational& t) const;

    UPoly derivative() const;
    UPoly monic() const;

    friend UPoly operator+(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    UPoly operator-() const;
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    // a = q b + r
    static void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
    static UPoly gcd(UPoly a, UPoly b);

    std::string str(const std::string& var = "s") const;

private:
    void trim();
    std::vector<Rational> c_;
};

struct RootReport {
    std::vector<Rational> rational;  // increasing, distinct
    int irrational_real = 0;         // distinct real roots that are not rational
};

// Exact rational roots via Sturm isolation; a root p/q of the primitive integer
// form has q | lead, so an isolating interval narrower than 1/lead pins it down.
RootReport rational_roots(const UPoly& p);

// Reduced fraction num/den, den monic.
class RatFunc {
public:
    RatFunc() : num_(), den_(Rational(1)) {}
    RatFunc(Rational c) : num_(c), den_(Rational(1)) {}  // NOLINT
    RatFunc(UPoly num, UPoly den);
    static RatFunc param();

    const UPoly& num() const { return num_; }
    const UPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant() const;
    // nullopt where the denominator vanishes
    std::optional<Rational> at(const Rational& t) const;

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc operator-() const { return RatFunc(-num_, den_); }
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::string str(const std::string& var = "s") const;

private:
    UPoly num_, den_;
};

}  // namespace filiform
