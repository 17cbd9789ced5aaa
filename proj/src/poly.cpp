#include "filiform/poly.hpp"

#include "filiform/error.hpp"

#include <algorithm>
#include <sstream>

namespace filiform {

UPoly::UPoly(Rational c) {
    if (c != 0) c_.push_back(c);
}

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::x() { return UPoly(std::vector<Rational>{0, 1}); }

void UPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational UPoly::operator()(const Rational& t) const {
    Rational v;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * t + *it;
    return v;
}

UPoly UPoly::derivative() const {
    std::vector<Rational> d;
    for (size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
    return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
    if (c_.empty()) return *this;
    UPoly r = *this;
    Rational lc = lead();
    for (auto& v : r.c_) v /= lc;
    return r;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return UPoly(std::move(c));
}

UPoly UPoly::operator-() const {
    UPoly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(c));
}

void UPoly::divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
    if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
    std::vector<Rational> rem = a.c_, quo;
    int db = b.degree();
    if (a.degree() >= db) quo.resize(a.degree() - db + 1);
    for (int k = a.degree(); k >= db; --k) {
        Rational f = rem[k] / b.lead();
        if (f == 0) continue;
        quo[k - db] = f;
        for (int i = 0; i <= db; ++i) rem[k - db + i] -= f * b.c_[i];
    }
    q = UPoly(std::move(quo));
    r = UPoly(std::move(rem));
}

UPoly UPoly::gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        UPoly q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::string UPoly::str(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rational& v = c_[k];
        if (v == 0) continue;
        Rational a = abs(v);
        os << (first ? (v < 0 ? "-" : "") : (v < 0 ? " - " : " + "));
        first = false;
        if (k == 0 || a != 1) os << to_string(a);
        if (k > 0) {
            if (a != 1) os << '*';
            os << var;
            if (k > 1) os << '^' << k;
        }
    }
    return os.str();
}

namespace {

int sign_changes(const std::vector<UPoly>& chain, const Rational& t) {
    int changes = 0, last = 0;
    for (const auto& p : chain) {
        int s = sgn(p(t));
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

std::vector<UPoly> sturm_chain(const UPoly& p) {
    std::vector<UPoly> chain{p, p.derivative()};
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        UPoly q, r;
        UPoly::divmod(chain[chain.size() - 2], chain.back(), q, r);
        if (r.is_zero()) break;
        chain.push_back(-r);
    }
    return chain;
}

// Squarefree, integer, primitive multiple of p.
UPoly primitive_squarefree(const UPoly& p) {
    UPoly g = UPoly::gcd(p, p.derivative());
    UPoly q, r;
    UPoly::divmod(p, g, q, r);
    Integer den = 1, num = 0;
    for (const auto& v : q.coeffs()) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    }
    std::vector<Rational> c;
    for (const auto& v : q.coeffs()) {
        Rational w = v * den;
        c.push_back(w);
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), w.get_num_mpz_t());
    }
    for (auto& v : c) v /= num;
    UPoly out(std::move(c));
    return out.lead() < 0 ? -out : out;
}

}  // namespace

RootReport rational_roots(const UPoly& p) {
    RootReport rep;
    if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "roots of the zero polynomial");
    UPoly f = p;
    while (!f.is_constant() && f.coeffs()[0] == 0) {
        rep.rational.push_back(0);
        UPoly q, r;
        UPoly::divmod(f, UPoly::x(), q, r);
        f = q;
    }
    bool restart = true;
    while (restart && f.degree() > 0) {
        restart = false;
        f = primitive_squarefree(f);
        if (f.degree() == 1) {
            rep.rational.push_back(-f.coeffs()[0] / f.coeffs()[1]);
            f = UPoly(Rational(1));
            break;
        }
        Integer D = f.lead().get_num();
        Rational bound = 1;
        for (int k = 0; k < f.degree(); ++k) bound = std::max(bound, Rational(1 + abs(f.coeffs()[k] / f.lead())));
        auto chain = sturm_chain(f);

        struct Interval {
            Rational lo, hi;
            int vlo, vhi;
        };
        std::vector<Interval> work{{-bound, bound, sign_changes(chain, -bound), sign_changes(chain, bound)}};
        std::vector<Rational> found;
        int irrational = 0;
        while (!work.empty() && !restart) {
            Interval iv = work.back();
            work.pop_back();
            int n = iv.vlo - iv.vhi;
            if (n == 0) continue;
            if (n == 1 && (iv.hi - iv.lo) * D < 1) {
                Rational lo = iv.lo * D;
                Integer k;
                mpz_fdiv_q(k.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
                k += 1;
                Rational cand(k, D);
                cand.canonicalize();
                if (cand <= iv.hi && f(cand) == 0)
                    found.push_back(cand);
                else
                    ++irrational;
                continue;
            }
            Rational mid = (iv.lo + iv.hi) / 2;
            if (f(mid) == 0) {
                rep.rational.push_back(mid);
                UPoly q, r;
                UPoly::divmod(f, UPoly(std::vector<Rational>{-mid, 1}), q, r);
                f = q;
                restart = true;
                break;
            }
            int vm = sign_changes(chain, mid);
            work.push_back({mid, iv.hi, vm, iv.vhi});
            work.push_back({iv.lo, mid, iv.vlo, vm});
        }
        if (!restart) {
            rep.rational.insert(rep.rational.end(), found.begin(), found.end());
            rep.irrational_real = irrational;
        }
    }
    std::sort(rep.rational.begin(), rep.rational.end());
    rep.rational.erase(std::unique(rep.rational.begin(), rep.rational.end()), rep.rational.end());
    return rep;
}

RatFunc::RatFunc(UPoly num, UPoly den) {
    if (den.is_zero()) throw Error(ErrorCode::InvalidArgument, "rational function with zero denominator");
    if (num.is_zero()) {
        den_ = UPoly(Rational(1));
        return;
    }
    UPoly g = UPoly::gcd(num, den);
    UPoly q, r;
    UPoly::divmod(num, g, num_, r);
    UPoly::divmod(den, g, q, r);
    Rational lc = q.lead();
    num_ = num_ * UPoly(Rational(1 / lc));
    den_ = q.monic();
}

RatFunc RatFunc::param() { return RatFunc(UPoly::x(), UPoly(Rational(1))); }

Rational RatFunc::constant() const {
    if (!is_constant()) throw Error(ErrorCode::InvalidArgument, "rational function is not constant");
    return num_.is_zero() ? Rational(0) : Rational(num_.lead() / den_.lead());
}

std::optional<Rational> RatFunc::at(const Rational& t) const {
    Rational d = den_(t);
    if (d == 0) return std::nullopt;
    return num_(t) / d;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "rational function division by zero");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RatFunc::str(const std::string& var) const {
    if (den_.degree() == 0) return num_.str(var);
    return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
}

}  // namespace filiform
