#include "toralg/rational.hpp"

#include <limits>
#include <ostream>

namespace toralg {

namespace {

constexpr __int128 kMax = std::numeric_limits<long long>::max();
constexpr __int128 kMin = -kMax;  // keep symmetric so negation never overflows

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

mpz_class to_mpz(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    mpz_class hi = static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64));
    mpz_class lo = static_cast<unsigned long>(static_cast<std::uint64_t>(u));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

}  // namespace

Rational::Rational(long long n, long long d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    normalize_small(n, d);
}

Rational::Rational(const mpq_class& q) { set_from_mpq(q); }

void Rational::normalize_small(__int128 n, __int128 d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    if (n == 0) {
        num_ = 0;
        den_ = 1;
        big_.reset();
        return;
    }
    __int128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    if (n >= kMin && n <= kMax && d <= kMax) {
        num_ = static_cast<long long>(n);
        den_ = static_cast<long long>(d);
        big_.reset();
        return;
    }
    mpq_class q(to_mpz(n), to_mpz(d));
    big_ = std::make_unique<mpq_class>(std::move(q));
}

void Rational::set_from_mpq(mpq_class q) {
    q.canonicalize();
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (mpz_fits_slong_p(n.get_mpz_t()) && mpz_fits_slong_p(d.get_mpz_t()) &&
        n != std::numeric_limits<long>::min()) {
        num_ = n.get_si();
        den_ = d.get_si();
        big_.reset();
    } else {
        big_ = std::make_unique<mpq_class>(std::move(q));
    }
}

Rational Rational::parse(std::string_view text) {
    auto bad = [&]() { return std::invalid_argument("malformed rational \"" + std::string(text) + "\""); };
    if (text.empty()) throw bad();
    auto slash = text.find('/');
    std::string_view num_part = text.substr(0, slash);
    auto check_int = [&](std::string_view s, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && !s.empty() && (s[0] == '+' || s[0] == '-')) i = 1;
        if (i >= s.size()) throw bad();
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') throw bad();
    };
    check_int(num_part, true);
    std::string num_str(num_part[0] == '+' ? num_part.substr(1) : num_part);
    mpz_class n(num_str, 10);
    mpz_class d = 1;
    if (slash != std::string_view::npos) {
        std::string_view den_part = text.substr(slash + 1);
        check_int(den_part, false);
        d = mpz_class(std::string(den_part), 10);
        if (d == 0) throw std::invalid_argument("rational with zero denominator: \"" + std::string(text) + "\"");
    }
    Rational r;
    r.set_from_mpq(mpq_class(n, d));
    return r;
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
    if (big_) return sgn(*big_);
    return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0);
}

mpz_class Rational::numerator() const { return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(num_)); }
mpz_class Rational::denominator() const { return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(den_)); }

long long Rational::to_int64() const {
    if (big_ || den_ != 1) throw std::domain_error("rational " + str() + " is not a 64-bit integer");
    return num_;
}

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

std::string Rational::str() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
    Rational r;
    if (big_) {
        r.set_from_mpq(-*big_);
    } else {
        r.num_ = -num_;
        r.den_ = den_;
    }
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    if (!big_ && !o.big_) {
        if (den_ == 1 && o.den_ == 1) {
            __int128 s = static_cast<__int128>(num_) + o.num_;
            if (s >= kMin && s <= kMax) {
                num_ = static_cast<long long>(s);
                return *this;
            }
        }
        __int128 n = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
        __int128 d = static_cast<__int128>(den_) * o.den_;
        normalize_small(n, d);
        return *this;
    }
    set_from_mpq(to_mpq() + o.to_mpq());
    return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
    if (!big_ && !o.big_) {
        if (den_ == 1 && o.den_ == 1) {
            __int128 p = static_cast<__int128>(num_) * o.num_;
            if (p >= kMin && p <= kMax) {
                num_ = static_cast<long long>(p);
                return *this;
            }
        }
        normalize_small(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
        return *this;
    }
    set_from_mpq(to_mpq() * o.to_mpq());
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero rational");
    if (!big_ && !o.big_) {
        normalize_small(static_cast<__int128>(num_) * o.den_, static_cast<__int128>(den_) * o.num_);
        return *this;
    }
    set_from_mpq(to_mpq() / o.to_mpq());
    return *this;
}

void Rational::add_mul(const Rational& a, const Rational& b) {
    if (!big_ && !a.big_ && !b.big_ && den_ == 1 && a.den_ == 1 && b.den_ == 1) {
        __int128 p = static_cast<__int128>(a.num_) * b.num_;
        __int128 s = p + num_;
        if (p >= kMin && p <= kMax && s >= kMin && s <= kMax) {
            num_ = static_cast<long long>(s);
            return;
        }
    }
    *this += a * b;
}

bool operator==(const Rational& a, const Rational& b) {
    // both sides are canonical, so a big value never equals a small one
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;
}

bool operator<(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_)
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    return a.to_mpq() < b.to_mpq();
}

std::size_t Rational::hash() const {
    if (big_) return std::hash<std::string>{}(big_->get_str());
    std::size_t h = std::hash<long long>{}(num_);
    return h ^ (std::hash<long long>{}(den_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

Rational binomial(const Rational& top, long long k) {
    if (k < 0) return 0;
    Rational r = 1;
    for (long long i = 0; i < k; ++i) {
        r *= top - Rational(i);
        r /= Rational(i + 1);
    }
    return r;
}

Rational factorial(long long n) {
    Rational r = 1;
    for (long long i = 2; i <= n; ++i) r *= Rational(i);
    return r;
}

}  // namespace toralg
