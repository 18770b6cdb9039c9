#pragma once

// Exact arithmetic in Q(rho), rho the larger root of x^2 - (N-2) x + 1.
//
// Elements are a + b rho with rational a, b. Multiplication reduces with
// rho^2 = (N-2) rho - 1; the Galois conjugate sends rho to 1/rho = (N-2) - rho,
// so the norm a^2 + (N-2) a b + b^2 is rational and division goes through it.

#include <cmath>
#include <string>

#include "circres/errors.hpp"
#include "circres/rational.hpp"

namespace circres {

class QuadElem {
public:
    /// The zero element of Q(rho_n).
    explicit QuadElem(int n) : QuadElem(n, 0, 0) {}

    QuadElem(int n, Rational a, Rational b = 0) : n_(n), a_(std::move(a)), b_(std::move(b)) {
        // For N >= 5, N(N-4) = (N-2)^2 - 4 lies strictly between (N-3)^2 and
        // (N-2)^2, so it is never a square and Q(rho) is a genuine quadratic field.
        if (n < 5) throw DomainError("Q(rho) needs N >= 5, got " + std::to_string(n));
        a_.canonicalize();
        b_.canonicalize();
    }

    static QuadElem rho(int n) { return QuadElem(n, 0, 1); }

    int field() const { return n_; }
    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    bool is_rational() const { return b_ == 0; }

    /// Real embedding of rho: (N - 2 + sqrt(N (N - 4))) / 2.
    static long double rho_real(int n) {
        const long double nn = n;
        return (nn - 2 + std::sqrt(nn * (nn - 4))) / 2;
    }

    QuadElem conjugate() const { return QuadElem(n_, a_ + b_ * (n_ - 2), -b_); }

    Rational norm() const { return a_ * a_ + (n_ - 2) * a_ * b_ + b_ * b_; }

    /// Real value under rho -> rho_real(N). When a + b rho cancels, the value
    /// is recovered as norm / (a + b / rho), which does not.
    long double to_real() const {
        const long double r = rho_real(n_);
        const long double a = to_long_double(a_);
        const long double b = to_long_double(b_);
        const long double direct = a + b * r;
        const long double conj = a + b / r;
        if (std::abs(direct) >= std::abs(conj) || conj == 0) return direct;
        return to_long_double(norm()) / conj;
    }

    QuadElem operator-() const { return QuadElem(n_, -a_, -b_); }

    friend QuadElem operator+(const QuadElem& x, const QuadElem& y) {
        x.check_same_field(y);
        return QuadElem(x.n_, x.a_ + y.a_, x.b_ + y.b_);
    }
    friend QuadElem operator-(const QuadElem& x, const QuadElem& y) {
        x.check_same_field(y);
        return QuadElem(x.n_, x.a_ - y.a_, x.b_ - y.b_);
    }
    friend QuadElem operator*(const QuadElem& x, const QuadElem& y) {
        x.check_same_field(y);
        // (a + b rho)(c + d rho) = ac - bd + (ad + bc + (N-2) bd) rho
        const Rational bd = x.b_ * y.b_;
        return QuadElem(x.n_, x.a_ * y.a_ - bd, x.a_ * y.b_ + x.b_ * y.a_ + (x.n_ - 2) * bd);
    }
    friend QuadElem operator/(const QuadElem& x, const QuadElem& y) {
        x.check_same_field(y);
        const Rational nrm = y.norm();
        if (nrm == 0) throw DomainError("division by zero in Q(rho)");
        const QuadElem p = x * y.conjugate();
        return QuadElem(x.n_, p.a_ / nrm, p.b_ / nrm);
    }

    friend QuadElem operator+(const QuadElem& x, const Rational& c) { return x + QuadElem(x.n_, c); }
    friend QuadElem operator-(const QuadElem& x, const Rational& c) { return x - QuadElem(x.n_, c); }
    friend QuadElem operator*(const QuadElem& x, const Rational& c) {
        return QuadElem(x.n_, x.a_ * c, x.b_ * c);
    }
    friend QuadElem operator*(const Rational& c, const QuadElem& x) { return x * c; }

    QuadElem& operator+=(const QuadElem& y) { return *this = *this + y; }
    QuadElem& operator-=(const QuadElem& y) { return *this = *this - y; }
    QuadElem& operator*=(const QuadElem& y) { return *this = *this * y; }
    QuadElem& operator/=(const QuadElem& y) { return *this = *this / y; }

    /// Square-and-multiply power.
    QuadElem pow(unsigned e) const {
        QuadElem result(n_, 1);
        QuadElem base = *this;
        while (e) {
            if (e & 1u) result *= base;
            e >>= 1u;
            if (e) base *= base;
        }
        return result;
    }

    friend bool operator==(const QuadElem& x, const QuadElem& y) {
        return x.n_ == y.n_ && x.a_ == y.a_ && x.b_ == y.b_;
    }

    std::string str() const { return format_rational(a_) + " + (" + format_rational(b_) + ")*rho"; }

private:
    void check_same_field(const QuadElem& y) const {
        if (n_ != y.n_) throw DomainError("mixing elements of different quadratic fields");
    }

    int n_;
    Rational a_;
    Rational b_;
};

}  // namespace circres
