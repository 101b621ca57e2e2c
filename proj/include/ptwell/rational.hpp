#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ptwell {

// Exact rational used for lattice breakpoints, so region membership of a
// grid point is decided by integer arithmetic, never by float comparison.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t num, std::int64_t den);

    // Accepts "p/q" or a bare integer "p".
    static Rational parse(const std::string& text);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const;

    Rational abs() const { return Rational(num_ < 0 ? -num_ : num_, den_); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return cmp(a, b) < 0;
    }
    friend bool operator<=(const Rational& a, const Rational& b) {
        return cmp(a, b) <= 0;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

private:
    static int cmp(const Rational& a, const Rational& b);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

} // namespace ptwell
