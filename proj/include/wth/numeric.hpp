#pragma once

// Cost arithmetic used throughout the solver. Two interchangeable modes:
//   exact_arith  - arbitrary-precision rationals, exact comparisons
//   float_arith  - double with an absolute comparison tolerance (default 1e-9)
// Tie-breaking and the restriction inequalities hinge on equality detection,
// so every semantic comparison goes through the mode's cmp().

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace wth {

using u128 = unsigned __int128;

inline std::string to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
        v /= 10;
    }
    return {s.rbegin(), s.rend()};
}

// base^exp, throws std::overflow_error if the result does not fit in 128 bits
inline u128 checked_pow_u128(u128 base, unsigned exp) {
    u128 result = 1;
    for (unsigned e = 0; e < exp; ++e) {
        if (base != 0 && result > std::numeric_limits<u128>::max() / base)
            throw std::overflow_error("checked_pow_u128: 128-bit overflow");
        result *= base;
    }
    return result;
}

struct exact_arith {
    using number = boost::multiprecision::cpp_rational;

    static int cmp(const number& a, const number& b) { return a.compare(b); }

    static number from_int(long long v) { return number(v); }

    static std::string str(const number& v) {
        std::ostringstream os;
        os << v;
        return os.str();
    }
};

struct float_arith {
    using number = double;

    // absolute tolerance for equality detection
    static inline double tolerance = 1e-9;

    static int cmp(double a, double b) {
        if (std::fabs(a - b) <= tolerance) return 0;
        return a < b ? -1 : 1;
    }

    static double from_int(long long v) { return static_cast<double>(v); }

    static std::string str(double v) {
        std::ostringstream os;
        os.precision(17);
        os << v;
        return os.str();
    }
};

// A nonnegative cost, or infinity. Addition saturates at infinity; the
// ordering is total with infinity above every finite value. Semantic
// comparisons (operators, cmp) use the arithmetic mode's tolerance;
// raw_cmp is tolerance-free and suits heap orderings.
template <class Arith>
class ext_cost {
public:
    using arith = Arith;
    using number = typename Arith::number;

    ext_cost() : value_(0), infinite_(false) {}

    explicit ext_cost(number v) : value_(std::move(v)), infinite_(false) {
        if constexpr (std::is_same_v<number, double>) {
            if (std::isnan(value_)) throw std::invalid_argument("cost is NaN");
            if (std::isinf(value_)) {
                if (value_ < 0) throw std::invalid_argument("cost is -inf");
                infinite_ = true;
                value_ = 0;
                return;
            }
        }
        if (value_ < 0) throw std::invalid_argument("cost is negative");
    }

    static ext_cost infinity() {
        ext_cost c;
        c.infinite_ = true;
        return c;
    }

    bool is_infinite() const { return infinite_; }
    bool is_finite() const { return !infinite_; }

    const number& value() const {
        if (infinite_) throw std::logic_error("value() on infinite cost");
        return value_;
    }

    ext_cost operator+(const ext_cost& o) const {
        if (infinite_ || o.infinite_) return infinity();
        ext_cost r;
        r.value_ = value_ + o.value_;
        return r;
    }

    ext_cost& operator+=(const ext_cost& o) {
        *this = *this + o;
        return *this;
    }

    // scale by a nonnegative factor; infinity stays infinity
    ext_cost scaled(const number& factor) const {
        if (factor < 0) throw std::invalid_argument("negative scale factor");
        if (infinite_) return infinity();
        ext_cost r;
        r.value_ = value_ * factor;
        return r;
    }

    // -1 / 0 / +1 with the mode's tolerance
    int cmp(const ext_cost& o) const {
        if (infinite_ && o.infinite_) return 0;
        if (infinite_) return 1;
        if (o.infinite_) return -1;
        return Arith::cmp(value_, o.value_);
    }

    // tolerance-free comparison (strict weak ordering for priority queues)
    int raw_cmp(const ext_cost& o) const {
        if (infinite_ && o.infinite_) return 0;
        if (infinite_) return 1;
        if (o.infinite_) return -1;
        if (value_ < o.value_) return -1;
        if (o.value_ < value_) return 1;
        return 0;
    }

    bool operator==(const ext_cost& o) const { return cmp(o) == 0; }
    bool operator!=(const ext_cost& o) const { return cmp(o) != 0; }
    bool operator<(const ext_cost& o) const { return cmp(o) < 0; }
    bool operator<=(const ext_cost& o) const { return cmp(o) <= 0; }
    bool operator>(const ext_cost& o) const { return cmp(o) > 0; }
    bool operator>=(const ext_cost& o) const { return cmp(o) >= 0; }

    std::string str() const { return infinite_ ? "inf" : Arith::str(value_); }

private:
    number value_;
    bool infinite_;
};

using exact_cost = ext_cost<exact_arith>;
using float_cost = ext_cost<float_arith>;

}  // namespace wth
