// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>

#include "osc/errors.hpp"

namespace osc {

/// Truncated Taylor expansion of a scalar function at a fixed base point:
/// coeff(i) = f^(i)(base)/i! for i = 0..order.  Values are immutable in
/// spirit; all operations return fresh jets.  Two jets may be combined only
/// when they share base and order.
///
/// Recurrences follow the standard truncated power-series rules (Cauchy
/// product, recursive division, and the univariate ODE recurrences for the
/// elementary functions), so results are exact through the truncation order
/// up to rounding.
class Jet {
public:
    static constexpr int kMaxOrder = 24;

    Jet(double base, int order) : base_(base), order_(check_order(order)), c_{} {}

    /// Jet of the identity map x -> x at t.
    static Jet variable(double t, int order) {
        Jet j(t, order);
        j.c_[0] = t;
        if (order >= 1) j.c_[1] = 1.0;
        return j;
    }

    /// Jet of the constant function.
    static Jet constant(double value, double base, int order) {
        Jet j(base, order);
        j.c_[0] = value;
        return j;
    }

    double base() const { return base_; }
    int order() const { return order_; }
    double value() const { return c_[0]; }

    double coeff(int i) const {
        if (i < 0 || i > order_) throw OrderExceeded("jet coefficient index out of range");
        return c_[static_cast<std::size_t>(i)];
    }
    void set_coeff(int i, double v) {
        if (i < 0 || i > order_) throw OrderExceeded("jet coefficient index out of range");
        c_[static_cast<std::size_t>(i)] = v;
    }

    std::span<const double> coeffs() const { return {c_.data(), static_cast<std::size_t>(order_ + 1)}; }

    /// i-th derivative of the modeled function at the base: i! * coeff(i).
    double derivative(int i) const {
        if (i < 0 || i > order_) throw OrderExceeded("derivative order exceeds jet order");
        return factorial(i) * c_[static_cast<std::size_t>(i)];
    }

    /// Jet of f' at the same base, one order lower (order 0 stays order 0
    /// with a zero coefficient).  Used to turn position jets into velocity
    /// jets along a parameterization.
    Jet derivative_jet() const {
        Jet r(base_, order_ > 0 ? order_ - 1 : 0);
        for (int i = 0; i + 1 <= order_; ++i)
            r.c_[static_cast<std::size_t>(i)] = (i + 1) * c_[static_cast<std::size_t>(i + 1)];
        return r;
    }

    /// Jet of the same function truncated to a lower order.
    Jet truncated(int new_order) const {
        if (new_order > order_) throw OrderExceeded("cannot extend a jet");
        Jet r(base_, new_order);
        for (int i = 0; i <= new_order; ++i) r.c_[static_cast<std::size_t>(i)] = c_[static_cast<std::size_t>(i)];
        return r;
    }

    /// Evaluate the truncated polynomial sum coeff(i) * dx^i (Horner).
    double eval_poly(double dx) const {
        double r = 0.0;
        for (int i = order_; i >= 0; --i) r = c_[static_cast<std::size_t>(i)] + dx * r;
        return r;
    }

    static double factorial(int i) {
        double f = 1.0;
        for (int k = 2; k <= i; ++k) f *= k;
        return f;
    }

    friend Jet operator+(const Jet& a, const Jet& b) {
        a.require_compatible(b);
        Jet r = a;
        for (int i = 0; i <= a.order_; ++i) r.c_[static_cast<std::size_t>(i)] += b.c_[static_cast<std::size_t>(i)];
        return r;
    }

    friend Jet operator-(const Jet& a, const Jet& b) {
        a.require_compatible(b);
        Jet r = a;
        for (int i = 0; i <= a.order_; ++i) r.c_[static_cast<std::size_t>(i)] -= b.c_[static_cast<std::size_t>(i)];
        return r;
    }

    friend Jet operator-(const Jet& a) {
        Jet r = a;
        for (int i = 0; i <= a.order_; ++i) r.c_[static_cast<std::size_t>(i)] = -r.c_[static_cast<std::size_t>(i)];
        return r;
    }

    friend Jet operator*(const Jet& a, const Jet& b) {
        a.require_compatible(b);
        Jet r(a.base_, a.order_);
        for (int i = 0; i <= a.order_; ++i) {
            double acc = 0.0;
            for (int j = 0; j <= i; ++j)
                acc += a.c_[static_cast<std::size_t>(j)] * b.c_[static_cast<std::size_t>(i - j)];
            r.c_[static_cast<std::size_t>(i)] = acc;
        }
        return r;
    }

    friend Jet operator/(const Jet& a, const Jet& b) {
        a.require_compatible(b);
        if (b.c_[0] == 0.0) throw DivisionByZeroJet("division by a jet with zero value coefficient");
        Jet r(a.base_, a.order_);
        for (int i = 0; i <= a.order_; ++i) {
            double acc = a.c_[static_cast<std::size_t>(i)];
            for (int j = 1; j <= i; ++j)
                acc -= b.c_[static_cast<std::size_t>(j)] * r.c_[static_cast<std::size_t>(i - j)];
            r.c_[static_cast<std::size_t>(i)] = acc / b.c_[0];
        }
        return r;
    }

    friend Jet operator+(const Jet& a, double s) { Jet r = a; r.c_[0] += s; return r; }
    friend Jet operator+(double s, const Jet& a) { return a + s; }
    friend Jet operator-(const Jet& a, double s) { Jet r = a; r.c_[0] -= s; return r; }
    friend Jet operator-(double s, const Jet& a) { Jet r = -a; r.c_[0] += s; return r; }
    friend Jet operator*(const Jet& a, double s) {
        Jet r = a;
        for (int i = 0; i <= a.order_; ++i) r.c_[static_cast<std::size_t>(i)] *= s;
        return r;
    }
    friend Jet operator*(double s, const Jet& a) { return a * s; }
    friend Jet operator/(const Jet& a, double s) { return a * (1.0 / s); }
    friend Jet operator/(double s, const Jet& a) { return Jet::constant(s, a.base_, a.order_) / a; }

private:
    static int check_order(int order) {
        if (order < 0) throw std::invalid_argument("jet order must be nonnegative");
        if (order > kMaxOrder) throw OrderExceeded("jet order exceeds supported maximum");
        return order;
    }
    void require_compatible(const Jet& b) const {
        if (base_ != b.base_ || order_ != b.order_)
            throw std::logic_error("jet operands must share base point and order");
    }

    double base_;
    int order_;
    std::array<double, kMaxOrder + 1> c_;

    friend Jet exp(const Jet&);
    friend Jet log(const Jet&);
    friend Jet sqrt(const Jet&);
    friend void sincos_jets(const Jet&, Jet&, Jet&);
    friend void sinhcosh_jets(const Jet&, Jet&, Jet&);
};

inline Jet exp(const Jet& a) {
    Jet r(a.base(), a.order());
    const double v = std::exp(a.c_[0]);
    if (!std::isfinite(v)) throw DomainError("exp overflow in jet evaluation");
    r.c_[0] = v;
    for (int i = 1; i <= a.order(); ++i) {
        double acc = 0.0;
        for (int j = 1; j <= i; ++j)
            acc += j * a.c_[static_cast<std::size_t>(j)] * r.c_[static_cast<std::size_t>(i - j)];
        r.c_[static_cast<std::size_t>(i)] = acc / i;
    }
    return r;
}

inline Jet log(const Jet& a) {
    if (!(a.c_[0] > 0.0)) throw DomainError("log requires a positive value coefficient");
    Jet r(a.base(), a.order());
    r.c_[0] = std::log(a.c_[0]);
    for (int i = 1; i <= a.order(); ++i) {
        double acc = i * a.c_[static_cast<std::size_t>(i)];
        for (int j = 1; j <= i - 1; ++j)
            acc -= j * r.c_[static_cast<std::size_t>(j)] * a.c_[static_cast<std::size_t>(i - j)];
        r.c_[static_cast<std::size_t>(i)] = acc / (i * a.c_[0]);
    }
    return r;
}

inline Jet sqrt(const Jet& a) {
    if (!(a.c_[0] > 0.0)) throw DomainError("sqrt requires a positive value coefficient");
    Jet r(a.base(), a.order());
    r.c_[0] = std::sqrt(a.c_[0]);
    for (int i = 1; i <= a.order(); ++i) {
        double acc = a.c_[static_cast<std::size_t>(i)];
        for (int j = 1; j <= i - 1; ++j)
            acc -= r.c_[static_cast<std::size_t>(j)] * r.c_[static_cast<std::size_t>(i - j)];
        r.c_[static_cast<std::size_t>(i)] = acc / (2.0 * r.c_[0]);
    }
    return r;
}

/// Joint sine/cosine recurrence; the pair shares the first-derivative sums.
inline void sincos_jets(const Jet& a, Jet& s, Jet& c) {
    s = Jet(a.base(), a.order());
    c = Jet(a.base(), a.order());
    s.c_[0] = std::sin(a.c_[0]);
    c.c_[0] = std::cos(a.c_[0]);
    for (int i = 1; i <= a.order(); ++i) {
        double sa = 0.0, ca = 0.0;
        for (int j = 1; j <= i; ++j) {
            sa += j * a.c_[static_cast<std::size_t>(j)] * c.c_[static_cast<std::size_t>(i - j)];
            ca += j * a.c_[static_cast<std::size_t>(j)] * s.c_[static_cast<std::size_t>(i - j)];
        }
        s.c_[static_cast<std::size_t>(i)] = sa / i;
        c.c_[static_cast<std::size_t>(i)] = -ca / i;
    }
}

inline Jet sin(const Jet& a) {
    Jet s(a.base(), a.order()), c(a.base(), a.order());
    sincos_jets(a, s, c);
    return s;
}

inline Jet cos(const Jet& a) {
    Jet s(a.base(), a.order()), c(a.base(), a.order());
    sincos_jets(a, s, c);
    return c;
}

inline Jet tan(const Jet& a) {
    Jet s(a.base(), a.order()), c(a.base(), a.order());
    sincos_jets(a, s, c);
    if (c.value() == 0.0) throw DomainError("tan evaluated at a pole");
    return s / c;
}

/// Joint hyperbolic sine/cosine recurrence; same structure as sincos_jets
/// but without the alternating sign.
inline void sinhcosh_jets(const Jet& a, Jet& s, Jet& c) {
    s = Jet(a.base(), a.order());
    c = Jet(a.base(), a.order());
    s.c_[0] = std::sinh(a.c_[0]);
    c.c_[0] = std::cosh(a.c_[0]);
    for (int i = 1; i <= a.order(); ++i) {
        double sa = 0.0, ca = 0.0;
        for (int j = 1; j <= i; ++j) {
            sa += j * a.c_[static_cast<std::size_t>(j)] * c.c_[static_cast<std::size_t>(i - j)];
            ca += j * a.c_[static_cast<std::size_t>(j)] * s.c_[static_cast<std::size_t>(i - j)];
        }
        s.c_[static_cast<std::size_t>(i)] = sa / i;
        c.c_[static_cast<std::size_t>(i)] = ca / i;
    }
}

inline Jet sinh(const Jet& a) {
    Jet s(a.base(), a.order()), c(a.base(), a.order());
    sinhcosh_jets(a, s, c);
    return s;
}

inline Jet cosh(const Jet& a) {
    Jet s(a.base(), a.order()), c(a.base(), a.order());
    sinhcosh_jets(a, s, c);
    return c;
}

/// Nonnegative integer power by binary exponentiation.
inline Jet pow_int(const Jet& a, long long k) {
    Jet result = Jet::constant(1.0, a.base(), a.order());
    if (k < 0) throw std::logic_error("pow_int expects a nonnegative exponent");
    Jet square = a;
    while (k > 0) {
        if (k & 1) result = result * square;
        k >>= 1;
        if (k > 0) square = square * square;
    }
    return result;
}

/// Real power.  An integral exponent uses repeated multiplication and is
/// valid for any base value; a fractional exponent routes through
/// exp(p*log a) and requires a positive value coefficient.
inline Jet pow(const Jet& a, double p) {
    if (std::nearbyint(p) == p && std::abs(p) < 1e15) {
        const long long k = static_cast<long long>(p);
        if (k >= 0) return pow_int(a, k);
        return 1.0 / pow_int(a, -k);
    }
    if (!(a.value() > 0.0))
        throw DomainError("fractional power requires a positive value coefficient");
    return exp(p * log(a));
}

}  // namespace osc
