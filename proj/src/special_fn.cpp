#include "rsma/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace rsma {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kHalleyMaxIter = 50;

// Series about the branch point in p = +-sqrt(2 (e x + 1)).
double branch_point_series(double p) {
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 + p * (-43.0 / 540.0))));
}

double branch_offset(double x) {
    const double t = std::fma(std::numbers::e, x, 1.0);
    return std::sqrt(std::max(0.0, 2.0 * t));
}

double initial_guess(Branch branch, double x) {
    if (branch == Branch::principal) {
        if (x < -0.32) {
            return branch_point_series(branch_offset(x));
        }
        if (x < 3.0) {
            const double l = std::log1p(x);
            return l * (1.0 - std::log1p(l) / (2.0 + l));
        }
        const double l1 = std::log(x);
        const double l2 = std::log(l1);
        return l1 - l2 + l2 / l1;
    }
    if (x < -0.25) {
        return branch_point_series(-branch_offset(x));
    }
    const double l1 = std::log(-x);
    const double l2 = std::log(-l1);
    return l1 - l2 + l2 / l1;
}

}  // namespace

double lambert_w(Branch branch, double x) {
    constexpr double branch_point = -1.0 / std::numbers::e;
    if (std::isnan(x)) {
        throw std::domain_error("lambert_w: NaN argument");
    }
    if (x < branch_point) {
        // Accept arguments a few ulps below the rounded branch point.
        if (x >= branch_point * (1.0 + 4.0 * kEps)) {
            return -1.0;
        }
        throw std::domain_error("lambert_w: argument below -1/e");
    }
    if (branch == Branch::lower && x >= 0.0) {
        throw std::domain_error("lambert_w: lower branch needs -1/e <= x < 0");
    }
    if (branch == Branch::principal) {
        if (x == 0.0) {
            return 0.0;
        }
        if (std::isinf(x)) {
            return x;
        }
    }
    if (x == branch_point) {
        return -1.0;
    }

    double w = initial_guess(branch, x);
    for (int i = 0; i < kHalleyMaxIter; ++i) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        if (f == 0.0) {
            break;
        }
        const double wp1 = w + 1.0;
        const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        if (denom == 0.0 || !std::isfinite(denom)) {
            break;
        }
        const double step = f / denom;
        w -= step;
        if (std::abs(step) <= 4.0 * kEps * (1.0 + std::abs(w))) {
            break;
        }
    }
    return branch == Branch::principal ? std::max(w, -1.0) : std::min(w, -1.0);
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
    if (!(lo <= hi)) {
        throw std::invalid_argument("bisect_root: need lo <= hi");
    }
    const double flo = f(lo);
    if (flo == 0.0) {
        return lo;
    }
    const double fhi = f(hi);
    if (fhi == 0.0) {
        return hi;
    }
    if (std::isnan(flo) || std::isnan(fhi) || std::signbit(flo) == std::signbit(fhi)) {
        throw std::invalid_argument("bisect_root: bracket has no sign change");
    }
    const bool increasing = flo < 0.0;
    for (;;) {
        const double mid = lo + 0.5 * (hi - lo);
        if (hi - lo <= tol * std::max(std::abs(hi), kEps) || mid == lo || mid == hi) {
            return mid;
        }
        const double fm = f(mid);
        if (std::isnan(fm)) {
            throw NumericError("bisect_root: function returned NaN");
        }
        if (fm == 0.0) {
            return mid;
        }
        if ((fm < 0.0) == increasing) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

double bisect_root_expanding(const std::function<double(double)>& f, double lo, double hi, double tol) {
    const double flo = f(lo);
    if (flo == 0.0) {
        return lo;
    }
    if (!(hi > lo)) {
        throw std::invalid_argument("bisect_root_expanding: need hi > lo");
    }
    for (int i = 0; i <= 200; ++i) {
        const double fhi = f(hi);
        if (fhi == 0.0 || std::signbit(fhi) != std::signbit(flo)) {
            return bisect_root(f, lo, hi, tol);
        }
        hi = lo + 2.0 * (hi - lo);
    }
    throw NumericError("bisect_root_expanding: no sign change after 200 doublings");
}

double rate_on_fraction(double fraction, double h, double p, double b, double sigma2) {
    if (fraction <= 0.0) {
        return 0.0;
    }
    const double snr = h * p / (sigma2 * b * fraction);
    return b * fraction * std::log1p(snr) / std::numbers::ln2;
}

double bandwidth_fraction_closed_form(double rate, double h, double p, double b, double sigma2) {
    if (rate == 0.0) {
        return 0.0;
    }
    // With a = rate ln2 sigma2 / (h p), the fraction solves ln(1 + y) = a y for
    // y = h p / (sigma2 b f). y = 0 (W = -a) is the trivial root; the other
    // real root uses the opposite branch and only exists for a < 1.
    const double a = rate * std::numbers::ln2 * sigma2 / (h * p);
    if (a >= 1.0) {
        return std::numeric_limits<double>::infinity();
    }
    const double w = lambert_w(Branch::lower, -a * std::exp(-a));
    return (rate * std::numbers::ln2 / b) / (-w - a);
}

double bandwidth_fraction_bisection(double rate, double h, double p, double b, double sigma2) {
    if (rate == 0.0) {
        return 0.0;
    }
    if (rate * std::numbers::ln2 * sigma2 >= h * p) {
        return std::numeric_limits<double>::infinity();
    }
    const auto gap = [&](double f) { return rate_on_fraction(f, h, p, b, sigma2) - rate; };
    return bisect_root_expanding(gap, 0.0, 1.0, 1e-14);
}

std::optional<double> bandwidth_fraction_for_rate(double rate, double h, double p, double b, double sigma2) {
    if (!(rate >= 0.0)) {
        throw std::invalid_argument("bandwidth_fraction_for_rate: rate must be >= 0");
    }
    if (rate == 0.0) {
        return 0.0;
    }
    const double full = rate_on_fraction(1.0, h, p, b, sigma2);
    if (rate > full) {
        // rounding at the full-band capacity
        if (rate <= full * (1.0 + 1e-12)) return 1.0;
        return std::nullopt;
    }
    double f = bandwidth_fraction_closed_form(rate, h, p, b, sigma2);
    const bool usable = std::isfinite(f) && f > 0.0 &&
                        std::abs(rate_on_fraction(f, h, p, b, sigma2) - rate) <= 1e-9 * rate;
    if (!usable) {
        const auto gap = [&](double x) { return rate_on_fraction(x, h, p, b, sigma2) - rate; };
        f = bisect_root(gap, 0.0, 1.0, 1e-14);
    }
    return std::min(f, 1.0);
}

}  // namespace rsma
