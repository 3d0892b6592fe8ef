#pragma once

#include <functional>
#include <optional>
#include <stdexcept>

namespace rsma {

/// Raised when an iterative routine cannot satisfy its contract.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Branch { principal, lower };

/// Real Lambert W. The principal branch is defined on x >= -1/e and returns
/// w >= -1; the lower branch is defined on -1/e <= x < 0 and returns w <= -1.
/// Throws std::domain_error outside those ranges.
[[nodiscard]] double lambert_w(Branch branch, double x);

/// Bisection on a monotone function whose values at lo and hi have opposite
/// signs (either may be zero). Stops once |hi - lo| <= tol * max(|hi|, eps)
/// and returns the midpoint. Throws std::invalid_argument when the bracket
/// does not change sign.
[[nodiscard]] double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol);

/// Same as bisect_root, but doubles hi (up to 200 times) until the sign
/// changes. Throws NumericError when no sign change is found.
[[nodiscard]] double bisect_root_expanding(const std::function<double(double)>& f, double lo, double hi,
                                           double tol);

/// Rate carried on a bandwidth fraction f of a band of b Hz:
/// b f log2(1 + h p / (sigma2 b f)). Zero at f = 0.
[[nodiscard]] double rate_on_fraction(double fraction, double h, double p, double b, double sigma2);

/// Lambert-W closed form for the fraction f solving rate_on_fraction(f) = rate.
/// Not clipped to [0, 1]. Returns +inf when the rate exceeds the infinite
/// bandwidth limit h p / (sigma2 ln 2) and 0 for a zero rate.
[[nodiscard]] double bandwidth_fraction_closed_form(double rate, double h, double p, double b, double sigma2);

/// The same root obtained by bisection on the monotone map f -> rate_on_fraction(f).
[[nodiscard]] double bandwidth_fraction_bisection(double rate, double h, double p, double b, double sigma2);

/// Smallest fraction in [0, 1] whose rate reaches `rate`, or nullopt when even
/// the whole band is insufficient. Rates at most 1e-12 relative above the
/// full-band capacity return 1. The closed form is used when its relative
/// residual is within 1e-9, bisection otherwise.
[[nodiscard]] std::optional<double> bandwidth_fraction_for_rate(double rate, double h, double p, double b,
                                                                double sigma2);

}  // namespace rsma
