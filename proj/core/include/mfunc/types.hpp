#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfunc {

/// Bad input or configuration (maps to CLI exit code 1).
class validation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation failed to meet its accuracy contract (CLI exit code 2).
/// `achieved` carries the best error estimate reached before giving up,
/// or a diagnostic quantity named in the message (e.g. a required cutoff).
class numerical_error : public std::runtime_error {
public:
    numerical_error(const std::string& msg, double achieved)
        : std::runtime_error(msg), achieved_(achieved) {}
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

/// Symmetric-power degree r and evaluation abscissa sigma.
///
/// Density construction requires r in {1,2}; traces and expansion
/// coefficients accept any r >= 1.
struct SymPowerParams {
    int r = 1;
    double sigma = 1.0;

    SymPowerParams() = default;
    SymPowerParams(int r_, double sigma_) : r(r_), sigma(sigma_) { validate(); }

    bool even() const noexcept { return r % 2 == 0; }
    int delta_even() const noexcept { return even() ? 1 : 0; }

    /// floor((r-1)/2) for odd r, r/2 - 1 for even r; the upper summation
    /// index of the symmetric-power trace. Zero exactly when r is 1 or 2.
    int rho() const noexcept { return even() ? r / 2 - 1 : (r - 1) / 2; }

    void validate() const {
        if (r < 1) throw validation_error("SymPowerParams: r must be >= 1, got " + std::to_string(r));
        if (!(sigma > 0.5))
            throw validation_error("SymPowerParams: sigma must be > 1/2, got " + std::to_string(sigma));
    }

    void require_density_degree() const {
        if (r != 1 && r != 2)
            throw validation_error("density construction is defined for r in {1,2}, got r=" + std::to_string(r));
    }

    bool operator==(const SymPowerParams&) const = default;
};

/// An ordered finite set of primes, optionally with one excluded prime q
/// (the fixed ramified prime; excluded == nullopt means no exclusion).
class PrimeSet {
public:
    PrimeSet() = default;

    /// Validates: entries prime, strictly increasing, none equal to `excluded`.
    explicit PrimeSet(std::vector<std::uint64_t> primes,
                      std::optional<std::uint64_t> excluded = std::nullopt);

    static PrimeSet first_n(std::size_t n, std::optional<std::uint64_t> excluded = std::nullopt);
    static PrimeSet up_to(std::uint64_t y, std::optional<std::uint64_t> excluded = std::nullopt);

    const std::vector<std::uint64_t>& primes() const noexcept { return primes_; }
    std::optional<std::uint64_t> excluded() const noexcept { return excluded_; }
    std::size_t size() const noexcept { return primes_.size(); }
    bool empty() const noexcept { return primes_.empty(); }

    bool contains(std::uint64_t p) const noexcept;
    std::size_t count_greater_than(std::uint64_t p0) const noexcept;

    /// Set difference this \ other (excluded marker kept from *this).
    PrimeSet without(const PrimeSet& other) const;

    void require_nonempty() const {
        if (primes_.empty()) throw validation_error("PrimeSet: nonempty set required");
    }

    bool operator==(const PrimeSet&) const = default;

private:
    std::vector<std::uint64_t> primes_;
    std::optional<std::uint64_t> excluded_;
};

/// Angle in [0, pi], the support of the Sato-Tate law.
struct SatoTateAngle {
    double theta = 0.0;

    SatoTateAngle() = default;
    explicit SatoTateAngle(double t) : theta(t) {
        if (!(t >= 0.0 && t <= 3.14159265358979323847))
            throw validation_error("SatoTateAngle: theta must lie in [0, pi]");
    }
};

/// Uniform symmetric grid on [-x_max, x_max]; n odd so 0 is a node.
struct XGrid {
    double x_max = 0.0;
    int n = 0;

    XGrid() = default;
    XGrid(double x_max_, int n_) : x_max(x_max_), n(n_) { validate(); }

    void validate() const {
        if (!(x_max > 0)) throw validation_error("XGrid: x_max must be positive");
        if (n < 3 || n % 2 == 0) throw validation_error("XGrid: n must be odd and >= 3");
    }

    double min() const noexcept { return -x_max; }
    double max() const noexcept { return x_max; }
    double spacing() const noexcept { return 2.0 * x_max / (n - 1); }
    double point(int k) const noexcept { return -x_max + k * spacing(); }
    int zero_index() const noexcept { return (n - 1) / 2; }

    bool operator==(const XGrid&) const = default;
};

/// Uniform grid on [u_min, u_max].
struct UGrid {
    double u_min = 0.0;
    double u_max = 0.0;
    int n = 0;

    UGrid() = default;
    UGrid(double lo, double hi, int n_) : u_min(lo), u_max(hi), n(n_) { validate(); }

    void validate() const {
        if (!(u_max > u_min)) throw validation_error("UGrid: u_max must exceed u_min");
        if (n < 2) throw validation_error("UGrid: n must be >= 2");
    }

    double spacing() const noexcept { return (u_max - u_min) / (n - 1); }
    double point(int k) const noexcept { return u_min + k * spacing(); }

    bool operator==(const UGrid&) const = default;
};

}  // namespace mfunc
