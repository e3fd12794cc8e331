#pragma once

#include <string>

namespace dilab {

enum class ShockFamily { kUniform, kTruncatedNormal };

// Distribution G of the idiosyncratic capital shock, supported on
// [z_lo, z_hi]. CDF evaluations clamp to the support; truncated first
// moments use a closed form for the uniform family and adaptive quadrature
// otherwise.
class ShockDistribution {
public:
    static ShockDistribution uniform(double z_lo, double z_hi);
    static ShockDistribution truncated_normal(double mu, double sigma, double z_lo, double z_hi);

    double cdf(double z) const;
    double pdf(double z) const;
    double quantile(double p) const;

    // Mass-weighted partial first moment: integral of z dG(z) over
    // [z_lo, min(x, z_hi)].
    double partial_mean_below(double x) const;

    double z_lo() const { return z_lo_; }
    double z_hi() const { return z_hi_; }
    ShockFamily family() const { return family_; }
    double mu() const { return mu_; }
    double sigma() const { return sigma_; }

    std::string describe() const;

private:
    ShockDistribution() = default;

    ShockFamily family_ = ShockFamily::kUniform;
    double z_lo_ = 0.0;
    double z_hi_ = 1.0;
    double mu_ = 0.0;     // truncated normal location
    double sigma_ = 1.0;  // truncated normal scale
    double norm_ = 1.0;   // Phi(b') - Phi(a') for the truncated normal
};

}  // namespace dilab
