#include "dilab/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dilab/quadrature.hpp"
#include "dilab/stats.hpp"

namespace dilab {

ShockDistribution ShockDistribution::uniform(double z_lo, double z_hi) {
    if (!(z_lo < z_hi)) throw std::invalid_argument("ShockDistribution: requires z_lo < z_hi");
    ShockDistribution g;
    g.family_ = ShockFamily::kUniform;
    g.z_lo_ = z_lo;
    g.z_hi_ = z_hi;
    return g;
}

ShockDistribution ShockDistribution::truncated_normal(double mu, double sigma, double z_lo,
                                                      double z_hi) {
    if (!(z_lo < z_hi)) throw std::invalid_argument("ShockDistribution: requires z_lo < z_hi");
    if (!(sigma > 0.0)) throw std::invalid_argument("ShockDistribution: requires sigma > 0");
    ShockDistribution g;
    g.family_ = ShockFamily::kTruncatedNormal;
    g.z_lo_ = z_lo;
    g.z_hi_ = z_hi;
    g.mu_ = mu;
    g.sigma_ = sigma;
    g.norm_ = stats::normal_cdf((z_hi - mu) / sigma) - stats::normal_cdf((z_lo - mu) / sigma);
    if (!(g.norm_ > 0.0))
        throw std::invalid_argument("ShockDistribution: truncation interval carries no mass");
    return g;
}

double ShockDistribution::cdf(double z) const {
    if (z <= z_lo_) return 0.0;
    if (z >= z_hi_) return 1.0;
    if (family_ == ShockFamily::kUniform) return (z - z_lo_) / (z_hi_ - z_lo_);
    return (stats::normal_cdf((z - mu_) / sigma_) - stats::normal_cdf((z_lo_ - mu_) / sigma_)) /
           norm_;
}

double ShockDistribution::pdf(double z) const {
    if (z < z_lo_ || z > z_hi_) return 0.0;
    if (family_ == ShockFamily::kUniform) return 1.0 / (z_hi_ - z_lo_);
    return stats::normal_pdf((z - mu_) / sigma_) / (sigma_ * norm_);
}

double ShockDistribution::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("ShockDistribution::quantile: p in (0,1)");
    if (family_ == ShockFamily::kUniform) return z_lo_ + p * (z_hi_ - z_lo_);
    const double lo_mass = stats::normal_cdf((z_lo_ - mu_) / sigma_);
    const double q = stats::normal_quantile(lo_mass + p * norm_);
    return std::clamp(mu_ + sigma_ * q, z_lo_, z_hi_);
}

double ShockDistribution::partial_mean_below(double x) const {
    const double hi = std::min(x, z_hi_);
    if (hi <= z_lo_) return 0.0;
    if (family_ == ShockFamily::kUniform)
        return (hi * hi - z_lo_ * z_lo_) / (2.0 * (z_hi_ - z_lo_));
    return integrate_gk([this](double z) { return z * pdf(z); }, z_lo_, hi, 1e-10);
}

std::string ShockDistribution::describe() const {
    if (family_ == ShockFamily::kUniform)
        return "uniform[" + std::to_string(z_lo_) + "," + std::to_string(z_hi_) + "]";
    return "truncated_normal(mu=" + std::to_string(mu_) + ",sigma=" + std::to_string(sigma_) +
           ")[" + std::to_string(z_lo_) + "," + std::to_string(z_hi_) + "]";
}

}  // namespace dilab
