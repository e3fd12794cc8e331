#include "dilab/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dilab::model {

namespace {

constexpr double kBracketDelta = 1e-9;
constexpr double kBisectTol = 1e-13;
constexpr int kBisectMaxIter = 200;
constexpr double kResidualLimit = 1e-10;
constexpr double kLambdaTol = 1e-12;

double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

void require_positive_price(double price) {
    if (!(price > 0.0)) throw std::domain_error("price level must be strictly positive");
}

// Markup-scaled disutility terms of the wage-setting curve.
double markup(const ModelParams& p) { return p.epsilon / (p.epsilon - 1.0); }

}  // namespace

void ModelParams::validate_core() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
    if (!(tfp > 0.0)) throw std::invalid_argument("tfp must be positive");
    if (!(xi > 0.0 && xi < 1.0)) throw std::invalid_argument("xi must lie in (0,1)");
    if (!(epsilon > 1.0)) throw std::invalid_argument("epsilon must exceed 1");
    if (!(chi > 0.0)) throw std::invalid_argument("chi must be positive");
    if (!(varphi >= 0.0)) throw std::invalid_argument("varphi must be nonnegative");
    if (!(psi >= 0.0)) throw std::invalid_argument("psi must be nonnegative");
    if (!(capital0 > 0.0)) throw std::invalid_argument("capital0 must be positive");
    if (!(debt0 >= 0.0)) throw std::invalid_argument("debt0 must be nonnegative");
}

void ModelParams::validate() const {
    validate_core();
    if (!(wage0 > 0.0)) throw std::invalid_argument("wage0 must be positive (resolve it first)");
}

const char* regime_name(WageRegime r) {
    return r == WageRegime::kAdjusted ? "adjusted" : "rigid";
}

DefaultCutoff default_cutoff(double price, const ModelParams& p) {
    require_positive_price(price);
    DefaultCutoff c;
    c.raw = p.capital0 - p.debt0 / price;
    c.clamped = std::clamp(c.raw, p.shock.z_lo(), p.shock.z_hi());
    return c;
}

double default_share(double price, const ModelParams& p) {
    return 1.0 - p.shock.cdf(default_cutoff(price, p).raw);
}

double capital_labor_ratio(double real_wage, const ModelParams& p) {
    if (!(real_wage > 0.0)) throw std::domain_error("real wage must be strictly positive");
    return p.alpha / (1.0 - p.alpha) * real_wage;
}

double demand_denominator(double real_wage, const ModelParams& p) {
    const double k_ratio = capital_labor_ratio(real_wage, p);
    return real_wage / (1.0 - p.alpha) - p.xi * p.tfp * std::pow(k_ratio, p.alpha);
}

double real_wage_validity_bound(const ModelParams& p) {
    const double base =
        (1.0 - p.alpha) * p.xi * p.tfp * std::pow(p.alpha / (1.0 - p.alpha), p.alpha);
    return std::pow(base, 1.0 / (1.0 - p.alpha));
}

double constraint_multiplier(double real_wage, const ModelParams& p) {
    const double k_ratio = capital_labor_ratio(real_wage, p);
    const double den = demand_denominator(real_wage, p);
    return (p.tfp * std::pow(k_ratio, p.alpha) - real_wage / (1.0 - p.alpha)) / den;
}

namespace {

void require_valid_demand_wage(double real_wage, const ModelParams& p) {
    const double den = demand_denominator(real_wage, p);
    if (!(den > 0.0)) {
        std::ostringstream msg;
        msg << "real wage " << real_wage << " is outside the labor-demand validity region: "
            << "requires w/(1-alpha) - xi*A*((alpha/(1-alpha))*w)^alpha > 0, i.e. w > "
            << real_wage_validity_bound(p);
        throw std::domain_error(msg.str());
    }
}

}  // namespace

double firm_labor_demand(double shock, double real_wage, double price, const ModelParams& p) {
    require_positive_price(price);
    require_valid_demand_wage(real_wage, p);
    const auto cut = default_cutoff(price, p);
    if (shock > cut.raw) return 0.0;  // defaulted
    const double num = p.capital0 - p.debt0 / price - shock;
    return num / demand_denominator(real_wage, p);
}

double aggregate_labor_demand(double real_wage, double price, const ModelParams& p) {
    require_positive_price(price);
    require_valid_demand_wage(real_wage, p);
    const auto cut = default_cutoff(price, p);
    const double mass = p.shock.cdf(cut.raw);
    if (mass <= 0.0) return 0.0;
    const double partial_mean = p.shock.partial_mean_below(cut.raw);
    // mass * (K0 - D0/P) - integral z dG over active firms; nonnegative by
    // construction since the integrand K0 - D0/P - z is >= 0 on that set.
    const double num = mass * (p.capital0 - p.debt0 / price) - partial_mean;
    return num / demand_denominator(real_wage, p);
}

double firm_value(double shock, double real_wage, double price, const ModelParams& p) {
    const double labor = firm_labor_demand(shock, real_wage, price, p);
    if (labor <= 0.0) return 0.0;
    const double k_ratio = capital_labor_ratio(real_wage, p);
    return (1.0 - p.xi) * p.tfp * std::pow(k_ratio, p.alpha) * labor;
}

FirmAllocation firm_allocation(double shock, double real_wage, double price, const ModelParams& p) {
    FirmAllocation a;
    a.shock = shock;
    const auto cut = default_cutoff(price, p);
    a.active = shock <= cut.raw;
    if (!a.active) return a;
    a.labor = firm_labor_demand(shock, real_wage, price, p);
    a.capital = capital_labor_ratio(real_wage, p) * a.labor;
    a.value = firm_value(shock, real_wage, price, p);
    // Flow of funds: D_i = D0 + P Z + W L + P (K - K0).
    a.intra_debt = p.debt0 + price * shock + real_wage * price * a.labor +
                   price * (a.capital - p.capital0);
    return a;
}

double labor_supply_max(const ModelParams& p) {
    return std::pow(1.0 / (markup(p) * p.chi), 1.0 / (1.0 + p.varphi));
}

double labor_supply_wage(double labor, double price, const ModelParams& p) {
    require_positive_price(price);
    if (p.debt0 <= 0.0)
        throw std::domain_error(
            "labor supply is inelastic at labor_supply_max when D0 = 0; the wage-setting curve "
            "is undefined");
    const double l_max = labor_supply_max(p);
    if (!(labor > 0.0)) throw std::domain_error("labor must be strictly positive");
    if (!(labor < l_max)) {
        std::ostringstream msg;
        msg << "labor " << labor << " is at or above the wage-setting singularity L_max = " << l_max;
        throw std::domain_error(msg.str());
    }
    const double m = markup(p) * p.chi * std::pow(labor, p.varphi);
    const double big_m = markup(p) * p.chi * std::pow(labor, 1.0 + p.varphi);
    const double wealth = p.shock.cdf(default_cutoff(price, p).raw) * p.debt0 / price;
    return m / (1.0 - big_m) * wealth;
}

double worker_utility(double consumption, double labor, const ModelParams& p) {
    if (!(consumption > 0.0)) throw std::domain_error("consumption must be positive (log utility)");
    return std::log(consumption) -
           p.chi * std::pow(labor, 1.0 + p.varphi) / (1.0 + p.varphi);
}

namespace {

// Shared assembly of an EquilibriumPoint once (w, L) is known.
EquilibriumPoint assemble_point(double price, double real_wage, double labor, WageRegime regime,
                                const ModelParams& p) {
    EquilibriumPoint e;
    e.price = price;
    e.real_wage = real_wage;
    e.nominal_wage = real_wage * price;
    e.labor = labor;
    const double k_ratio = capital_labor_ratio(real_wage, p);
    const double output_per_labor = p.tfp * std::pow(k_ratio, p.alpha);
    e.output = output_per_labor * labor;
    const auto cut = default_cutoff(price, p);
    e.z_star = cut.raw;
    e.active_mass = p.shock.cdf(cut.raw);
    e.default_share = 1.0 - e.active_mass;
    e.regime = regime;
    e.utility_adjust = nan_value();
    e.utility_stay = nan_value();
    e.residual_demand_supply = nan_value();

    const double lambda = constraint_multiplier(real_wage, p);
    e.lambda_ok = lambda >= -kLambdaTol;

    // Aggregate resource gap, with entrepreneur consumption J and household
    // consumption from the budget constraint:
    //   Y - [ (1-xi) Y + K - K0 G(Z*) + C_w ] = xi A k^a L - k L + K0 G(Z*) - w L - G(Z*) D0/P.
    // The recipient of the pledged repayment is unmodeled, so this is
    // reported rather than asserted.
    const double wealth = e.active_mass * p.debt0 / price;
    e.resource_residual = p.xi * output_per_labor * labor - k_ratio * labor +
                          p.capital0 * e.active_mass - real_wage * labor - wealth;
    return e;
}

double worker_utility_at(double price, double real_wage, double labor, const ModelParams& p) {
    const double wealth = p.shock.cdf(default_cutoff(price, p).raw) * p.debt0 / price;
    const double consumption = real_wage * labor + wealth;
    return worker_utility(consumption, labor, p);
}

// Bisection for the D0 > 0 case: excess demand along the wage-setting
// curve, treating wages below the demand validity bound as infinite
// excess demand (the borrowing cap cannot bind there).
double solve_labor_market(double price, const ModelParams& p) {
    const double l_max = labor_supply_max(p);
    const double lo0 = kBracketDelta;
    const double hi0 = l_max - kBracketDelta;
    if (!(hi0 > lo0)) throw std::runtime_error("degenerate labor bracket: L_max too small");

    const auto excess = [&](double labor) -> double {
        const double w = labor_supply_wage(labor, price, p);
        if (!(demand_denominator(w, p) > 0.0)) return std::numeric_limits<double>::infinity();
        return aggregate_labor_demand(w, price, p) - labor;
    };

    double lo = lo0, hi = hi0;
    double f_lo = excess(lo), f_hi = excess(hi);
    if (!(f_lo > 0.0) || !(f_hi < 0.0)) {
        std::ostringstream msg;
        msg << "no equilibrium in validity region at P = " << price << " (excess demand "
            << f_lo << " at L = " << lo << ", " << f_hi << " at L = " << hi << ")";
        throw std::runtime_error(msg.str());
    }
    for (int it = 0; it < kBisectMaxIter && (hi - lo) > kBisectTol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // hit float spacing
        const double f_mid = excess(mid);
        if (f_mid > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// D0 = 0: supply is inelastic at L_max; the wage clears off the demand
// curve alone.
double solve_wage_inelastic(double price, const ModelParams& p) {
    const double l_target = labor_supply_max(p);
    const double w_min = real_wage_validity_bound(p);
    double lo = w_min * (1.0 + 1e-12);
    if (!(aggregate_labor_demand(lo, price, p) > l_target))
        throw std::runtime_error("no equilibrium in validity region: demand below inelastic supply");
    double hi = std::max(1.0, 4.0 * w_min);
    int guard = 0;
    while (aggregate_labor_demand(hi, price, p) > l_target) {
        hi *= 2.0;
        if (++guard > 200) throw std::runtime_error("labor demand does not fall below supply");
    }
    for (int it = 0; it < kBisectMaxIter && (hi - lo) > kBisectTol * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (aggregate_labor_demand(mid, price, p) > l_target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

EquilibriumPoint flexible_equilibrium(double price, const ModelParams& p) {
    require_positive_price(price);
    const auto cut = default_cutoff(price, p);
    if (!(p.shock.cdf(cut.raw) > 0.0))
        throw std::runtime_error("no active firms: default cutoff below the shock support");

    double real_wage = 0.0, labor = 0.0;
    if (p.debt0 > 0.0) {
        labor = solve_labor_market(price, p);
        real_wage = labor_supply_wage(labor, price, p);
    } else {
        labor = labor_supply_max(p);
        real_wage = solve_wage_inelastic(price, p);
    }

    EquilibriumPoint e = assemble_point(price, real_wage, labor, WageRegime::kAdjusted, p);
    e.residual_demand_supply = std::fabs(aggregate_labor_demand(real_wage, price, p) - labor);
    if (!(e.residual_demand_supply < kResidualLimit)) {
        std::ostringstream msg;
        msg << "equilibrium residual " << e.residual_demand_supply << " exceeds " << kResidualLimit
            << " at P = " << price;
        throw std::runtime_error(msg.str());
    }
    if (!e.lambda_ok) {
        std::ostringstream msg;
        msg << "unconstrained firm encountered: borrowing-constraint multiplier "
            << constraint_multiplier(real_wage, p) << " < 0 at real wage " << real_wage
            << " (P = " << price << ")";
        throw std::runtime_error(msg.str());
    }
    e.utility_adjust = worker_utility_at(price, real_wage, labor, p);
    return e;
}

EquilibriumPoint rigid_allocation(double price, double nominal_wage0, const ModelParams& p) {
    require_positive_price(price);
    if (!(nominal_wage0 > 0.0)) throw std::domain_error("preset nominal wage must be positive");
    const double real_wage = nominal_wage0 / price;
    const double labor = aggregate_labor_demand(real_wage, price, p);  // validity enforced inside
    EquilibriumPoint e = assemble_point(price, real_wage, labor, WageRegime::kRigid, p);
    e.utility_stay = worker_utility_at(price, real_wage, labor, p);  // throws if C <= 0
    e.residual_demand_supply = 0.0;  // labor sits on the demand curve by construction
    return e;
}

EquilibriumPoint menu_cost_equilibrium(double price, const ModelParams& p) {
    if (!(p.wage0 > 0.0))
        throw std::invalid_argument("menu_cost_equilibrium: wage0 unresolved; call with_reference_wage");
    EquilibriumPoint flex = flexible_equilibrium(price, p);
    EquilibriumPoint rigid = rigid_allocation(price, p.wage0, p);
    const double utility_adjust = flex.utility_adjust - p.psi;
    const double utility_stay = rigid.utility_stay;

    // Exact tie keeps the preset wage: adjustment must strictly pay.
    EquilibriumPoint out = (utility_adjust > utility_stay) ? flex : rigid;
    out.regime = (utility_adjust > utility_stay) ? WageRegime::kAdjusted : WageRegime::kRigid;
    out.utility_adjust = utility_adjust;
    out.utility_stay = utility_stay;
    return out;
}

double resolve_reference_wage(const ModelParams& p) {
    return flexible_equilibrium(1.0, p).nominal_wage;
}

ModelParams with_reference_wage(ModelParams p) {
    if (!(p.wage0 > 0.0)) p.wage0 = resolve_reference_wage(p);
    return p;
}

std::vector<SweepRow> sweep(const std::vector<double>& price_grid, const ModelParams& p,
                            SweepMode mode) {
    if (price_grid.empty()) throw std::invalid_argument("sweep: empty price grid");
    for (std::size_t i = 0; i < price_grid.size(); ++i) {
        if (!(price_grid[i] > 0.0)) throw std::invalid_argument("sweep: prices must be positive");
        if (i > 0 && !(price_grid[i] > price_grid[i - 1]))
            throw std::invalid_argument("sweep: price grid must be strictly increasing");
    }
    std::vector<SweepRow> rows;
    rows.reserve(price_grid.size());
    for (double price : price_grid) {
        SweepRow row;
        row.price = price;
        try {
            row.point = (mode == SweepMode::kFlexible) ? flexible_equilibrium(price, p)
                                                       : menu_cost_equilibrium(price, p);
        } catch (const std::exception& ex) {
            row.error = ex.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<ComparativeRow> comparative_statics_debt(const std::vector<double>& price_grid,
                                                     const std::vector<double>& debt_levels,
                                                     double fixed_real_wage, const ModelParams& p) {
    for (double d : debt_levels)
        if (!(d >= 0.0)) throw std::invalid_argument("comparative_statics_debt: D0 must be >= 0");
    require_valid_demand_wage(fixed_real_wage, p);

    std::vector<ComparativeRow> rows;
    rows.reserve(price_grid.size() * debt_levels.size());
    for (double d0 : debt_levels) {
        ModelParams q = p;
        q.debt0 = d0;
        for (double price : price_grid) {
            ComparativeRow row;
            row.price = price;
            row.debt0 = d0;
            const double h = 1e-4 * price;
            row.demand_fixed_wage = aggregate_labor_demand(fixed_real_wage, price, q);
            row.demand_fixed_wage_ahead = aggregate_labor_demand(fixed_real_wage, price + h, q);
            try {
                row.equilibrium_labor = flexible_equilibrium(price, q).labor;
            } catch (const std::exception& ex) {
                row.error = ex.what();
            }
            rows.push_back(std::move(row));
        }
    }

    // Demand response to P must be (weakly) stronger under higher D0.
    const std::size_t np = price_grid.size();
    for (std::size_t i = 0; i < debt_levels.size(); ++i) {
        for (std::size_t j = 0; j < debt_levels.size(); ++j) {
            if (!(debt_levels[i] > debt_levels[j])) continue;
            for (std::size_t k = 0; k < np; ++k) {
                const auto& hi_row = rows[i * np + k];
                const auto& lo_row = rows[j * np + k];
                const double inc_hi = hi_row.demand_fixed_wage_ahead - hi_row.demand_fixed_wage;
                const double inc_lo = lo_row.demand_fixed_wage_ahead - lo_row.demand_fixed_wage;
                if (inc_hi - inc_lo < -1e-9) {
                    std::ostringstream msg;
                    msg << "debt comparative statics violated at P = " << price_grid[k]
                        << ": demand increment " << inc_hi << " under D0 = " << debt_levels[i]
                        << " vs " << inc_lo << " under D0 = " << debt_levels[j];
                    throw std::runtime_error(msg.str());
                }
            }
        }
    }
    return rows;
}

}  // namespace dilab::model
