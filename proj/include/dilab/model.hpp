#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dilab/distribution.hpp"

namespace dilab::model {

// Primitives of the one-period debt-deflation economy: entrepreneurs with
// initial capital and nominal debt facing a capital-quality shock, a
// working-capital borrowing limit, CES labor varieties with a preset
// nominal wage, and a menu cost on wage adjustment.
struct ModelParams {
    double alpha = 0.5;     // capital share, in (0,1)
    double tfp = 2.0;       // A, total factor productivity, > 0
    double xi = 0.05;       // pledgeable output share, in (0,1)
    double epsilon = 2.0;   // labor-variety elasticity, > 1
    double chi = 1.0;       // labor disutility weight, > 0
    double varphi = 1.0;    // inverse Frisch elasticity, >= 0
    double psi = 0.01;      // menu cost in utility units, >= 0
    double capital0 = 2.0;  // K0, initial capital, > 0
    double debt0 = 1.0;     // D0, initial nominal debt, >= 0
    double wage0 = 0.0;     // W0, preset nominal wage; resolve before use
    ShockDistribution shock = ShockDistribution::uniform(0.0, 2.0);

    // Validates everything except wage0 (which may still be unresolved).
    void validate_core() const;
    // Full validation including wage0 > 0.
    void validate() const;
};

enum class WageRegime { kAdjusted, kRigid };

const char* regime_name(WageRegime r);

// One solved economy at a given price level.
struct EquilibriumPoint {
    double price = 0.0;         // P
    double nominal_wage = 0.0;  // W
    double real_wage = 0.0;     // w = W/P
    double labor = 0.0;         // aggregate L
    double output = 0.0;        // aggregate Y of active firms
    double z_star = 0.0;        // default cutoff K0 - D0/P, unclamped
    double default_share = 0.0;
    double active_mass = 0.0;  // G(Z*)
    WageRegime regime = WageRegime::kAdjusted;
    double utility_adjust = 0.0;  // worker utility if adjusting (net of psi in menu-cost runs)
    double utility_stay = 0.0;    // worker utility at the preset wage; NaN if not evaluated
    bool lambda_ok = true;        // borrowing constraint multiplier >= 0 for active firms
    double residual_demand_supply = 0.0;
    double resource_residual = 0.0;  // reported, not asserted
};

struct FirmAllocation {
    double shock = 0.0;
    bool active = false;
    double capital = 0.0;
    double labor = 0.0;
    double value = 0.0;       // J = (1-xi) A K^a L^(1-a)
    double intra_debt = 0.0;  // D_i from the flow of funds
};

struct DefaultCutoff {
    double raw = 0.0;      // K0 - D0/P
    double clamped = 0.0;  // clipped to the shock support for CDF use
};

// --- firm block ---------------------------------------------------------

DefaultCutoff default_cutoff(double price, const ModelParams& p);

// Share of firms with negative net worth, 1 - G(Z*). Nonincreasing in P.
double default_share(double price, const ModelParams& p);

double capital_labor_ratio(double real_wage, const ModelParams& p);

// Denominator of constrained labor demand:
//   w/(1-alpha) - xi * A * ((alpha/(1-alpha)) w)^alpha.
// Demand is well defined only where this is strictly positive.
double demand_denominator(double real_wage, const ModelParams& p);

// Lowest real wage with a positive demand denominator:
//   ((1-alpha) xi A (alpha/(1-alpha))^alpha)^(1/(1-alpha)).
double real_wage_validity_bound(const ModelParams& p);

// Borrowing-constraint multiplier, identical across active firms at a
// common real wage; negative means the constraint does not bind.
double constraint_multiplier(double real_wage, const ModelParams& p);

double firm_labor_demand(double shock, double real_wage, double price, const ModelParams& p);

double aggregate_labor_demand(double real_wage, double price, const ModelParams& p);

double firm_value(double shock, double real_wage, double price, const ModelParams& p);

FirmAllocation firm_allocation(double shock, double real_wage, double price, const ModelParams& p);

// --- household block ----------------------------------------------------

// Labor level at which the wage-setting curve diverges.
double labor_supply_max(const ModelParams& p);

// Real wage on the workers' wage-setting curve at aggregate labor L.
// Requires 0 < L < labor_supply_max and D0 > 0 (with D0 = 0 supply is
// inelastic at labor_supply_max and the wage is read off labor demand).
double labor_supply_wage(double labor, double price, const ModelParams& p);

double worker_utility(double consumption, double labor, const ModelParams& p);

// --- equilibrium --------------------------------------------------------

EquilibriumPoint flexible_equilibrium(double price, const ModelParams& p);

// Allocation when the nominal wage stays at nominal_wage0; labor is read
// off the demand curve at the implied real wage.
EquilibriumPoint rigid_allocation(double price, double nominal_wage0, const ModelParams& p);

// Compares worker utility from adjusting (flexible equilibrium net of the
// menu cost) against staying at wage0; exact ties keep the preset wage.
EquilibriumPoint menu_cost_equilibrium(double price, const ModelParams& p);

// Flexible-equilibrium nominal wage at P = 1, the natural preset wage.
double resolve_reference_wage(const ModelParams& p);

// Returns a copy with wage0 filled from resolve_reference_wage when unset.
ModelParams with_reference_wage(ModelParams p);

// --- sweeps -------------------------------------------------------------

enum class SweepMode { kFlexible, kMenuCost };

struct SweepRow {
    double price = 0.0;
    std::optional<EquilibriumPoint> point;
    std::string error;  // nonempty when the solve failed
};

std::vector<SweepRow> sweep(const std::vector<double>& price_grid, const ModelParams& p,
                            SweepMode mode);

struct ComparativeRow {
    double price = 0.0;
    double debt0 = 0.0;
    double demand_fixed_wage = 0.0;       // L^d at the fixed real wage
    double demand_fixed_wage_ahead = 0.0;  // same at P + h, h = 1e-4 P
    std::optional<double> equilibrium_labor;
    std::string error;
};

// Fixed-real-wage labor demand and equilibrium labor over a (P, D0) grid.
// Verifies that the demand response to P is weakly stronger for higher
// initial debt; throws if the ordering fails beyond tolerance.
std::vector<ComparativeRow> comparative_statics_debt(const std::vector<double>& price_grid,
                                                     const std::vector<double>& debt_levels,
                                                     double fixed_real_wage, const ModelParams& p);

}  // namespace dilab::model
