#pragma once

#include <string>
#include <vector>

#include "dilab/dates.hpp"

namespace dilab::shocks {

enum class Frequency { kDaily, kMonthly, kQuarterly, kAnnual };

Frequency frequency_from_string(const std::string& s);
const char* frequency_name(Frequency f);

struct PricePoint {
    Date date;
    double level = 0.0;
};

// Dated price (or wage) level series; dates strictly increasing, levels
// strictly positive.
struct PricePath {
    std::vector<PricePoint> points;
    Frequency frequency = Frequency::kMonthly;

    void validate() const;
    static PricePath from_csv(const std::string& path, Frequency f);
    std::string to_csv() const;
};

struct DatedValue {
    Date date;
    double value = 0.0;
};

std::string series_to_csv(const std::vector<DatedValue>& series);

// Initial balance-sheet position used to scale debt erosion.
struct LeverageBase {
    std::string firm_id;
    double liabilities = 0.0;  // D, nominal
    double equity = 0.0;       // E, book
    int base_year = 1917;

    void validate() const;
    double leverage() const { return liabilities / (liabilities + equity); }
};

// Cumulative debt-erosion shock: leverage * pi / (1 + pi), the reduction in
// real debt relative to initial assets after cumulative inflation pi.
double debt_inflation(double leverage, double pi);

// One shock value per price observation, with inflation measured against
// the last level observed in the base year.
std::vector<DatedValue> debt_inflation_series(const LeverageBase& base, const PricePath& prices);

struct CrossSectionStats {
    Date date;
    double mean = 0.0;
    double p10 = 0.0;
    double p90 = 0.0;
};

// Mean / 10th / 90th percentile of the shock across firms, per date.
std::vector<CrossSectionStats> debt_inflation_stats(const std::vector<LeverageBase>& firms,
                                                    const PricePath& prices);

// Annualized one-month forward premium 12 (F - S) / S.
double forward_premium(double forward_rate, double spot_rate);

// 100 * (ln P_t - ln P_{t-h}) aligned to date t.
std::vector<DatedValue> log_inflation(const PricePath& prices, std::size_t horizon);

// 100 * ln((P_t/defl_t + D_t/defl_t) / (P_{t-1}/defl_{t-1})).
double real_total_log_return(double price_t, double dividend_t, double price_prev,
                             double deflator_t, double deflator_prev);

// Days elapsed since the most recent strict increase in the level; 0 at an
// increase; observations before the first increase are omitted.
std::vector<DatedValue> duration_since_last_increase(const PricePath& series);

}  // namespace dilab::shocks
