#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dilab::panel {

// Generator settings for the synthetic firm panel used to exercise the
// estimators. The outcome follows
//   y_it = a_i + d_{s,t} + beta_true * leverage_i * 1{t >= event_year} + e_it
// with leverage drawn once per firm from a truncated normal on [0,1].
struct PanelConfig {
    long n_firms = 700;
    int year_start = 1914;
    int year_end = 1923;
    int event_year = 1920;
    double beta_true = 41.6;
    double leverage_mean = 0.43;
    double leverage_sd = 0.18;
    double firm_effect_sd = 50.0;
    long n_industries = 12;
    double industry_year_sd = 5.0;
    double noise_sd = 10.0;
    double gap_prob = 0.0;  // probability a firm-year goes unreported
    std::uint64_t seed = 1;

    void validate() const;
};

// One firm-year record. Optional fields use NaN for "not reported";
// missing firm-years are missing rows, never sentinel rows.
struct FirmYear {
    long firm_id = 0;
    long industry_id = 0;
    int year = 0;
    double leverage_1917 = 0.0;
    double log_employment_x100 = 0.0;
    double interest_share = 0.0;
    double production_share = 0.0;
    double size = 0.0;  // log assets
    double fixed_share = 0.0;
    double fcf_assets = 0.0;
    double margin = 0.0;
    double tobins_q = 0.0;
    double ret = 0.0;  // serialized as the optional 'return' column
};

using Panel = std::vector<FirmYear>;

Panel simulate_panel(const PanelConfig& config);

// Generator settings for the synthetic monthly return panel:
//   r_it = market_t + (hml_annual / 0.8) * (u_i - 0.5) / 12 + noise,
// where u_i is firm i's leverage rank scaled to (0,1). The 0.8 factor is
// the top-minus-bottom quintile gap in mean scaled rank, so the planted
// high-minus-low spread equals hml_annual per year.
struct ReturnsConfig {
    long n_firms = 600;
    int year_start = 1919;
    int year_end = 1923;
    double hml_annual = 0.10;
    double market_mean_annual = -0.10;
    double market_sd_monthly = 0.04;
    double noise_sd_monthly = 0.03;
    double leverage_mean = 0.43;
    double leverage_sd = 0.18;
    std::uint64_t seed = 1;

    void validate() const;
};

struct ReturnRow {
    long firm_id = 0;
    int year = 0;
    int month = 0;       // 1..12
    int period = 0;      // serial month index from the sample start
    double ret = 0.0;    // monthly log return
    double leverage_lag = 0.0;
    double size_lag = 0.0;
    double mtb_lag = 0.0;
};

std::vector<ReturnRow> simulate_returns(const ReturnsConfig& config);

std::string returns_to_csv(const std::vector<ReturnRow>& rows);
std::vector<ReturnRow> returns_from_csv_text(const std::string& text, const std::string& origin);

// --- cleaning rules -------------------------------------------------------

// Clamps values to within-group percentile bounds. Nearest-rank order
// statistics: lower bound at index ceil(p_lo * n), upper bound mirrored
// from the top at n + 1 - ceil((1 - p_hi) * n) (1-based), so the 1%/99%
// rule leaves groups of 100 or fewer untouched. Idempotent.
std::vector<double> winsorize_by_group(const std::vector<double>& values,
                                       const std::vector<long>& group_ids, double p_lo = 0.01,
                                       double p_hi = 0.99);

// Drops entries strictly above the nearest-rank p-th percentile
// (ceil(p * n)-th order statistic). Returns the keep mask.
std::vector<bool> trim_above(const std::vector<double>& values, double p = 0.95);

// --- balance-sheet discrepancy rule ---------------------------------------

struct BalanceRow {
    long firm_id = 0;
    int year = 0;
    double sum_assets = 0.0;
    double sum_liabilities_equity = 0.0;
    double reported_total = 0.0;
};

struct BalanceFlag {
    long firm_id = 0;
    int year = 0;
    bool flagged = false;     // some pairwise relative difference > 20%
    bool degenerate = false;  // all three totals zero
};

// Flags a row when any pairwise relative difference among the three totals
// exceeds 0.20, relative to the pairwise maximum.
std::vector<BalanceFlag> balance_check(const std::vector<BalanceRow>& rows);

// --- I/O -------------------------------------------------------------------

extern const char* const kPanelCsvHeader;

std::string panel_to_csv(const Panel& panel);
Panel panel_from_csv_text(const std::string& text, const std::string& origin);
Panel load_panel(const std::string& path);
void save_panel(const Panel& panel, const std::string& path);

}  // namespace dilab::panel
