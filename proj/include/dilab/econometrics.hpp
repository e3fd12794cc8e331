#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <vector>

#include "dilab/panel.hpp"

namespace dilab::econ {

struct RegressionResult {
    std::vector<std::string> names;
    Eigen::VectorXd coef;
    Eigen::MatrixXd vcov;  // cluster-robust (or HC1 when unclustered)
    std::vector<double> se;
    std::vector<double> t_stat;
    std::vector<double> p_value;
    std::size_t n_obs = 0;
    std::size_t n_clusters = 0;
    std::size_t n_singleton_clusters = 0;
    std::size_t k_params = 0;  // slopes plus absorbed fixed-effect parameters
    double r2_within = 0.0;
    Eigen::VectorXd residuals;
    double first_stage_f = 0.0;  // IV only; NaN otherwise
    bool weak_instruments = false;
    double joint_f = 0.0;  // joint test on designated coefficients; NaN if unused
    double joint_p = 0.0;
    std::vector<std::string> notes;

    std::string to_csv() const;     // term,estimate,se,t,p
    std::string to_report() const;  // nested plain-text report
};

// --- core estimators -------------------------------------------------------

// Two-way fixed-effects OLS: absorbs unit and time-group intercepts by
// alternating demeaning (tolerance 1e-12), falls back to explicit dummy
// partialling below 5,000 rows if the sweep fails to converge. Covariance
// is the Liang-Zeger cluster sandwich with small-sample factor
// (G/(G-1)) ((N-1)/(N-K)); with every observation its own cluster this
// reduces exactly to HC1. Empty cluster vector means per-observation
// clusters.
RegressionResult within_fe_ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                               const std::vector<long>& unit_ids,
                               const std::vector<long>& time_ids,
                               const std::vector<long>& cluster_ids,
                               std::vector<std::string> names);

// Cross-sectional OLS with an intercept prepended and HC1 covariance.
RegressionResult cross_section_ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                                   std::vector<std::string> names);

// Two-stage least squares with optional fixed-effect absorption. The
// covariance is the IV sandwich on second-stage scores (projected
// regressors times structural residuals), not naive second-stage OLS.
// Reports the smallest first-stage F across endogenous columns (joint
// significance of excluded instruments) and flags F < 10.
RegressionResult tsls(const Eigen::VectorXd& y, const Eigen::MatrixXd& X_endog,
                      const Eigen::MatrixXd& Z_excluded, const Eigen::MatrixXd& W_exog,
                      const std::vector<long>& unit_ids, const std::vector<long>& time_ids,
                      const std::vector<long>& cluster_ids, std::vector<std::string> endog_names,
                      std::vector<std::string> exog_names);

// --- panel-aware wrappers ----------------------------------------------------

struct EventStudyPoint {
    int year = 0;
    double beta = 0.0;
    double se = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
};

struct EventStudyResult {
    std::vector<EventStudyPoint> path;
    RegressionResult reg;

    std::string path_to_csv() const;  // year,beta,se,ci_lo,ci_hi
};

// Dynamic leverage-by-year interactions against a benchmark year; controls
// are interacted with the same year indicators (benchmark excluded).
EventStudyResult event_study(const panel::Panel& data, int base_year,
                             const std::vector<std::string>& controls, bool industry_year_effects);

// Single Leverage x Post interaction; controls interacted with Post.
RegressionResult did(const panel::Panel& data, int post_year,
                     const std::vector<std::string>& controls, bool industry_year_effects);

// Regression of the outcome on the contemporaneous and lagged debt-erosion
// shock built from an annual price path, with a joint Wald/F test on the
// shock coefficients.
struct AnnualPrices {
    std::vector<int> years;
    std::vector<double> levels;

    double level_for(int year) const;  // throws if absent
    bool has(int year) const;
};

RegressionResult debt_inflation_regression(const panel::Panel& data, const AnnualPrices& prices,
                                           int base_year, int lags,
                                           const std::vector<std::string>& controls,
                                           bool industry_year_effects);

// Cross-sectional long difference of an outcome column between two years,
// regressed on initial leverage and firm controls with HC1 errors; firms
// missing either endpoint are dropped (count noted). Optionally controls
// for the pre-period outcome change (lagged dependent variable).
RegressionResult long_difference(const panel::Panel& data, const std::string& outcome_col,
                                 int start_year, int end_year,
                                 const std::vector<std::string>& controls, bool lagged_dep_var,
                                 int pre_start_year);

// --- asset-pricing block -----------------------------------------------------

struct FamaMacbethResult {
    std::vector<std::string> names;
    Eigen::VectorXd mean_coef;
    std::vector<double> se;      // time-series sd of slopes / sqrt(T)
    std::vector<double> t_stat;
    std::vector<double> p_value;
    std::size_t n_periods_used = 0;
    std::size_t n_periods_skipped = 0;
    std::vector<Eigen::VectorXd> per_period_coef;

    std::string to_csv() const;
};

// Per-period cross-sectional OLS slopes averaged over time; an intercept
// is prepended. Rank-deficient periods are skipped and counted.
FamaMacbethResult fama_macbeth(const std::vector<long>& period_ids, const Eigen::VectorXd& y,
                               const Eigen::MatrixXd& X, std::vector<std::string> names);

// Full-sample market betas (time-series regression on the equal-weighted
// cross-sectional mean return), constant within firm.
std::vector<double> market_betas(const std::vector<panel::ReturnRow>& rows,
                                 std::vector<long>& firm_ids_out);

// Monthly-return wrapper: returns on lagged leverage, size, market-to-book
// and optionally the full-sample market beta.
FamaMacbethResult fama_macbeth_returns(const std::vector<panel::ReturnRow>& rows,
                                       bool use_market_beta);

struct PortfolioResult {
    int n_buckets = 0;
    std::vector<double> mean_characteristic;  // time-average of per-period bucket means
    std::vector<double> mean_return;
    std::vector<double> se_return;  // time-series SE of the per-period bucket mean
    double hml_mean = 0.0;
    double hml_se = 0.0;
    std::size_t n_periods = 0;

    std::string to_csv() const;
};

// Per-period sort into k buckets by the lagged characteristic (rank split,
// ties to the lower bucket by (value, firm id)), equal-weighted mean log
// return per bucket, and the high-minus-low spread.
PortfolioResult portfolio_sort(const std::vector<panel::ReturnRow>& rows, int k = 5);

// --- binned means --------------------------------------------------------------

struct BinRow {
    int bin = 0;
    double mean_x = 0.0;
    double mean_y = 0.0;
    std::size_t count = 0;
};

// Residualizes y and x on controls and group intercepts (Frisch-Waugh),
// recenters at the grand means, then reports equal-count bin means of the
// residualized pair.
std::vector<BinRow> binned_means(const Eigen::VectorXd& x, const Eigen::VectorXd& y, int n_bins,
                                 const Eigen::MatrixXd& controls,
                                 const std::vector<long>& group_ids);

std::string bins_to_csv(const std::vector<BinRow>& bins);

}  // namespace dilab::econ
