#include "dilab/panel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dilab/csv.hpp"
#include "dilab/rng.hpp"
#include "dilab/stats.hpp"

namespace dilab::panel {

namespace {

double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// Truncated-normal draw on [0,1] by rejection; the substream makes it
// deterministic per (seed, firm).
double truncated_normal01(Rng& rng, double mean, double sd) {
    if (sd == 0.0) return clamp01(mean);
    for (int i = 0; i < 1000; ++i) {
        const double v = rng.normal(mean, sd);
        if (v >= 0.0 && v <= 1.0) return v;
    }
    return clamp01(mean);
}

}  // namespace

void PanelConfig::validate() const {
    if (n_firms < 2) throw std::invalid_argument("panel config: n_firms must be >= 2");
    if (year_end < year_start) throw std::invalid_argument("panel config: year range inverted");
    if (event_year <= year_start || event_year > year_end)
        throw std::invalid_argument("panel config: event year must lie inside the year range");
    if (leverage_sd < 0.0 || firm_effect_sd < 0.0 || industry_year_sd < 0.0 || noise_sd < 0.0)
        throw std::invalid_argument("panel config: standard deviations must be >= 0");
    if (!(leverage_mean >= 0.0 && leverage_mean <= 1.0))
        throw std::invalid_argument("panel config: leverage mean must lie in [0,1]");
    if (gap_prob < 0.0 || gap_prob >= 1.0)
        throw std::invalid_argument("panel config: gap probability must lie in [0,1)");
    if (n_industries < 1) throw std::invalid_argument("panel config: n_industries must be >= 1");
}

Panel simulate_panel(const PanelConfig& config) {
    config.validate();
    const int n_years = config.year_end - config.year_start + 1;

    // Industry-year shocks from their own substreams so firm draws never
    // shift them.
    std::vector<std::vector<double>> industry_year(config.n_industries,
                                                   std::vector<double>(n_years, 0.0));
    for (long s = 0; s < config.n_industries; ++s) {
        Rng rng = Rng::substream(config.seed, "industry_year", static_cast<std::uint64_t>(s));
        for (int t = 0; t < n_years; ++t)
            industry_year[s][t] = rng.normal(0.0, config.industry_year_sd);
    }

    Panel panel;
    panel.reserve(static_cast<std::size_t>(config.n_firms) * n_years);
    for (long i = 0; i < config.n_firms; ++i) {
        Rng rng = Rng::substream(config.seed, "firm", static_cast<std::uint64_t>(i));
        const long industry = i % config.n_industries;

        // Leverage correlated with size, as in the data: larger firms
        // borrow more.
        const double z_size = rng.normal();
        const double z_lev = 0.3 * z_size + std::sqrt(1.0 - 0.09) * rng.normal();
        double leverage = config.leverage_mean + config.leverage_sd * z_lev;
        if (leverage < 0.0 || leverage > 1.0)
            leverage = truncated_normal01(rng, config.leverage_mean, config.leverage_sd);

        const double firm_effect = 500.0 + rng.normal(0.0, config.firm_effect_sd);
        const double size = 15.0 + 1.5 * z_size;
        const double fixed_share = clamp01(rng.normal(0.45, 0.15));
        const double fcf_assets = rng.normal(0.06, 0.08);
        const double margin = rng.normal(0.10, 0.07);
        const double tobins_q = std::max(0.2, rng.normal(1.1, 0.3));
        const double interest_share = clamp01(rng.normal(0.03, 0.02) + 0.08 * leverage);
        const double production_share = clamp01(rng.normal(0.65, 0.10));

        for (int t = 0; t < n_years; ++t) {
            const int year = config.year_start + t;
            const double gap_draw = rng.uniform();
            const double noise = rng.normal(0.0, config.noise_sd);
            if (gap_draw < config.gap_prob) continue;  // unreported firm-year
            FirmYear row;
            row.firm_id = i;
            row.industry_id = industry;
            row.year = year;
            row.leverage_1917 = leverage;
            const double post = (year >= config.event_year) ? 1.0 : 0.0;
            row.log_employment_x100 = firm_effect + industry_year[industry][t] +
                                      config.beta_true * leverage * post + noise;
            row.interest_share = interest_share;
            row.production_share = production_share;
            row.size = size;
            row.fixed_share = fixed_share;
            row.fcf_assets = fcf_assets;
            row.margin = margin;
            row.tobins_q = tobins_q;
            row.ret = nan_value();
            panel.push_back(row);
        }
    }
    return panel;
}

void ReturnsConfig::validate() const {
    if (n_firms < 5) throw std::invalid_argument("returns config: n_firms must be >= 5");
    if (year_end < year_start) throw std::invalid_argument("returns config: year range inverted");
    if (market_sd_monthly < 0.0 || noise_sd_monthly < 0.0 || leverage_sd < 0.0)
        throw std::invalid_argument("returns config: standard deviations must be >= 0");
}

std::vector<ReturnRow> simulate_returns(const ReturnsConfig& config) {
    config.validate();
    const int n_months = (config.year_end - config.year_start + 1) * 12;

    std::vector<double> leverage(config.n_firms);
    std::vector<double> size_lag(config.n_firms);
    std::vector<double> mtb_lag(config.n_firms);
    for (long i = 0; i < config.n_firms; ++i) {
        Rng rng = Rng::substream(config.seed, "ret_firm", static_cast<std::uint64_t>(i));
        leverage[i] = truncated_normal01(rng, config.leverage_mean, config.leverage_sd);
        size_lag[i] = rng.normal(15.0, 1.5);
        mtb_lag[i] = std::max(0.1, rng.normal(1.0, 0.4));
    }

    // Scaled leverage ranks in (0,1); ties broken by firm id.
    std::vector<long> order(config.n_firms);
    for (long i = 0; i < config.n_firms; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](long a, long b) {
        if (leverage[a] != leverage[b]) return leverage[a] < leverage[b];
        return a < b;
    });
    std::vector<double> rank_scaled(config.n_firms, 0.0);
    for (long r = 0; r < config.n_firms; ++r)
        rank_scaled[order[r]] = (static_cast<double>(r) + 0.5) / static_cast<double>(config.n_firms);

    std::vector<double> market(n_months);
    {
        Rng rng = Rng::substream(config.seed, "market", 0);
        for (int t = 0; t < n_months; ++t)
            market[t] = config.market_mean_annual / 12.0 + rng.normal(0.0, config.market_sd_monthly);
    }

    const double slope_monthly = config.hml_annual / 0.8 / 12.0;
    std::vector<ReturnRow> rows;
    rows.reserve(static_cast<std::size_t>(config.n_firms) * n_months);
    for (long i = 0; i < config.n_firms; ++i) {
        Rng rng = Rng::substream(config.seed, "ret_noise", static_cast<std::uint64_t>(i));
        for (int t = 0; t < n_months; ++t) {
            ReturnRow row;
            row.firm_id = i;
            row.year = config.year_start + t / 12;
            row.month = t % 12 + 1;
            row.period = t;
            row.ret = market[t] + slope_monthly * (rank_scaled[i] - 0.5) +
                      rng.normal(0.0, config.noise_sd_monthly);
            row.leverage_lag = leverage[i];
            row.size_lag = size_lag[i];
            row.mtb_lag = mtb_lag[i];
            rows.push_back(row);
        }
    }
    return rows;
}

std::string returns_to_csv(const std::vector<ReturnRow>& rows) {
    std::ostringstream out;
    out << "firm_id,year,month,period,return,leverage_lag,size_lag,mtb_lag\n";
    for (const auto& r : rows) {
        out << r.firm_id << "," << r.year << "," << r.month << "," << r.period << ","
            << csv::format_double(r.ret) << "," << csv::format_double(r.leverage_lag) << ","
            << csv::format_double(r.size_lag) << "," << csv::format_double(r.mtb_lag) << "\n";
    }
    return out.str();
}

std::vector<ReturnRow> returns_from_csv_text(const std::string& text, const std::string& origin) {
    const auto table = csv::parse(text, origin);
    const char* const required[] = {"firm_id", "year",         "month",    "period",
                                    "return",  "leverage_lag", "size_lag", "mtb_lag"};
    std::map<std::string, std::size_t> cols;
    for (const char* name : required) {
        const auto c = table.column(name);
        if (!c) throw std::runtime_error(origin + ": missing required column '" + std::string(name) + "'");
        cols[name] = *c;
    }
    std::vector<ReturnRow> rows;
    rows.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& r = table.rows[i];
        const std::size_t line = table.line_numbers[i];
        ReturnRow row;
        row.firm_id = csv::parse_long(r[cols["firm_id"]], line, "firm_id");
        row.year = static_cast<int>(csv::parse_long(r[cols["year"]], line, "year"));
        row.month = static_cast<int>(csv::parse_long(r[cols["month"]], line, "month"));
        row.period = static_cast<int>(csv::parse_long(r[cols["period"]], line, "period"));
        row.ret = csv::parse_double(r[cols["return"]], line, "return");
        row.leverage_lag = csv::parse_double(r[cols["leverage_lag"]], line, "leverage_lag");
        row.size_lag = csv::parse_double(r[cols["size_lag"]], line, "size_lag");
        row.mtb_lag = csv::parse_double(r[cols["mtb_lag"]], line, "mtb_lag");
        rows.push_back(row);
    }
    return rows;
}

// --- cleaning --------------------------------------------------------------

std::vector<double> winsorize_by_group(const std::vector<double>& values,
                                       const std::vector<long>& group_ids, double p_lo,
                                       double p_hi) {
    if (values.empty()) throw std::invalid_argument("winsorize_by_group: empty input");
    if (values.size() != group_ids.size())
        throw std::invalid_argument("winsorize_by_group: size mismatch");
    if (!(p_lo >= 0.0 && p_lo <= p_hi && p_hi <= 1.0))
        throw std::invalid_argument("winsorize_by_group: need 0 <= p_lo <= p_hi <= 1");

    std::map<long, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < values.size(); ++i) groups[group_ids[i]].push_back(i);

    std::vector<double> out = values;
    for (const auto& [gid, idx] : groups) {
        std::vector<double> sorted;
        sorted.reserve(idx.size());
        for (auto i : idx) sorted.push_back(values[i]);
        std::sort(sorted.begin(), sorted.end());
        const double n = static_cast<double>(sorted.size());
        const auto lo_rank = static_cast<std::size_t>(std::ceil(p_lo * n));
        const auto hi_back = static_cast<std::size_t>(std::ceil((1.0 - p_hi) * n));
        const double lo_bound = sorted[lo_rank > 0 ? lo_rank - 1 : 0];
        const double hi_bound = hi_back > 0 ? sorted[sorted.size() - hi_back] : sorted.back();
        for (auto i : idx) out[i] = std::clamp(out[i], lo_bound, hi_bound);
    }
    return out;
}

std::vector<bool> trim_above(const std::vector<double>& values, double p) {
    if (values.empty()) throw std::invalid_argument("trim_above: empty input");
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("trim_above: p must lie in (0,1]");
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const auto rank =
        static_cast<std::size_t>(std::ceil(p * static_cast<double>(sorted.size())));
    const double threshold = sorted[std::max<std::size_t>(rank, 1) - 1];
    std::vector<bool> keep(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) keep[i] = !(values[i] > threshold);
    return keep;
}

std::vector<BalanceFlag> balance_check(const std::vector<BalanceRow>& rows) {
    std::vector<BalanceFlag> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        if (r.sum_assets < 0.0 || r.sum_liabilities_equity < 0.0 || r.reported_total < 0.0)
            throw std::invalid_argument("balance_check: totals must be nonnegative");
        BalanceFlag f;
        f.firm_id = r.firm_id;
        f.year = r.year;
        const double a = r.sum_assets, b = r.sum_liabilities_equity, c = r.reported_total;
        if (a == 0.0 && b == 0.0 && c == 0.0) {
            f.degenerate = true;
            f.flagged = true;
        } else {
            const auto differs = [](double x, double y) {
                const double mx = std::max(x, y);
                if (mx == 0.0) return false;
                return std::fabs(x - y) / mx > 0.20;
            };
            f.flagged = differs(a, b) || differs(a, c) || differs(b, c);
        }
        out.push_back(f);
    }
    return out;
}

// --- I/O ---------------------------------------------------------------------

const char* const kPanelCsvHeader =
    "firm_id,industry_id,year,leverage_1917,log_employment_x100,interest_share,production_share,"
    "size,fixed_share,fcf_assets,margin,tobins_q,return";

namespace {
std::string field_or_empty(double v) { return std::isnan(v) ? std::string() : csv::format_double(v); }
}  // namespace

std::string panel_to_csv(const Panel& panel) {
    std::ostringstream out;
    out << kPanelCsvHeader << "\n";
    for (const auto& r : panel) {
        out << r.firm_id << "," << r.industry_id << "," << r.year << ","
            << csv::format_double(r.leverage_1917) << ","
            << csv::format_double(r.log_employment_x100) << "," << field_or_empty(r.interest_share)
            << "," << field_or_empty(r.production_share) << "," << field_or_empty(r.size) << ","
            << field_or_empty(r.fixed_share) << "," << field_or_empty(r.fcf_assets) << ","
            << field_or_empty(r.margin) << "," << field_or_empty(r.tobins_q) << ","
            << field_or_empty(r.ret) << "\n";
    }
    return out.str();
}

Panel panel_from_csv_text(const std::string& text, const std::string& origin) {
    const auto table = csv::parse(text, origin);
    const char* const required[] = {"firm_id", "industry_id", "year", "leverage_1917",
                                    "log_employment_x100"};
    for (const char* name : required) {
        if (!table.column(name))
            throw std::runtime_error(origin + ": missing required column '" + std::string(name) + "'");
    }
    const auto col = [&](const char* name) { return table.column(name); };
    const auto c_firm = *col("firm_id");
    const auto c_ind = *col("industry_id");
    const auto c_year = *col("year");
    const auto c_lev = *col("leverage_1917");
    const auto c_emp = *col("log_employment_x100");
    const auto c_int = col("interest_share");
    const auto c_prod = col("production_share");
    const auto c_size = col("size");
    const auto c_fixed = col("fixed_share");
    const auto c_fcf = col("fcf_assets");
    const auto c_margin = col("margin");
    const auto c_q = col("tobins_q");
    const auto c_ret = col("return");

    Panel panel;
    panel.reserve(table.rows.size());
    std::set<std::pair<long, int>> seen;
    std::map<long, double> firm_leverage;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& r = table.rows[i];
        const std::size_t line = table.line_numbers[i];
        FirmYear row;
        row.firm_id = csv::parse_long(r[c_firm], line, "firm_id");
        row.industry_id = csv::parse_long(r[c_ind], line, "industry_id");
        row.year = static_cast<int>(csv::parse_long(r[c_year], line, "year"));
        row.leverage_1917 = csv::parse_double(r[c_lev], line, "leverage_1917");
        row.log_employment_x100 = csv::parse_double(r[c_emp], line, "log_employment_x100");
        const auto opt = [&](const std::optional<std::size_t>& c, const char* name) {
            return c ? csv::parse_double(r[*c], line, name) : nan_value();
        };
        row.interest_share = opt(c_int, "interest_share");
        row.production_share = opt(c_prod, "production_share");
        row.size = opt(c_size, "size");
        row.fixed_share = opt(c_fixed, "fixed_share");
        row.fcf_assets = opt(c_fcf, "fcf_assets");
        row.margin = opt(c_margin, "margin");
        row.tobins_q = opt(c_q, "tobins_q");
        row.ret = opt(c_ret, "return");

        if (!seen.emplace(row.firm_id, row.year).second)
            throw std::runtime_error(origin + ":" + std::to_string(line) +
                                     ": duplicate (firm_id, year) key (" +
                                     std::to_string(row.firm_id) + ", " +
                                     std::to_string(row.year) + ")");
        if (!(row.leverage_1917 >= 0.0 && row.leverage_1917 <= 1.0))
            throw std::runtime_error(origin + ":" + std::to_string(line) +
                                     ": leverage_1917 outside [0,1]");
        const auto check_share = [&](double v, const char* name) {
            if (!std::isnan(v) && !(v >= 0.0 && v <= 1.0))
                throw std::runtime_error(origin + ":" + std::to_string(line) + ": " + name +
                                         " outside [0,1]");
        };
        check_share(row.interest_share, "interest_share");
        check_share(row.production_share, "production_share");
        check_share(row.fixed_share, "fixed_share");
        const auto lev_it = firm_leverage.find(row.firm_id);
        if (lev_it == firm_leverage.end()) {
            firm_leverage[row.firm_id] = row.leverage_1917;
        } else if (lev_it->second != row.leverage_1917) {
            throw std::runtime_error(origin + ":" + std::to_string(line) +
                                     ": leverage_1917 varies within firm " +
                                     std::to_string(row.firm_id));
        }
        panel.push_back(row);
    }
    return panel;
}

Panel load_panel(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return panel_from_csv_text(ss.str(), path);
}

void save_panel(const Panel& panel, const std::string& path) {
    csv::write_file_atomic(path, panel_to_csv(panel));
}

}  // namespace dilab::panel
