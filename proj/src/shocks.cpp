#include "dilab/shocks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dilab/csv.hpp"

namespace dilab::shocks {

Frequency frequency_from_string(const std::string& s) {
    if (s == "daily") return Frequency::kDaily;
    if (s == "monthly") return Frequency::kMonthly;
    if (s == "quarterly") return Frequency::kQuarterly;
    if (s == "annual") return Frequency::kAnnual;
    throw std::invalid_argument("unknown frequency '" + s + "'");
}

const char* frequency_name(Frequency f) {
    switch (f) {
        case Frequency::kDaily: return "daily";
        case Frequency::kMonthly: return "monthly";
        case Frequency::kQuarterly: return "quarterly";
        case Frequency::kAnnual: return "annual";
    }
    return "?";
}

void PricePath::validate() const {
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(points[i].level > 0.0))
            throw std::invalid_argument("price path: level must be strictly positive at " +
                                        points[i].date.to_iso());
        if (i > 0 && !(points[i - 1].date < points[i].date))
            throw std::invalid_argument("price path: dates must be strictly increasing at " +
                                        points[i].date.to_iso());
    }
}

PricePath PricePath::from_csv(const std::string& path, Frequency f) {
    const auto table = csv::read_file(path);
    const auto date_col = table.column("date");
    const auto level_col = table.column("level");
    if (!date_col || !level_col)
        throw std::runtime_error(path + ": expected header 'date,level'");
    PricePath p;
    p.frequency = f;
    p.points.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        PricePoint pt;
        pt.date = Date::parse_iso(table.rows[i][*date_col]);
        pt.level = csv::parse_double(table.rows[i][*level_col], table.line_numbers[i], "level");
        p.points.push_back(pt);
    }
    p.validate();
    return p;
}

std::string PricePath::to_csv() const {
    std::ostringstream out;
    out << "date,level\n";
    for (const auto& pt : points) out << pt.date.to_iso() << "," << csv::format_double(pt.level) << "\n";
    return out.str();
}

std::string series_to_csv(const std::vector<DatedValue>& series) {
    std::ostringstream out;
    out << "date,value\n";
    for (const auto& dv : series) out << dv.date.to_iso() << "," << csv::format_double(dv.value) << "\n";
    return out.str();
}

void LeverageBase::validate() const {
    if (!(liabilities >= 0.0)) throw std::invalid_argument("leverage base: D must be >= 0");
    if (!(liabilities + equity > 0.0))
        throw std::invalid_argument("leverage base: D + E must be positive");
    const double lev = leverage();
    if (!(lev >= 0.0 && lev <= 1.0))
        throw std::invalid_argument("leverage base: D/(D+E) must lie in [0,1]");
}

double debt_inflation(double leverage, double pi) {
    if (!(leverage >= 0.0 && leverage <= 1.0))
        throw std::domain_error("debt_inflation: leverage must lie in [0,1]");
    if (!(1.0 + pi > 0.0))
        throw std::domain_error("debt_inflation: cumulative inflation must exceed -1");
    return leverage * pi / (1.0 + pi);
}

namespace {
// Base-year price: the last level observed within the base year
// (balance-sheet convention).
double base_year_level(const PricePath& prices, int base_year) {
    double level = 0.0;
    bool found = false;
    for (const auto& pt : prices.points) {
        if (pt.date.year() == base_year) {
            level = pt.level;
            found = true;
        }
    }
    if (!found)
        throw std::runtime_error("price path does not cover the base year " +
                                 std::to_string(base_year));
    return level;
}
}  // namespace

std::vector<DatedValue> debt_inflation_series(const LeverageBase& base, const PricePath& prices) {
    base.validate();
    prices.validate();
    const double p0 = base_year_level(prices, base.base_year);
    const double lev = base.leverage();
    std::vector<DatedValue> out;
    out.reserve(prices.points.size());
    for (const auto& pt : prices.points) {
        const double pi = pt.level / p0 - 1.0;
        out.push_back({pt.date, debt_inflation(lev, pi)});
    }
    return out;
}

std::vector<CrossSectionStats> debt_inflation_stats(const std::vector<LeverageBase>& firms,
                                                    const PricePath& prices) {
    if (firms.empty()) throw std::invalid_argument("debt_inflation_stats: no firms");
    std::vector<std::vector<DatedValue>> per_firm;
    per_firm.reserve(firms.size());
    for (const auto& f : firms) per_firm.push_back(debt_inflation_series(f, prices));

    std::vector<CrossSectionStats> out;
    out.reserve(prices.points.size());
    for (std::size_t t = 0; t < prices.points.size(); ++t) {
        std::vector<double> xs;
        xs.reserve(firms.size());
        for (const auto& series : per_firm) xs.push_back(series[t].value);
        std::sort(xs.begin(), xs.end());
        const auto nearest_rank = [&](double p) {
            const std::size_t r =
                static_cast<std::size_t>(std::ceil(p * static_cast<double>(xs.size())));
            return xs[std::max<std::size_t>(r, 1) - 1];
        };
        CrossSectionStats s;
        s.date = prices.points[t].date;
        double sum = 0.0;
        for (double x : xs) sum += x;
        s.mean = sum / static_cast<double>(xs.size());
        s.p10 = nearest_rank(0.10);
        s.p90 = nearest_rank(0.90);
        out.push_back(s);
    }
    return out;
}

double forward_premium(double forward_rate, double spot_rate) {
    if (!(forward_rate > 0.0 && spot_rate > 0.0))
        throw std::domain_error("forward_premium: rates must be strictly positive");
    return 12.0 * (forward_rate - spot_rate) / spot_rate;
}

std::vector<DatedValue> log_inflation(const PricePath& prices, std::size_t horizon) {
    prices.validate();
    if (horizon == 0) throw std::invalid_argument("log_inflation: horizon must be >= 1");
    if (prices.points.size() < horizon + 1)
        throw std::invalid_argument("log_inflation: need at least horizon+1 observations");
    std::vector<DatedValue> out;
    out.reserve(prices.points.size() - horizon);
    for (std::size_t t = horizon; t < prices.points.size(); ++t) {
        const double v = 100.0 * (std::log(prices.points[t].level) -
                                  std::log(prices.points[t - horizon].level));
        out.push_back({prices.points[t].date, v});
    }
    return out;
}

double real_total_log_return(double price_t, double dividend_t, double price_prev,
                             double deflator_t, double deflator_prev) {
    if (!(price_t > 0.0 && price_prev > 0.0))
        throw std::domain_error("real_total_log_return: prices must be positive");
    if (!(deflator_t > 0.0 && deflator_prev > 0.0))
        throw std::domain_error("real_total_log_return: deflators must be positive");
    if (!(dividend_t >= 0.0))
        throw std::domain_error("real_total_log_return: dividend must be nonnegative");
    return 100.0 * std::log((price_t / deflator_t + dividend_t / deflator_t) /
                            (price_prev / deflator_prev));
}

std::vector<DatedValue> duration_since_last_increase(const PricePath& series) {
    series.validate();
    if (series.points.size() < 2)
        throw std::invalid_argument("duration_since_last_increase: need at least 2 observations");
    std::vector<DatedValue> out;
    bool seen_increase = false;
    Date last_increase;
    for (std::size_t t = 1; t < series.points.size(); ++t) {
        if (series.points[t].level > series.points[t - 1].level) {
            seen_increase = true;
            last_increase = series.points[t].date;
        }
        if (!seen_increase) continue;  // undefined before the first increase
        out.push_back({series.points[t].date,
                       static_cast<double>(days_between(last_increase, series.points[t].date))});
    }
    return out;
}

}  // namespace dilab::shocks
