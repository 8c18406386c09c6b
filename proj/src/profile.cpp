#include "tailkit/profile.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "tailkit/io.hpp"

namespace tailkit {

StockProfile compute_profile(const MinuteSeries& bars, double tradable_shares,
                             int minutes_per_day) {
    if (bars.days.empty() || bars.days.front().closes.empty())
        throw std::runtime_error("stock " + bars.stock_id + ": no bar data for profile");
    if (!(tradable_shares > 0.0))
        throw std::runtime_error("stock " + bars.stock_id + ": missing or non-positive tradable shares");

    double total_value = 0.0;
    for (const auto& day : bars.days)
        for (double v : day.traded_value) total_value += v;
    const double n_minutes = static_cast<double>(bars.days.size()) * minutes_per_day;

    StockProfile p;
    p.stock_id = bars.stock_id;
    p.tradable_shares = tradable_shares;
    p.mean_traded_value = total_value / n_minutes;
    p.capitalization = tradable_shares * bars.days.front().closes.front();
    p.turnover = p.mean_traded_value / p.capitalization;
    return p;
}

std::string profiles_to_csv(const std::vector<StockProfile>& profiles) {
    std::string out = "stock_id,c,mean_v,turnover\n";
    for (const auto& p : profiles) {
        out += p.stock_id;
        out += ',';
        out += fmt_double(p.capitalization);
        out += ',';
        out += fmt_double(p.mean_traded_value);
        out += ',';
        out += fmt_double(p.turnover);
        out += '\n';
    }
    return out;
}

std::vector<StockProfile> profiles_from_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open profiles file " + path);
    std::string line;
    if (!std::getline(in, line) ||
        split_csv_line(line) != std::vector<std::string>{"stock_id", "c", "mean_v", "turnover"})
        throw std::runtime_error("profiles file " + path + ": bad header");
    std::vector<StockProfile> profiles;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto f = split_csv_line(line);
        if (f.size() != 4) throw std::runtime_error("profiles file " + path + ": bad row '" + line + "'");
        StockProfile p;
        p.stock_id = f[0];
        p.capitalization = std::strtod(f[1].c_str(), nullptr);
        p.mean_traded_value = std::strtod(f[2].c_str(), nullptr);
        p.turnover = std::strtod(f[3].c_str(), nullptr);
        profiles.push_back(std::move(p));
    }
    return profiles;
}

}  // namespace tailkit
