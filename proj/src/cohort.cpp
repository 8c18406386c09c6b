#include "tailkit/cohort.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace tailkit {

const char* attribute_name(StockAttribute a) {
    switch (a) {
        case StockAttribute::turnover: return "turnover";
        case StockAttribute::capitalization: return "capitalization";
        case StockAttribute::traded_value: return "traded_value";
    }
    return "?";
}

StockAttribute attribute_from_name(const std::string& name) {
    if (name == "turnover") return StockAttribute::turnover;
    if (name == "capitalization") return StockAttribute::capitalization;
    if (name == "traded_value") return StockAttribute::traded_value;
    throw std::invalid_argument("unknown attribute '" + name +
                                "' (want turnover, capitalization, or traded_value)");
}

double attribute_of(const StockProfile& p, StockAttribute a) {
    switch (a) {
        case StockAttribute::turnover: return p.turnover;
        case StockAttribute::capitalization: return p.capitalization;
        case StockAttribute::traded_value: return p.mean_traded_value;
    }
    return 0.0;
}

CohortPartition partition_stocks(const std::vector<StockProfile>& profiles, StockAttribute attribute,
                                 int n_groups, GroupStat stat) {
    if (n_groups < 2) throw std::invalid_argument("partition needs at least 2 groups");
    const size_t m = profiles.size();
    if (m < static_cast<size_t>(n_groups))
        throw std::runtime_error("cannot split " + std::to_string(m) + " stocks into " +
                                 std::to_string(n_groups) + " groups");

    std::vector<std::pair<double, std::string>> order;
    order.reserve(m);
    for (const auto& p : profiles) order.emplace_back(attribute_of(p, attribute), p.stock_id);
    std::sort(order.begin(), order.end());

    CohortPartition partition;
    partition.attribute = attribute;
    partition.stat = stat;
    const size_t g = static_cast<size_t>(n_groups);
    const size_t base = m / g;
    const size_t extra = m % g;  // the lowest-attribute groups absorb the remainder
    size_t next = 0;
    for (size_t gi = 0; gi < g; ++gi) {
        CohortGroup group;
        const size_t size = base + (gi < extra ? 1 : 0);
        std::vector<double> attrs;
        for (size_t k = 0; k < size; ++k, ++next) {
            group.members.push_back(order[next].second);
            attrs.push_back(order[next].first);
        }
        if (stat == GroupStat::mean) {
            double sum = 0.0;
            for (double a : attrs) sum += a;
            group.attribute_stat = sum / static_cast<double>(attrs.size());
        } else {
            const size_t h = attrs.size() / 2;
            group.attribute_stat =
                attrs.size() % 2 ? attrs[h] : 0.5 * (attrs[h - 1] + attrs[h]);
        }
        partition.groups.push_back(std::move(group));
    }
    return partition;
}

std::vector<double> pool_returns(const CohortGroup& group,
                                 const std::map<std::string, ReturnSeries>& store) {
    std::vector<double> pooled;
    for (const auto& id : group.members) {
        const auto it = store.find(id);
        if (it == store.end())
            throw std::runtime_error("pool_returns: no return series for stock " + id);
        pooled.insert(pooled.end(), it->second.values.begin(), it->second.values.end());
    }
    return pooled;
}

std::string partition_to_json(const CohortPartition& partition) {
    nlohmann::ordered_json doc;
    doc["attribute"] = attribute_name(partition.attribute);
    doc["group_stat"] = partition.stat == GroupStat::mean ? "mean" : "median";
    doc["n_groups"] = partition.groups.size();
    auto& groups = doc["groups"] = nlohmann::ordered_json::array();
    for (size_t gi = 0; gi < partition.groups.size(); ++gi) {
        nlohmann::ordered_json g;
        g["index"] = gi;
        g["attribute_stat"] = partition.groups[gi].attribute_stat;
        g["n_members"] = partition.groups[gi].members.size();
        g["members"] = partition.groups[gi].members;
        groups.push_back(std::move(g));
    }
    return doc.dump(2) + "\n";
}

}  // namespace tailkit
