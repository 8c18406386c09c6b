// Attribute-based stock cohorts: equal-count groups by turnover rate,
// capitalization, or traded value, with pooled return samples.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "tailkit/profile.hpp"
#include "tailkit/returns.hpp"

namespace tailkit {

enum class StockAttribute { turnover, capitalization, traded_value };

const char* attribute_name(StockAttribute a);
StockAttribute attribute_from_name(const std::string& name);
double attribute_of(const StockProfile& p, StockAttribute a);

enum class GroupStat { mean, median };

struct CohortGroup {
    std::vector<std::string> members;  // ascending attribute, ties by id
    double attribute_stat = 0.0;       // mean (default) or median of member attributes
};

struct CohortPartition {
    StockAttribute attribute = StockAttribute::turnover;
    GroupStat stat = GroupStat::mean;
    std::vector<CohortGroup> groups;  // ascending by attribute
};

// Stocks sorted ascending by the attribute (ties by id); with M stocks the
// first M mod g groups take ceil(M/g) members, the rest floor(M/g).
CohortPartition partition_stocks(const std::vector<StockProfile>& profiles, StockAttribute attribute,
                                 int n_groups, GroupStat stat = GroupStat::mean);

// Concatenation of the members' standardized returns, in member order. The
// members were standardized individually; the pool is deliberately not
// re-standardized.
std::vector<double> pool_returns(const CohortGroup& group,
                                 const std::map<std::string, ReturnSeries>& store);

std::string partition_to_json(const CohortPartition& partition);

}  // namespace tailkit
