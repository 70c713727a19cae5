#include "uniring/relation.hpp"

#include <algorithm>
#include <iterator>

namespace uniring {

LocalityRelation LocalityRelation::intersect(const LocalityRelation& other) const {
    if (domain_ != other.domain_) {
        throw DomainError("cannot intersect relations over different domains");
    }
    std::set<ValuePair> common;
    std::set_intersection(pairs_.begin(), pairs_.end(), other.pairs_.begin(),
                          other.pairs_.end(),
                          std::inserter(common, common.end()));
    return LocalityRelation(domain_, std::move(common));
}

LocalityRelation full_relation(Domain domain) {
    LocalityRelation rel(domain);
    for (Value a = 0; a < domain.size; ++a) {
        for (Value b = 0; b < domain.size; ++b) {
            rel.add(a, b);
        }
    }
    return rel;
}

} // namespace uniring
