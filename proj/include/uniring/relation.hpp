#pragma once

#include <set>
#include <utility>

#include "uniring/errors.hpp"
#include "uniring/types.hpp"

namespace uniring {

// A pair of adjacent values (predecessor, self) as seen by one process.
using ValuePair = std::pair<Value, Value>;

// A binary relation over domain values. In a ring protocol each process sees
// only its predecessor's variable and its own, so a global conjunctive
// predicate is fully described by which (predecessor, self) pairs it allows.
// Set semantics; all components lie in the domain.
class LocalityRelation {
  public:
    explicit LocalityRelation(Domain domain) : domain_(domain) {}

    LocalityRelation(Domain domain, std::set<ValuePair> pairs)
        : domain_(domain), pairs_(std::move(pairs)) {
        for (const auto& [a, b] : pairs_) {
            check_value(a);
            check_value(b);
        }
    }

    const Domain& domain() const { return domain_; }
    const std::set<ValuePair>& pairs() const { return pairs_; }

    bool contains(Value a, Value b) const {
        return pairs_.count({a, b}) != 0;
    }

    void add(Value a, Value b) {
        check_value(a);
        check_value(b);
        pairs_.insert({a, b});
    }

    std::size_t size() const { return pairs_.size(); }
    bool empty() const { return pairs_.empty(); }

    // Pairwise intersection; both relations must share a domain size.
    LocalityRelation intersect(const LocalityRelation& other) const;

    friend bool operator==(const LocalityRelation&, const LocalityRelation&) = default;

  private:
    void check_value(Value v) const {
        if (!domain_.contains(v)) {
            throw DomainError("relation value " + std::to_string(v) +
                              " outside domain of size " +
                              std::to_string(domain_.size));
        }
    }

    Domain domain_;
    std::set<ValuePair> pairs_;
};

// The full relation Z_M x Z_M.
LocalityRelation full_relation(Domain domain);

} // namespace uniring
