#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tau2/summation.hpp"

namespace ntw {

// One disagreement between a closed form and brute force.
struct IdentityMismatch {
    std::string identity_id;
    long long p = 0;
    std::vector<std::pair<std::string, double>> arguments;
    Complex expected_value;
    Complex computed_value;
    double abs_diff = 0.0;
};

struct CandidateScore {
    std::string id;
    std::string formula;
    double max_abs_diff = 0.0;
    bool matches = false;
};

// Outcome of comparing competing closed forms against brute force.
struct Adjudication {
    std::string question;
    std::size_t cases = 0;
    double tolerance = 0.0;
    std::vector<CandidateScore> candidates;

    // id of the unique matching candidate, empty when zero or several match
    std::string selected() const;
    std::size_t match_count() const;
};

}  // namespace ntw
