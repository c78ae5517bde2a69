#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bgklt/mandelstam.hpp"

namespace bgklt::verify {

struct Failure {
    std::string inputs;
    std::string lhs;
    std::string rhs;
};

struct MultiplicityStat {
    int n = 0;
    std::uint64_t cases = 0;
    double millis = 0.0;
};

struct Report {
    std::string identity;
    int max_n = 0;
    std::uint64_t cases = 0;
    std::vector<Failure> failures;
    std::vector<MultiplicityStat> per_n;
    bool probabilistic = false;

    bool ok() const { return failures.empty(); }
    double total_millis() const;
};

struct Options {
    int max_n = -1;  // -1: identity default
    bool parallel = false;
    bool probabilistic = false;
    std::uint64_t seed = 0;
    std::size_t max_failures = 8;  // stop collecting past this many
};

struct Identity {
    std::string name;
    int default_max_n;
    std::string description;
    std::function<Report(const Options&)> run;
};

/// All registered identity sweeps, in canonical order.
const std::vector<Identity>& registry();

/// Runs one identity by name; throws std::invalid_argument if unknown.
Report run(const std::string& name, const Options& opts);

/// Runs the whole registry at default bounds.
std::vector<Report> run_all(const Options& opts);

}  // namespace bgklt::verify
