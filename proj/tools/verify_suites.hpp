#pragma once

// Self-check suites behind the `verify` subcommand: randomized property
// sweeps with seeded generators plus exact structural identities.

#include <cstdint>
#include <string>
#include <vector>

namespace qcorr::cli {

struct PropertyResult {
    std::string name;
    bool passed = false;
    long checked = 0;
    long failures = 0;
    double worst_error = 0.0;
};

std::vector<PropertyResult> run_kraus_suite(int n_cut);
std::vector<PropertyResult> run_semigroup_suite(int n_cut);
std::vector<PropertyResult> run_nb_eb_suite(uint64_t seed, long samples);
std::vector<PropertyResult> run_discord_oracle_suite(uint64_t seed, long samples);

} // namespace qcorr::cli
