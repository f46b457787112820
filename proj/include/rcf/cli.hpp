#pragma once

#include <ostream>
#include <string>

#include "rcf/density.hpp"

namespace rcf {

struct RunConfig {
    std::string field;
    u64 prime = 0;
    u64 num_primes = 0;
    u64 cutoff = 0;
    u64 bound = 0;
    std::string out;             // empty means stdout
    std::string format;          // csv/json for scan, text/json elsewhere
    int workers = 1;
    u64 seed = 0;
};

// Parses a comma-separated radical list ("5,13"), normalizing each entry to
// its squarefree part.
MultiquadField parse_field(const std::string& spec);

void cmd_field_report(const RunConfig& cfg, std::ostream& out);
void cmd_check(const RunConfig& cfg, std::ostream& out);
void cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& diag);
void cmd_density(const RunConfig& cfg, std::ostream& out);
void cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& diag);

// Full argv entry point; errors map to exit codes 1 (input), 2 (unsupported
// field), 3 (resource), 4 (undecided), 5 (invariant violation).
int run_cli(int argc, const char* const* argv);

} // namespace rcf
