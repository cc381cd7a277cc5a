#pragma once

#include <string>

#include "nlpi/problem.hpp"

namespace nlpi {

/// Versioned on-disk problem description. The interaction may be given as k
/// (the operator A_{rho,k}) or directly as K (the reduced operator P_{1,K});
/// in the latter case the potential must vanish and rho must equal 1, so the
/// stored spec is the same operator either way.
struct ProblemFile {
    int version = 1;
    std::string name;            // builtin name or file path, for reports
    bool interaction_is_K = false;
    double b = 1.4;              // default rectangle height for assembly
    ProblemSpec spec;
};

/// Parse a JSON problem description. Throws ParseError on any defect.
ProblemFile parse_problem(const std::string& json_text, const std::string& name);

/// Load from a file path, or fall back to a builtin name ("free", "fig1",
/// "constant-0.3") when no such file exists.
ProblemFile load_problem(const std::string& input);

ProblemFile builtin_problem(const std::string& name);

/// Serialize with the sampled-function encoding (exact for non-periodic k).
std::string serialize_problem(const ProblemSpec& spec, bool interaction_is_K,
                              double b);

} // namespace nlpi
