#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bnrefine {

enum class Errc {
    unknown_node,
    self_loop,
    cycle_detected,
    node_mismatch,
    duplicate_name,
    invalid_variable,
    unknown_state,
    ragged_row,
    unknown_column,
    duplicate_column,
    empty_data,
    unknown_variable,
    child_in_parents,
    table_too_large,
    too_many_variables,
    missing_cpt,
    cpt_not_normalized,
    invalid_argument,
    parse_error,
    io_error,
};

const char* to_string(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above; the
// CLI maps all of them to the "data/validation" exit status.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

class CycleError : public Error {
public:
    explicit CycleError(std::vector<std::string> cycle);

    // Nodes along one directed cycle, first node repeated at the end.
    const std::vector<std::string>& cycle() const noexcept { return cycle_; }

private:
    std::vector<std::string> cycle_;
};

}  // namespace bnrefine
