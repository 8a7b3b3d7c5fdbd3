#include "bnrefine/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <set>

#include "bnrefine/error.hpp"
#include "bnrefine/kernels.hpp"

namespace bnrefine {

Dataset::Dataset(std::vector<Variable> variables, std::vector<std::vector<Code>> columns)
    : variables_(std::move(variables)), columns_(std::move(columns)) {
    if (variables_.size() != columns_.size()) {
        throw Error(Errc::invalid_argument, "dataset needs one column per variable");
    }
    std::set<std::string> seen;
    for (const auto& v : variables_) {
        validate_variable(v);
        if (v.cardinality() > std::numeric_limits<Code>::max()) {
            throw Error(Errc::invalid_variable, "variable '" + v.name + "' has too many states");
        }
        if (!seen.insert(v.name).second) {
            throw Error(Errc::duplicate_column, "duplicate column '" + v.name + "'");
        }
    }
    rows_ = columns_.empty() ? 0 : columns_.front().size();
    for (std::size_t j = 0; j < columns_.size(); ++j) {
        if (columns_[j].size() != rows_) {
            throw Error(Errc::ragged_row, "column '" + variables_[j].name + "' has the wrong length");
        }
        for (auto code : columns_[j]) {
            if (code >= variables_[j].cardinality()) {
                throw Error(Errc::unknown_state,
                            "column '" + variables_[j].name + "' holds an out-of-range state");
            }
        }
    }
}

std::vector<std::string> Dataset::names() const {
    std::vector<std::string> out;
    for (const auto& v : variables_) out.push_back(v.name);
    return out;
}

bool Dataset::has_column(const std::string& name) const {
    return std::any_of(variables_.begin(), variables_.end(),
                       [&](const Variable& v) { return v.name == name; });
}

std::size_t Dataset::column_index(const std::string& name) const {
    for (std::size_t j = 0; j < variables_.size(); ++j) {
        if (variables_[j].name == name) return j;
    }
    throw Error(Errc::unknown_variable, "dataset has no column '" + name + "'");
}

const std::string& Dataset::value(std::size_t row, std::size_t col) const {
    return variables_.at(col).states.at(columns_.at(col).at(row));
}

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_cells(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return cells;
}

}  // namespace

Dataset load_dataset(std::istream& in, std::span<const Variable> schema) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) {
            header = split_cells(line);
            break;
        }
    }
    if (header.empty()) throw Error(Errc::empty_data, "CSV has no header row");

    std::vector<Variable> variables;
    for (const auto& name : header) {
        auto it = std::find_if(schema.begin(), schema.end(),
                               [&](const Variable& v) { return v.name == name; });
        if (it == schema.end()) {
            throw Error(Errc::unknown_column, "CSV column '" + name + "' is not a network variable");
        }
        for (const auto& v : variables) {
            if (v.name == name) throw Error(Errc::duplicate_column, "CSV repeats column '" + name + "'");
        }
        variables.push_back(*it);
    }

    std::vector<std::vector<Dataset::Code>> columns(variables.size());
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split_cells(line);
        if (cells.size() != variables.size()) {
            throw Error(Errc::ragged_row, "CSV line " + std::to_string(line_no) + " (row " +
                                              std::to_string(row + 1) + ") has " +
                                              std::to_string(cells.size()) + " cells, expected " +
                                              std::to_string(variables.size()));
        }
        for (std::size_t j = 0; j < cells.size(); ++j) {
            auto idx = variables[j].find_state(cells[j]);
            if (!idx) {
                throw Error(Errc::unknown_state, "CSV row " + std::to_string(row + 1) + ", column '" +
                                                     variables[j].name + "': '" + cells[j] +
                                                     "' is not a declared state");
            }
            columns[j].push_back(static_cast<Dataset::Code>(*idx));
        }
        ++row;
    }
    if (row == 0) throw Error(Errc::empty_data, "CSV has a header but no data rows");
    return Dataset(std::move(variables), std::move(columns));
}

Dataset load_dataset_file(const std::string& path, std::span<const Variable> schema) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io_error, "cannot open '" + path + "'");
    try {
        return load_dataset(in, schema);
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + e.what());
    }
}

void write_csv(std::ostream& out, const Dataset& d) {
    for (std::size_t j = 0; j < d.column_count(); ++j) {
        if (j) out << ',';
        out << d.variables()[j].name;
    }
    out << '\n';
    for (std::size_t r = 0; r < d.row_count(); ++r) {
        for (std::size_t j = 0; j < d.column_count(); ++j) {
            if (j) out << ',';
            out << d.value(r, j);
        }
        out << '\n';
    }
}

Dataset project(const Dataset& d, const std::vector<std::string>& vars) {
    std::vector<Variable> variables;
    std::vector<std::vector<Dataset::Code>> columns;
    for (const auto& name : vars) {
        const auto j = d.column_index(name);
        variables.push_back(d.variables()[j]);
        auto col = d.column(j);
        columns.emplace_back(col.begin(), col.end());
    }
    return Dataset(std::move(variables), std::move(columns));
}

ContingencyTable ContingencyTable::from_counts(std::string child, std::vector<std::string> parents,
                                               std::size_t child_cardinality,
                                               std::vector<std::size_t> parent_cardinalities,
                                               std::vector<std::uint32_t> counts) {
    ContingencyTable t;
    t.child = std::move(child);
    t.parents = std::move(parents);
    t.child_cardinality = child_cardinality;
    t.parent_cardinalities = std::move(parent_cardinalities);
    std::size_t configs = 1;
    for (auto c : t.parent_cardinalities) configs *= c;
    if (t.parents.size() != t.parent_cardinalities.size() || child_cardinality == 0 ||
        counts.size() != configs * child_cardinality) {
        throw Error(Errc::invalid_argument, "contingency table dimensions do not match its counts");
    }
    t.counts = std::move(counts);
    t.parent_marginals.assign(configs, 0);
    for (std::size_t c = 0; c < configs; ++c) {
        for (std::size_t s = 0; s < child_cardinality; ++s) {
            t.parent_marginals[c] += t.counts[c * child_cardinality + s];
        }
        t.total += t.parent_marginals[c];
    }
    return t;
}

ContingencyTable count(const Dataset& d, const std::string& child,
                       const std::vector<std::string>& parents) {
    const auto child_col = d.column_index(child);
    std::vector<std::size_t> parent_cols;
    std::set<std::string> seen;
    for (const auto& p : parents) {
        if (p == child) {
            throw Error(Errc::child_in_parents, "'" + child + "' cannot be its own parent");
        }
        if (!seen.insert(p).second) {
            throw Error(Errc::invalid_argument, "parent '" + p + "' listed twice");
        }
        parent_cols.push_back(d.column_index(p));
    }

    const std::size_t child_card = d.variables()[child_col].cardinality();
    std::vector<std::size_t> parent_cards;
    std::size_t cells = child_card;
    for (auto j : parent_cols) {
        parent_cards.push_back(d.variables()[j].cardinality());
        cells *= parent_cards.back();
        if (cells > kMaxTableCells) {
            throw Error(Errc::table_too_large, "contingency table for '" + child + "' exceeds " +
                                                   std::to_string(kMaxTableCells) + " cells");
        }
    }

    // Strides: child fastest, then parents from last to first.
    std::vector<std::span<const std::uint16_t>> cols;
    std::vector<std::uint32_t> strides(parent_cols.size() + 1);
    std::uint32_t stride = 1;
    cols.resize(parent_cols.size() + 1);
    cols.back() = d.column(child_col);
    strides.back() = stride;
    stride *= static_cast<std::uint32_t>(child_card);
    for (std::size_t k = parent_cols.size(); k-- > 0;) {
        cols[k] = d.column(parent_cols[k]);
        strides[k] = stride;
        stride *= static_cast<std::uint32_t>(parent_cards[k]);
    }

    if (d.row_count() > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
        throw Error(Errc::table_too_large, "dataset has too many rows to count");
    }
    std::vector<std::uint32_t> idx(d.row_count());
    kernels::joint_index(cols, strides, idx);
    std::vector<std::uint32_t> counts(cells, 0);
    kernels::histogram(idx, counts);

    return ContingencyTable::from_counts(child, parents, child_card, std::move(parent_cards),
                                         std::move(counts));
}

double data_dl(const ContingencyTable& t) {
    if (t.total == 0) return 0.0;
    std::vector<double> log2_table(t.total + 1);
    log2_table[0] = 0.0;
    for (std::size_t x = 1; x <= t.total; ++x) log2_table[x] = std::log2(static_cast<double>(x));

    std::vector<std::uint32_t> marginal_per_cell(t.counts.size());
    for (std::size_t i = 0; i < t.counts.size(); ++i) {
        marginal_per_cell[i] = t.parent_marginals[i / t.child_cardinality];
    }
    // Each term is count * (log2 m - log2 c) >= 0, and exactly 0 when c is 0
    // or equals its marginal.
    return kernels::weighted_log_ratio_sum(t.counts, marginal_per_cell, log2_table);
}

}  // namespace bnrefine
