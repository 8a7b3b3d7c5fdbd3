#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "bnrefine/network.hpp"

namespace bnrefine {

// Fully observed cases over a subset of the domain variables. Partiality is
// expressed by which columns are present, never by missing cells. Values are
// stored column-major as state indices.
class Dataset {
public:
    using Code = std::uint16_t;

    Dataset() = default;
    Dataset(std::vector<Variable> variables, std::vector<std::vector<Code>> columns);

    const std::vector<Variable>& variables() const noexcept { return variables_; }
    std::vector<std::string> names() const;
    std::size_t column_count() const noexcept { return variables_.size(); }
    std::size_t row_count() const noexcept { return rows_; }

    bool has_column(const std::string& name) const;
    // Throws Errc::unknown_variable.
    std::size_t column_index(const std::string& name) const;
    std::span<const Code> column(std::size_t index) const { return columns_.at(index); }
    const std::string& value(std::size_t row, std::size_t col) const;

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    std::vector<Variable> variables_;
    std::vector<std::vector<Code>> columns_;
    std::size_t rows_ = 0;
};

// CSV with a header row; comma separated, no quoting. Every header name must
// be in `schema`; cells must be declared states. Blank lines are skipped.
Dataset load_dataset(std::istream& in, std::span<const Variable> schema);
Dataset load_dataset_file(const std::string& path, std::span<const Variable> schema);
void write_csv(std::ostream& out, const Dataset& d);

// Keeps the named columns in the given order; all rows, duplicates included.
Dataset project(const Dataset& d, const std::vector<std::string>& vars);

// Joint counts of a child with its parents. Cells are laid out
// [config * child_cardinality + child_state], with parent configurations in
// mixed radix over `parents` as given (first parent most significant).
struct ContingencyTable {
    std::string child;
    std::vector<std::string> parents;
    std::size_t child_cardinality = 0;
    std::vector<std::size_t> parent_cardinalities;
    std::vector<std::uint32_t> counts;
    std::vector<std::uint32_t> parent_marginals;
    std::size_t total = 0;

    std::size_t config_count() const noexcept { return parent_marginals.size(); }
    std::uint32_t count(std::size_t config, std::size_t state) const {
        return counts.at(config * child_cardinality + state);
    }

    // Builds marginals and total from raw cell counts.
    static ContingencyTable from_counts(std::string child, std::vector<std::string> parents,
                                        std::size_t child_cardinality,
                                        std::vector<std::size_t> parent_cardinalities,
                                        std::vector<std::uint32_t> counts);
};

// Largest dense table count() will allocate.
inline constexpr std::size_t kMaxTableCells = std::size_t{1} << 26;

ContingencyTable count(const Dataset& d, const std::string& child,
                       const std::vector<std::string>& parents);

// Empirical conditional-entropy code length in bits:
// sum over occupied cells of count * log2(marginal / count).
double data_dl(const ContingencyTable& t);

}  // namespace bnrefine
