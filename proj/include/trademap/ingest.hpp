#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "trademap/matrix.hpp"
#include "trademap/roster.hpp"

namespace trademap {

// One directed trade observation: exports from `reporter` to `partner`.
struct DyadRecord {
  std::string reporter;
  std::string partner;
  int year = 0;
  std::optional<double> export_value;  // empty when the source marks it missing

  friend bool operator==(const DyadRecord&, const DyadRecord&) = default;
};

// Maps source column names onto record fields. When `reverse_value` is set,
// each row also yields the partner -> reporter record from that column, which
// covers undirected dyadic files carrying both directions on one line.
struct CsvSchema {
  std::string reporter = "reporter";
  std::string partner = "partner";
  std::string year = "year";
  std::string export_value = "export_value";
  std::optional<std::string> reverse_value;
  char delimiter = ',';
  double missing_sentinel = -9.0;
};

struct ParsedDyads {
  std::vector<DyadRecord> records;
  std::size_t self_dyads_dropped = 0;
};

ParsedDyads parse_dyadic_csv(std::istream& source, const CsvSchema& schema = {});
ParsedDyads read_dyadic_csv(const std::string& path, const CsvSchema& schema = {});

enum class MissingPolicy { DropIncomplete, ZeroFill };

std::optional<MissingPolicy> parse_policy(const std::string& name);
const char* to_string(MissingPolicy policy);

// Export matrix W: values(i, j) is the export from roster country i to j.
// Missing dyads are stored as zero and flagged in the mask.
class FlowMatrix {
 public:
  FlowMatrix() = default;
  // Validates zero diagonal, nonnegative finite entries and dimensions.
  FlowMatrix(CountryRoster roster, Matrix values, std::vector<std::uint8_t> missing = {});

  const CountryRoster& roster() const noexcept { return roster_; }
  const Matrix& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return roster_.size(); }

  double operator()(std::size_t i, std::size_t j) const { return values_(i, j); }
  bool missing(std::size_t i, std::size_t j) const { return missing_[i * size() + j] != 0; }
  std::size_t missing_count() const;

  FlowMatrix scaled(double factor) const;
  FlowMatrix with_labels(std::map<std::string, std::string> labels) const;

  friend bool operator==(const FlowMatrix&, const FlowMatrix&) = default;

 private:
  CountryRoster roster_;
  Matrix values_;
  std::vector<std::uint8_t> missing_;
};

struct FlowBuild {
  FlowMatrix flow;
  std::vector<std::string> dropped;  // countries removed by drop-incomplete, in removal order
};

FlowBuild build_flow_matrix(const std::vector<DyadRecord>& records, int year, MissingPolicy policy);

// Repeatedly removes the country incident to the most missing dyads (ties to
// the lowest roster index) until the mask is empty.
FlowBuild drop_incomplete(const FlowMatrix& flow);

FlowMatrix select_subgraph(const FlowMatrix& flow, const std::vector<std::string>& subset);

// Same restriction without the minimum-size rule; used for component and
// isolated-vertex pruning.
FlowMatrix restrict_to(const FlowMatrix& flow, const std::vector<std::size_t>& indices);

// Writes one row per off-diagonal dyad using the default schema column names.
// Missing dyads are written as the sentinel; values use shortest round-trip
// formatting so re-parsing is exact.
void write_dyadic_csv(std::ostream& out, const FlowMatrix& flow, int year, double missing_sentinel = -9.0);

// Two-column `code,label` side file (header optional).
std::map<std::string, std::string> read_code_map(const std::string& path);
std::map<std::string, std::string> parse_code_map(std::istream& in);

}  // namespace trademap
