#include "trademap/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <string_view>

#include "trademap/csv.hpp"
#include "trademap/error.hpp"

namespace trademap {
namespace {

std::string row_prefix(std::size_t line) { return "row " + std::to_string(line) + ": "; }

int parse_year(const std::string& field, std::size_t line) {
  int year = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), year);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size())
    throw Error(ErrorCode::Parse, row_prefix(line) + "non-integer year '" + field + "'");
  return year;
}

std::optional<double> parse_value(const std::string& field, double sentinel, std::size_t line) {
  double value = 0.0;
  const char* begin = field.data();
  if (!field.empty() && field.front() == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(value))
    throw Error(ErrorCode::Parse, row_prefix(line) + "non-numeric export value '" + field + "'");
  if (value == sentinel) return std::nullopt;
  if (value < 0.0) throw Error(ErrorCode::Parse, row_prefix(line) + "negative export value '" + field + "'");
  return value;
}

std::size_t find_column(const std::vector<std::string>& header, const std::string& name) {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw Error(ErrorCode::Schema, "required column '" + name + "' not found in header");
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

ParsedDyads parse_dyadic_csv(std::istream& source, const CsvSchema& schema) {
  ParsedDyads result;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(source, line)) {
    ++line_no;
    if (csv::trim(line).empty()) continue;
    header = csv::split_line(line, schema.delimiter);
  }
  if (header.empty()) return result;

  const std::size_t rep = find_column(header, schema.reporter);
  const std::size_t par = find_column(header, schema.partner);
  const std::size_t yr = find_column(header, schema.year);
  const std::size_t val = find_column(header, schema.export_value);
  const std::optional<std::size_t> rev =
      schema.reverse_value ? std::optional(find_column(header, *schema.reverse_value)) : std::nullopt;

  while (std::getline(source, line)) {
    ++line_no;
    if (csv::trim(line).empty()) continue;
    std::vector<std::string> fields;
    try {
      fields = csv::split_line(line, schema.delimiter);
    } catch (const Error& e) {
      throw Error(ErrorCode::Parse, row_prefix(line_no) + e.what());
    }
    if (fields.size() != header.size())
      throw Error(ErrorCode::Parse, row_prefix(line_no) + "expected " + std::to_string(header.size()) +
                                        " fields, found " + std::to_string(fields.size()));
    const std::string& reporter = fields[rep];
    const std::string& partner = fields[par];
    if (reporter.empty() || partner.empty())
      throw Error(ErrorCode::Parse, row_prefix(line_no) + "empty country code");
    const int year = parse_year(fields[yr], line_no);
    const auto value = parse_value(fields[val], schema.missing_sentinel, line_no);
    const auto reverse = rev ? parse_value(fields[*rev], schema.missing_sentinel, line_no) : std::nullopt;

    if (reporter == partner) {
      result.self_dyads_dropped += rev ? 2 : 1;
      continue;
    }
    result.records.push_back({reporter, partner, year, value});
    if (rev) result.records.push_back({partner, reporter, year, reverse});
  }
  return result;
}

ParsedDyads read_dyadic_csv(const std::string& path, const CsvSchema& schema) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  return parse_dyadic_csv(in, schema);
}

std::optional<MissingPolicy> parse_policy(const std::string& name) {
  if (name == "drop-incomplete") return MissingPolicy::DropIncomplete;
  if (name == "zero-fill") return MissingPolicy::ZeroFill;
  return std::nullopt;
}

const char* to_string(MissingPolicy policy) {
  return policy == MissingPolicy::DropIncomplete ? "drop-incomplete" : "zero-fill";
}

FlowMatrix::FlowMatrix(CountryRoster roster, Matrix values, std::vector<std::uint8_t> missing)
    : roster_(std::move(roster)), values_(std::move(values)), missing_(std::move(missing)) {
  const std::size_t n = roster_.size();
  if (values_.rows() != n || values_.cols() != n)
    throw Error(ErrorCode::Dimension, "flow matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  if (missing_.empty()) missing_.assign(n * n, 0);
  if (missing_.size() != n * n) throw Error(ErrorCode::Dimension, "missing mask has wrong size");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double v = values_(i, j);
      if (!std::isfinite(v) || v < 0.0)
        throw Error(ErrorCode::Domain, "invalid flow " + roster_.code(i) + " -> " + roster_.code(j));
      if (i == j && (v != 0.0 || missing_[i * n + j]))
        throw Error(ErrorCode::Domain, "nonzero diagonal flow for " + roster_.code(i));
    }
}

std::size_t FlowMatrix::missing_count() const {
  return static_cast<std::size_t>(std::count(missing_.begin(), missing_.end(), std::uint8_t{1}));
}

FlowMatrix FlowMatrix::scaled(double factor) const {
  Matrix v = values_;
  for (std::size_t i = 0; i < v.rows(); ++i)
    for (double& x : v.row(i)) x *= factor;
  return FlowMatrix(roster_, std::move(v), missing_);
}

FlowMatrix FlowMatrix::with_labels(std::map<std::string, std::string> labels) const {
  FlowMatrix f = *this;
  f.roster_ = roster_.with_labels(std::move(labels));
  return f;
}

FlowBuild build_flow_matrix(const std::vector<DyadRecord>& records, int year, MissingPolicy policy) {
  std::map<std::pair<std::string, std::string>, std::optional<double>> dyads;
  std::set<std::string> codes;
  for (const auto& r : records) {
    if (r.year != year) continue;
    if (r.reporter == r.partner) continue;
    auto [it, inserted] = dyads.emplace(std::pair(r.reporter, r.partner), r.export_value);
    if (!inserted)
      throw Error(ErrorCode::Ambiguity, "duplicate dyad " + r.reporter + " -> " + r.partner + " in year " +
                                            std::to_string(year));
    codes.insert(r.reporter);
    codes.insert(r.partner);
  }
  if (dyads.empty()) throw Error(ErrorCode::NoData, "no records for year " + std::to_string(year));

  CountryRoster roster({codes.begin(), codes.end()});
  const std::size_t n = roster.size();
  Matrix values(n, n);
  std::vector<std::uint8_t> missing(n * n, 1);
  for (std::size_t i = 0; i < n; ++i) missing[i * n + i] = 0;
  for (const auto& [key, value] : dyads) {
    if (!value) continue;
    const std::size_t i = *roster.index_of(key.first);
    const std::size_t j = *roster.index_of(key.second);
    values(i, j) = *value;
    missing[i * n + j] = 0;
  }
  FlowMatrix flow(std::move(roster), std::move(values), std::move(missing));
  if (policy == MissingPolicy::ZeroFill) return {std::move(flow), {}};
  return drop_incomplete(flow);
}

FlowBuild drop_incomplete(const FlowMatrix& flow) {
  std::vector<std::size_t> active(flow.size());
  for (std::size_t i = 0; i < active.size(); ++i) active[i] = i;
  std::vector<std::string> dropped;

  for (;;) {
    std::size_t worst = 0;
    std::size_t worst_count = 0;
    for (std::size_t a = 0; a < active.size(); ++a) {
      std::size_t count = 0;
      for (std::size_t b : active) {
        if (b == active[a]) continue;
        count += flow.missing(active[a], b) + flow.missing(b, active[a]);
      }
      if (count > worst_count) {
        worst_count = count;
        worst = a;
      }
    }
    if (worst_count == 0) break;
    dropped.push_back(flow.roster().code(active[worst]));
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(worst));
  }
  if (active.size() < 2)
    throw Error(ErrorCode::DegenerateRoster,
                "drop-incomplete eliminated all but " + std::to_string(active.size()) + " of " +
                    std::to_string(flow.size()) + " countries");
  return {restrict_to(flow, active), std::move(dropped)};
}

FlowMatrix restrict_to(const FlowMatrix& flow, const std::vector<std::size_t>& indices) {
  std::vector<std::size_t> idx = indices;
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  const std::size_t n = flow.size();
  const std::size_t m = idx.size();
  Matrix values(m, m);
  std::vector<std::uint8_t> missing(m * m, 0);
  for (std::size_t a = 0; a < m; ++a) {
    if (idx[a] >= n) throw Error(ErrorCode::Lookup, "roster index out of range");
    for (std::size_t b = 0; b < m; ++b) {
      values(a, b) = flow(idx[a], idx[b]);
      missing[a * m + b] = flow.missing(idx[a], idx[b]);
    }
  }
  return FlowMatrix(flow.roster().restricted(idx), std::move(values), std::move(missing));
}

FlowMatrix select_subgraph(const FlowMatrix& flow, const std::vector<std::string>& subset) {
  std::vector<std::size_t> idx;
  for (const auto& code : subset) {
    auto i = flow.roster().index_of(code);
    if (!i) throw Error(ErrorCode::Lookup, "unknown country code '" + code + "'");
    idx.push_back(*i);
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  if (idx.size() < 3)
    throw Error(ErrorCode::TooSmall,
                "subgraph needs at least 3 countries, got " + std::to_string(idx.size()));
  return restrict_to(flow, idx);
}

void write_dyadic_csv(std::ostream& out, const FlowMatrix& flow, int year, double missing_sentinel) {
  const CsvSchema schema;
  out << schema.reporter << ',' << schema.partner << ',' << schema.year << ',' << schema.export_value << '\n';
  const auto& roster = flow.roster();
  for (std::size_t i = 0; i < flow.size(); ++i)
    for (std::size_t j = 0; j < flow.size(); ++j) {
      if (i == j) continue;
      out << csv::escape(roster.code(i)) << ',' << csv::escape(roster.code(j)) << ',' << year << ','
          << csv::format_double(flow.missing(i, j) ? missing_sentinel : flow(i, j)) << '\n';
    }
}

std::map<std::string, std::string> parse_code_map(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::trim(line).empty()) continue;
    auto fields = csv::split_line(line);
    if (fields.size() != 2)
      throw Error(ErrorCode::Parse, row_prefix(line_no) + "expected 2 fields, found " + std::to_string(fields.size()));
    if (first && fields[0] == "code") {
      first = false;
      continue;
    }
    first = false;
    if (!out.emplace(fields[0], fields[1]).second)
      throw Error(ErrorCode::Ambiguity, row_prefix(line_no) + "code '" + fields[0] + "' listed twice");
  }
  return out;
}

std::map<std::string, std::string> read_code_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  return parse_code_map(in);
}

}  // namespace trademap
