#include "trademap/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>

#include "trademap/csv.hpp"
#include "trademap/error.hpp"

namespace trademap {
namespace {

std::string coordinate_name(std::size_t j) {
  if (j == 0) return "x";
  if (j == 1) return "y";
  return "d" + std::to_string(j + 1);
}

double parse_number(const std::string& field, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v))
    throw Error(ErrorCode::Parse, "row " + std::to_string(line) + ": bad coordinate '" + field + "'");
  return v;
}

}  // namespace

void write_coordinates_csv(std::ostream& out, const Embedding& emb) {
  out << "code,label";
  for (std::size_t j = 0; j < emb.dims(); ++j) out << ',' << coordinate_name(j);
  out << '\n';
  for (std::size_t i = 0; i < emb.size(); ++i) {
    out << csv::escape(emb.roster.code(i)) << ',' << csv::escape(emb.roster.label(i));
    for (std::size_t j = 0; j < emb.dims(); ++j) out << ',' << csv::format_double(emb.coordinates(i, j));
    out << '\n';
  }
}

Embedding read_coordinates_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (!csv::trim(line).empty()) header = csv::split_line(line);
  }
  if (header.size() < 3 || header[0] != "code" || header[1] != "label")
    throw Error(ErrorCode::Schema, "coordinates file needs a 'code,label,x[,y,...]' header");
  const std::size_t k = header.size() - 2;

  std::map<std::string, std::vector<double>> rows;
  std::map<std::string, std::string> labels;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::trim(line).empty()) continue;
    const auto fields = csv::split_line(line);
    if (fields.size() != header.size())
      throw Error(ErrorCode::Parse, "row " + std::to_string(line_no) + ": expected " +
                                        std::to_string(header.size()) + " fields");
    std::vector<double> coords;
    for (std::size_t j = 0; j < k; ++j) coords.push_back(parse_number(fields[j + 2], line_no));
    if (!rows.emplace(fields[0], std::move(coords)).second)
      throw Error(ErrorCode::Ambiguity, "row " + std::to_string(line_no) + ": code '" + fields[0] + "' repeated");
    if (fields[1] != fields[0]) labels[fields[0]] = fields[1];
  }

  Embedding emb;
  std::vector<std::string> codes;
  for (const auto& [code, _] : rows) codes.push_back(code);
  emb.roster = CountryRoster(std::move(codes), std::move(labels));
  emb.coordinates = Matrix(rows.size(), k);
  std::size_t i = 0;
  for (const auto& [_, coords] : rows) {
    for (std::size_t j = 0; j < k; ++j) emb.coordinates(i, j) = coords[j];
    ++i;
  }
  emb.spectral_gap = std::numeric_limits<double>::quiet_NaN();
  return emb;
}

Embedding read_coordinates_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  return read_coordinates_csv(in);
}

void write_neighbors_csv(std::ostream& out, const std::vector<Neighbor>& neighbors) {
  out << "rank,code,distance\n";
  for (std::size_t r = 0; r < neighbors.size(); ++r)
    out << r + 1 << ',' << csv::escape(neighbors[r].code) << ',' << csv::format_double(neighbors[r].distance)
        << '\n';
}

void write_neighbors_text(std::ostream& out, const std::string& query, const std::vector<Neighbor>& neighbors) {
  out << "nearest neighbors of " << query << '\n';
  for (std::size_t r = 0; r < neighbors.size(); ++r)
    out << std::setw(4) << r + 1 << "  " << std::left << std::setw(12) << neighbors[r].code << std::right
        << std::fixed << std::setprecision(6) << neighbors[r].distance << '\n';
  out.unsetf(std::ios::floatfield);
}

void write_partition_csv(std::ostream& out, const CountryRoster& roster, const Bipartition& part) {
  std::map<std::string, const char*> side;
  for (const auto& c : part.positive_set) side[c] = "positive";
  for (const auto& c : part.negative_set) side[c] = "negative";
  out << "code,side\n";
  for (const auto& code : roster.codes()) out << csv::escape(code) << ',' << side.at(code) << '\n';
}

void write_partition_text(std::ostream& out, const Bipartition& part) {
  auto list = [&](const char* name, const std::vector<std::string>& codes) {
    out << name << " (" << codes.size() << "):";
    for (const auto& c : codes) out << ' ' << c;
    out << '\n';
  };
  list("positive", part.positive_set);
  list("negative", part.negative_set);
  if (!part.boundary.empty()) list("boundary", part.boundary);
}

void write_matrix_csv(std::ostream& out, const CountryRoster& roster, const Matrix& m) {
  out << "code";
  for (const auto& c : roster.codes()) out << ',' << csv::escape(c);
  out << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << csv::escape(roster.code(i));
    for (std::size_t j = 0; j < m.cols(); ++j) out << ',' << csv::format_double(m(i, j));
    out << '\n';
  }
}

void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum) {
  out << "index,eigenvalue\n";
  for (std::size_t k = 0; k < spectrum.eigenvalues.size(); ++k)
    out << k << ',' << csv::format_double(spectrum.eigenvalues[k]) << '\n';
}

}  // namespace trademap
