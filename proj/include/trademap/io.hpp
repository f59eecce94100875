#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "trademap/analysis.hpp"
#include "trademap/embedding.hpp"
#include "trademap/matrix.hpp"
#include "trademap/roster.hpp"
#include "trademap/spectral.hpp"

namespace trademap {

// `code,label,x,y[,d3,...]`, one row per country in roster order.
void write_coordinates_csv(std::ostream& out, const Embedding& emb);
Embedding read_coordinates_csv(std::istream& in);
Embedding read_coordinates_csv(const std::string& path);

// `rank,code,distance`
void write_neighbors_csv(std::ostream& out, const std::vector<Neighbor>& neighbors);
void write_neighbors_text(std::ostream& out, const std::string& query, const std::vector<Neighbor>& neighbors);

// `code,side` with side in {positive, negative}, roster order.
void write_partition_csv(std::ostream& out, const CountryRoster& roster, const Bipartition& part);
void write_partition_text(std::ostream& out, const Bipartition& part);

// Square grid with a `code,<codes...>` header row.
void write_matrix_csv(std::ostream& out, const CountryRoster& roster, const Matrix& m);

// `index,eigenvalue`
void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum);

}  // namespace trademap
