#include "trademap/roster.hpp"

#include <algorithm>

#include "trademap/error.hpp"

namespace trademap {

CountryRoster::CountryRoster(std::vector<std::string> codes, std::map<std::string, std::string> labels)
    : codes_(std::move(codes)), labels_(std::move(labels)) {
  std::sort(codes_.begin(), codes_.end());
  auto dup = std::adjacent_find(codes_.begin(), codes_.end());
  if (dup != codes_.end()) throw Error(ErrorCode::Ambiguity, "duplicate country code '" + *dup + "' in roster");
  for (const auto& c : codes_)
    if (c.empty()) throw Error(ErrorCode::Parse, "empty country code in roster");
}

std::optional<std::size_t> CountryRoster::index_of(const std::string& code) const {
  auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
  if (it == codes_.end() || *it != code) return std::nullopt;
  return static_cast<std::size_t>(it - codes_.begin());
}

const std::string& CountryRoster::label(std::size_t i) const {
  const std::string& c = codes_.at(i);
  auto it = labels_.find(c);
  return it == labels_.end() ? c : it->second;
}

CountryRoster CountryRoster::restricted(const std::vector<std::size_t>& indices) const {
  std::vector<std::string> codes;
  codes.reserve(indices.size());
  for (std::size_t i : indices) codes.push_back(codes_.at(i));
  return CountryRoster(std::move(codes), labels_);
}

CountryRoster CountryRoster::with_labels(std::map<std::string, std::string> labels) const {
  CountryRoster r = *this;
  r.labels_ = std::move(labels);
  return r;
}

}  // namespace trademap
