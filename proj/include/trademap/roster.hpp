#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace trademap {

// Ordered set of country codes. Codes are opaque tokens kept in lexicographic
// order; that order is the row/column order of every matrix derived from the
// roster.
class CountryRoster {
 public:
  CountryRoster() = default;
  // Sorts the codes; duplicates are rejected with ErrorCode::Ambiguity.
  explicit CountryRoster(std::vector<std::string> codes,
                         std::map<std::string, std::string> labels = {});

  std::size_t size() const noexcept { return codes_.size(); }
  bool empty() const noexcept { return codes_.empty(); }
  const std::vector<std::string>& codes() const noexcept { return codes_; }
  const std::string& code(std::size_t i) const { return codes_.at(i); }

  std::optional<std::size_t> index_of(const std::string& code) const;
  bool contains(const std::string& code) const { return index_of(code).has_value(); }

  // Display label for a code, falling back to the code itself.
  const std::string& label(std::size_t i) const;
  const std::map<std::string, std::string>& labels() const noexcept { return labels_; }

  // Roster restricted to the given indices (labels carried over).
  CountryRoster restricted(const std::vector<std::size_t>& indices) const;
  CountryRoster with_labels(std::map<std::string, std::string> labels) const;

  friend bool operator==(const CountryRoster& a, const CountryRoster& b) {
    return a.codes_ == b.codes_;
  }

 private:
  std::vector<std::string> codes_;
  std::map<std::string, std::string> labels_;
};

}  // namespace trademap
