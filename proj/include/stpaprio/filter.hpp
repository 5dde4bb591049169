#pragma once

// Merges requirements that carry the same mitigation text while keeping
// every requirement id, UCA link and causal factor traceable.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stpaprio/matrix.hpp"

namespace stpaprio {

struct PrioritisedRequirement {
  std::string req_id;
  std::string uca_description;
  std::vector<std::string> causal_factors;
  std::string description;
  std::optional<ReqPriority> priority;
};

struct FilteredRow {
  std::string canonical_req_id;
  std::vector<std::string> merged_req_ids;
  std::vector<std::string> uca_descriptions;
  std::vector<std::string> causal_factors;
  std::string description;
  ReqPriority priority = ReqPriority::P5;
  std::string colour;
  std::vector<ReqPriority> conflict_note;  // distinct labels when members disagree

  friend bool operator==(const FilteredRow&, const FilteredRow&) = default;
};

// Lower-cased, whitespace collapsed, trailing punctuation removed.
// Throws EmptyDescription.
std::string normalise_text(std::string_view description);

// Throws MissingPriority when a row has no label.
std::vector<FilteredRow> filter_requirements(std::span<const PrioritisedRequirement> rows);

// Re-filtering already filtered rows; filter(filter(x)) == filter(x).
std::vector<FilteredRow> filter_requirements(std::span<const FilteredRow> rows);

}  // namespace stpaprio
