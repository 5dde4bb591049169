#include "stpaprio/filter.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace stpaprio {

namespace {

bool is_terminal_punct(char c) {
  return c == '.' || c == '!' || c == '?' || c == ';' || c == ':' || c == ',';
}

template <typename T>
void append_unique(std::vector<T>& into, const std::vector<T>& from) {
  for (const auto& v : from) {
    if (std::find(into.begin(), into.end(), v) == into.end()) into.push_back(v);
  }
}

}  // namespace

std::string normalise_text(std::string_view description) {
  std::string out;
  out.reserve(description.size());
  bool pending_space = false;
  for (char ch : description) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  // trailing punctuation, including "..." and a UTF-8 ellipsis
  while (!out.empty()) {
    if (is_terminal_punct(out.back())) {
      out.pop_back();
    } else if (out.size() >= 3 && out.compare(out.size() - 3, 3, "\xE2\x80\xA6") == 0) {
      out.resize(out.size() - 3);
    } else if (out.back() == ' ') {
      out.pop_back();
    } else {
      break;
    }
  }
  if (out.empty()) throw Error(ErrorCode::EmptyDescription, "requirement description is empty");
  return out;
}

std::vector<FilteredRow> filter_requirements(std::span<const FilteredRow> rows) {
  std::map<std::string, std::size_t> group_of;
  std::vector<FilteredRow> groups;
  for (const auto& row : rows) {
    auto key = normalise_text(row.description);
    auto [it, inserted] = group_of.emplace(std::move(key), groups.size());
    if (inserted) {
      groups.push_back(row);
      continue;
    }
    auto& g = groups[it->second];
    append_unique(g.merged_req_ids, row.merged_req_ids);
    append_unique(g.uca_descriptions, row.uca_descriptions);
    append_unique(g.causal_factors, row.causal_factors);
    append_unique(g.conflict_note, row.conflict_note);
    if (std::find(g.conflict_note.begin(), g.conflict_note.end(), g.priority) == g.conflict_note.end()) {
      g.conflict_note.push_back(g.priority);
    }
    if (std::find(g.conflict_note.begin(), g.conflict_note.end(), row.priority) == g.conflict_note.end()) {
      g.conflict_note.push_back(row.priority);
    }
    g.priority = std::min(g.priority, row.priority);
  }

  for (auto& g : groups) {
    g.canonical_req_id = *std::min_element(g.merged_req_ids.begin(), g.merged_req_ids.end());
    std::sort(g.conflict_note.begin(), g.conflict_note.end());
    if (g.conflict_note.size() < 2) g.conflict_note.clear();
    g.colour = std::string(colour_for_level(level_for_label(g.priority)));
  }
  std::sort(groups.begin(), groups.end(), [](const FilteredRow& a, const FilteredRow& b) {
    if (a.priority != b.priority) return a.priority < b.priority;
    return a.canonical_req_id < b.canonical_req_id;
  });
  return groups;
}

std::vector<FilteredRow> filter_requirements(std::span<const PrioritisedRequirement> rows) {
  std::vector<FilteredRow> singletons;
  singletons.reserve(rows.size());
  for (const auto& r : rows) {
    if (!r.priority) throw Error(ErrorCode::MissingPriority, r.req_id + " has no priority label");
    FilteredRow f;
    f.canonical_req_id = r.req_id;
    f.merged_req_ids = {r.req_id};
    if (!r.uca_description.empty()) f.uca_descriptions = {r.uca_description};
    append_unique(f.causal_factors, r.causal_factors);
    f.description = r.description;
    f.priority = *r.priority;
    singletons.push_back(std::move(f));
  }
  return filter_requirements(std::span<const FilteredRow>(singletons));
}

}  // namespace stpaprio
