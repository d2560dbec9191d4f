#include "pcineq/labels.hpp"

#include <algorithm>

namespace pcineq {

ParseError::ParseError(int line, const std::string& what)
    : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

LabelSet::LabelSet(std::initializer_list<std::string> labels) {
  for (const auto& l : labels) insert(l);
}

LabelSet::LabelSet(const std::vector<std::string>& labels) {
  for (const auto& l : labels) insert(l);
}

bool LabelSet::insert(const std::string& label) {
  if (contains(label)) return false;
  items_.push_back(label);
  return true;
}

bool LabelSet::erase(const std::string& label) {
  auto it = std::find(items_.begin(), items_.end(), label);
  if (it == items_.end()) return false;
  items_.erase(it);
  return true;
}

bool LabelSet::contains(std::string_view label) const {
  return std::find(items_.begin(), items_.end(), label) != items_.end();
}

bool LabelSet::same_as(const LabelSet& other) const {
  return size() == other.size() && subset_of(other);
}

bool LabelSet::subset_of(const LabelSet& other) const {
  return std::all_of(items_.begin(), items_.end(),
                     [&](const std::string& l) { return other.contains(l); });
}

bool LabelSet::intersects(const LabelSet& other) const {
  return std::any_of(items_.begin(), items_.end(),
                     [&](const std::string& l) { return other.contains(l); });
}

LabelSet operator|(const LabelSet& lhs, const LabelSet& rhs) {
  LabelSet out = lhs;
  for (const auto& l : rhs) out.insert(l);
  return out;
}

LabelSet operator-(const LabelSet& lhs, const LabelSet& rhs) {
  LabelSet out;
  for (const auto& l : lhs)
    if (!rhs.contains(l)) out.insert(l);
  return out;
}

LabelSet operator&(const LabelSet& lhs, const LabelSet& rhs) {
  LabelSet out;
  for (const auto& l : lhs)
    if (rhs.contains(l)) out.insert(l);
  return out;
}

std::string LabelSet::joined(std::string_view sep) const {
  std::string out;
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (i) out += sep;
    out += items_[i];
  }
  return out;
}

LabelSet parse_label_list(std::string_view text) {
  LabelSet out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(start, end - start);
    while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t')) tok.remove_prefix(1);
    while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t')) tok.remove_suffix(1);
    if (!tok.empty()) out.insert(std::string(tok));
    start = end + 1;
  }
  return out;
}

}  // namespace pcineq
