#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "eigconf/errors.hpp"

namespace eigconf {

/// Ordered list of variable names split into named blocks. The order of the
/// variables is the monomial order: variable 0 has the highest precedence,
/// so an earlier block dominates a later one and, inside a block, a lower
/// index dominates a higher one.
class VarTable {
 public:
  struct Block {
    std::string name;
    std::size_t offset = 0;
    std::size_t size = 0;
  };

  using BlockSpec = std::pair<std::string, std::vector<std::string>>;

  explicit VarTable(const std::vector<BlockSpec>& blocks) {
    for (const auto& [block_name, names] : blocks) {
      for (const auto& b : blocks_)
        if (b.name == block_name) throw StructuralError("duplicate block '" + block_name + "'");
      blocks_.push_back({block_name, names_.size(), names.size()});
      for (const auto& n : names) {
        if (n.empty()) throw StructuralError("empty variable name");
        if (!index_.emplace(n, names_.size()).second)
          throw StructuralError("duplicate variable '" + n + "'");
        names_.push_back(n);
      }
    }
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }

  std::optional<std::size_t> find(std::string_view n) const {
    auto it = index_.find(std::string(n));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_of(std::string_view n) const {
    if (auto i = find(n)) return *i;
    throw StructuralError("unknown variable '" + std::string(n) + "'");
  }

  const Block& block(std::string_view block_name) const {
    for (const auto& b : blocks_)
      if (b.name == block_name) return b;
    throw StructuralError("unknown block '" + std::string(block_name) + "'");
  }

  bool has_block(std::string_view block_name) const {
    for (const auto& b : blocks_)
      if (b.name == block_name) return true;
    return false;
  }

  friend bool operator==(const VarTable& a, const VarTable& b) {
    if (a.names_ != b.names_ || a.blocks_.size() != b.blocks_.size()) return false;
    for (std::size_t i = 0; i < a.blocks_.size(); ++i)
      if (a.blocks_[i].name != b.blocks_[i].name || a.blocks_[i].size != b.blocks_[i].size)
        return false;
    return true;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Block> blocks_;
  std::unordered_map<std::string, std::size_t> index_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

inline VarTablePtr make_table(const std::vector<VarTable::BlockSpec>& blocks) {
  return std::make_shared<const VarTable>(blocks);
}

/// `prefix1, ..., prefixN`
inline std::vector<std::string> indexed_names(std::string_view prefix, std::size_t count) {
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) out.push_back(std::string(prefix) + std::to_string(i));
  return out;
}

inline bool same_table(const VarTablePtr& a, const VarTablePtr& b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace eigconf
