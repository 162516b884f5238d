#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace vixsel {

struct DesignSpace;

enum class StructureKind { kView, kBaseIndex, kViewIndex };

// One physical structure: a view, an index on a base table, or an index on a
// view. `view` / `index` are positions in DesignSpace::views / ::indexes.
struct Structure {
  StructureKind kind = StructureKind::kView;
  std::size_t view = 0;
  std::size_t index = 0;

  static Structure of_view(std::size_t v) { return {StructureKind::kView, v, 0}; }
  static Structure of_base_index(std::size_t i) { return {StructureKind::kBaseIndex, 0, i}; }
  static Structure of_view_index(std::size_t v, std::size_t i) {
    return {StructureKind::kViewIndex, v, i};
  }

  friend auto operator<=>(const Structure&, const Structure&) = default;
  friend bool operator==(const Structure&, const Structure&) = default;
};

// "v1", "i8", or "v1.i8" for index i8 built on view v1.
std::string structure_id(const DesignSpace& space, const Structure& s);

// Dense membership flags over every structure of a design space.
class Selection {
 public:
  Selection() = default;
  Selection(std::size_t view_count, std::size_t index_count)
      : view_count_(view_count),
        index_count_(index_count),
        views_(view_count, 0),
        base_indexes_(index_count, 0),
        view_indexes_(view_count * index_count, 0) {}
  explicit Selection(const DesignSpace& space);

  bool has_view(std::size_t v) const { return views_[v] != 0; }
  bool has_base_index(std::size_t i) const { return base_indexes_[i] != 0; }
  bool has_view_index(std::size_t v, std::size_t i) const {
    return view_indexes_[v * index_count_ + i] != 0;
  }
  bool contains(const Structure& s) const;
  void insert(const Structure& s) { flag(s) = 1; }
  void erase(const Structure& s) { flag(s) = 0; }

  bool empty() const;
  // Canonical order: views, base indexes, then view indexes by (view, index).
  std::vector<Structure> structures() const;

  friend bool operator==(const Selection&, const Selection&) = default;

 private:
  std::uint8_t& flag(const Structure& s);

  std::size_t view_count_ = 0;
  std::size_t index_count_ = 0;
  std::vector<std::uint8_t> views_;
  std::vector<std::uint8_t> base_indexes_;
  std::vector<std::uint8_t> view_indexes_;
};

}  // namespace vixsel
