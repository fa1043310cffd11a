#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <span>
#include <vector>

namespace moddeg {

using Vertex = int;
inline constexpr Vertex kNoVertex = -1;

// Dense membership bitset over vertex ids [0, universe). The cardinality is
// cached and kept equal to the popcount of the words.
class VertexSet {
 public:
  class const_iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = Vertex;
    using difference_type = std::ptrdiff_t;
    using pointer = const Vertex*;
    using reference = Vertex;

    const_iterator() = default;
    Vertex operator*() const { return current_; }
    const_iterator& operator++() {
      advance(current_ + 1);
      return *this;
    }
    const_iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    friend bool operator==(const const_iterator& a, const const_iterator& b) {
      return a.current_ == b.current_;
    }

   private:
    friend class VertexSet;
    const_iterator(const VertexSet* set, Vertex from) : set_(set) { advance(from); }
    void advance(Vertex from);

    const VertexSet* set_ = nullptr;
    Vertex current_ = kNoVertex;
  };

  VertexSet() = default;
  explicit VertexSet(std::size_t universe);

  static VertexSet full(std::size_t universe);
  // Members are ids in [begin, end).
  static VertexSet range(std::size_t universe, Vertex begin, Vertex end);
  static VertexSet of(std::size_t universe, std::span<const Vertex> ids);

  std::size_t universe() const { return universe_; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(Vertex v) const {
    return v >= 0 && static_cast<std::size_t>(v) < universe_ &&
           ((words_[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1U) != 0;
  }
  // Both return whether the set changed.
  bool insert(Vertex v);
  bool erase(Vertex v);
  void clear();

  VertexSet& operator|=(const VertexSet& other);
  VertexSet& operator&=(const VertexSet& other);
  VertexSet& operator-=(const VertexSet& other);
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

  std::size_t intersection_size(const VertexSet& other) const;
  bool intersects(const VertexSet& other) const { return intersection_size(other) != 0; }
  bool is_subset_of(const VertexSet& other) const;

  // Smallest member, or kNoVertex.
  Vertex first() const { return *begin(); }
  std::vector<Vertex> to_vector() const;

  const_iterator begin() const { return const_iterator(this, 0); }
  const_iterator end() const { return const_iterator(); }

  std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }

 private:
  void check_vertex(Vertex v) const;
  void check_compatible(const VertexSet& other) const;
  void recount();

  std::size_t universe_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace moddeg
