#include "moddeg/vertex_set.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace moddeg {

namespace {

std::size_t word_count(std::size_t universe) { return (universe + 63) / 64; }

}  // namespace

void VertexSet::const_iterator::advance(Vertex from) {
  current_ = kNoVertex;
  if (set_ == nullptr || from < 0 || static_cast<std::size_t>(from) >= set_->universe_) {
    return;
  }
  auto index = static_cast<std::size_t>(from) >> 6;
  std::uint64_t word = set_->words_[index] & (~std::uint64_t{0} << (from & 63));
  while (true) {
    if (word != 0) {
      current_ = static_cast<Vertex>(index * 64 + static_cast<std::size_t>(std::countr_zero(word)));
      return;
    }
    if (++index == set_->words_.size()) return;
    word = set_->words_[index];
  }
}

VertexSet::VertexSet(std::size_t universe) : universe_(universe), words_(word_count(universe), 0) {}

VertexSet VertexSet::full(std::size_t universe) {
  return range(universe, 0, static_cast<Vertex>(universe));
}

VertexSet VertexSet::range(std::size_t universe, Vertex begin, Vertex end) {
  VertexSet set(universe);
  for (Vertex v = begin; v < end; ++v) set.insert(v);
  return set;
}

VertexSet VertexSet::of(std::size_t universe, std::span<const Vertex> ids) {
  VertexSet set(universe);
  for (Vertex v : ids) set.insert(v);
  return set;
}

void VertexSet::check_vertex(Vertex v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= universe_) {
    throw std::out_of_range("vertex " + std::to_string(v) + " outside universe of size " +
                            std::to_string(universe_));
  }
}

void VertexSet::check_compatible(const VertexSet& other) const {
  if (universe_ != other.universe_) {
    throw std::invalid_argument("vertex sets over different universes (" + std::to_string(universe_) +
                                " vs " + std::to_string(other.universe_) + ")");
  }
}

void VertexSet::recount() {
  count_ = 0;
  for (auto w : words_) count_ += static_cast<std::size_t>(std::popcount(w));
}

bool VertexSet::insert(Vertex v) {
  check_vertex(v);
  auto& word = words_[static_cast<std::size_t>(v) >> 6];
  const std::uint64_t bit = std::uint64_t{1} << (v & 63);
  if ((word & bit) != 0) return false;
  word |= bit;
  ++count_;
  return true;
}

bool VertexSet::erase(Vertex v) {
  check_vertex(v);
  auto& word = words_[static_cast<std::size_t>(v) >> 6];
  const std::uint64_t bit = std::uint64_t{1} << (v & 63);
  if ((word & bit) == 0) return false;
  word &= ~bit;
  --count_;
  return true;
}

void VertexSet::clear() {
  std::fill(words_.begin(), words_.end(), 0);
  count_ = 0;
}

VertexSet& VertexSet::operator|=(const VertexSet& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  recount();
  return *this;
}

VertexSet& VertexSet::operator&=(const VertexSet& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  recount();
  return *this;
}

VertexSet& VertexSet::operator-=(const VertexSet& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  recount();
  return *this;
}

std::size_t VertexSet::intersection_size(const VertexSet& other) const {
  check_compatible(other);
  std::size_t total = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    total += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
  }
  return total;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  check_compatible(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

std::vector<Vertex> VertexSet::to_vector() const {
  std::vector<Vertex> out;
  out.reserve(count_);
  for (Vertex v : *this) out.push_back(v);
  return out;
}

}  // namespace moddeg
