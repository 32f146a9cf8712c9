#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace gra {

using Element = std::uint32_t;

// A subset ("complex") of the elements 0..n-1 of one finite group. The
// universe size is part of the value: sets over groups of different order
// never compare equal.
class ElementSet {
 public:
  using Bits = boost::dynamic_bitset<std::uint64_t>;

  ElementSet() = default;
  explicit ElementSet(std::size_t universe) : bits_(universe) {}
  ElementSet(std::size_t universe, std::initializer_list<Element> elems)
      : bits_(universe) {
    for (Element e : elems) insert(e);
  }
  template <typename Range>
  static ElementSet of(std::size_t universe, const Range& elems) {
    ElementSet s(universe);
    for (auto e : elems) s.insert(static_cast<Element>(e));
    return s;
  }
  static ElementSet full(std::size_t universe) {
    ElementSet s(universe);
    s.bits_.set();
    return s;
  }

  std::size_t universe() const { return bits_.size(); }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  bool contains(Element e) const { return e < bits_.size() && bits_.test(e); }

  void insert(Element e) { bits_.set(e); }
  void erase(Element e) { bits_.reset(e); }

  // Least element, or universe() when empty.
  Element first() const {
    auto pos = bits_.find_first();
    return pos == Bits::npos ? static_cast<Element>(bits_.size())
                             : static_cast<Element>(pos);
  }

  std::vector<Element> elements() const {
    std::vector<Element> out;
    out.reserve(size());
    for (auto p = bits_.find_first(); p != Bits::npos; p = bits_.find_next(p))
      out.push_back(static_cast<Element>(p));
    return out;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (auto p = bits_.find_first(); p != Bits::npos; p = bits_.find_next(p))
      f(static_cast<Element>(p));
  }

  bool subset_of(const ElementSet& other) const {
    return bits_.is_subset_of(other.bits_);
  }
  bool intersects(const ElementSet& other) const {
    return bits_.intersects(other.bits_);
  }

  ElementSet& operator|=(const ElementSet& o) { bits_ |= o.bits_; return *this; }
  ElementSet& operator&=(const ElementSet& o) { bits_ &= o.bits_; return *this; }
  ElementSet& operator-=(const ElementSet& o) { bits_ -= o.bits_; return *this; }
  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
  friend ElementSet operator-(ElementSet a, const ElementSet& b) { return a -= b; }
  ElementSet complement() const {
    ElementSet s = *this;
    s.bits_.flip();
    return s;
  }

  friend bool operator==(const ElementSet& a, const ElementSet& b) {
    return a.bits_ == b.bits_;
  }
  friend bool operator!=(const ElementSet& a, const ElementSet& b) {
    return !(a == b);
  }
  // Orders by universe, then by the sorted element list.
  friend bool operator<(const ElementSet& a, const ElementSet& b) {
    if (a.universe() != b.universe()) return a.universe() < b.universe();
    return a.elements() < b.elements();
  }

  std::string to_string() const {
    std::ostringstream out;
    out << *this;
    return out.str();
  }

  friend std::ostream& operator<<(std::ostream& out, const ElementSet& s) {
    out << '{';
    bool first = true;
    s.for_each([&](Element e) {
      if (!first) out << ',';
      out << e;
      first = false;
    });
    return out << '}';
  }

 private:
  Bits bits_;
};

}  // namespace gra
