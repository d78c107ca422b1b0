// Copyright 2026 The probe-kit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PROBEKIT_ELEMENT_SET_HPP_
#define PROBEKIT_ELEMENT_SET_HPP_

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace probekit {

// Elements are dense indices 0..n-1 into a ground set.
using Element = int;

inline constexpr int kMaxGroundSize = 32;

// A subset of a ground set of at most kMaxGroundSize elements, stored as a
// bitmask. Iteration is in increasing element order.
class ElementSet {
 public:
  constexpr ElementSet() = default;
  constexpr explicit ElementSet(std::uint32_t bits) : bits_(bits) {}
  ElementSet(std::initializer_list<Element> elements) {
    for (Element e : elements) insert(e);
  }

  static constexpr ElementSet full(int n) {
    return ElementSet(n >= 32 ? ~std::uint32_t{0}
                              : ((std::uint32_t{1} << n) - 1));
  }
  static constexpr ElementSet single(Element e) {
    return ElementSet(std::uint32_t{1} << e);
  }
  static ElementSet from_vector(const std::vector<Element>& elements) {
    ElementSet s;
    for (Element e : elements) s.insert(e);
    return s;
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(Element e) const { return (bits_ >> e) & 1u; }
  constexpr void insert(Element e) { bits_ |= std::uint32_t{1} << e; }
  constexpr void erase(Element e) { bits_ &= ~(std::uint32_t{1} << e); }

  constexpr ElementSet with(Element e) const {
    return ElementSet(bits_ | (std::uint32_t{1} << e));
  }
  constexpr ElementSet without(Element e) const {
    return ElementSet(bits_ & ~(std::uint32_t{1} << e));
  }
  constexpr bool is_subset_of(ElementSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr bool intersects(ElementSet other) const {
    return (bits_ & other.bits_) != 0;
  }
  // Smallest element; undefined on the empty set.
  constexpr Element front() const { return std::countr_zero(bits_); }

  friend constexpr ElementSet operator|(ElementSet a, ElementSet b) {
    return ElementSet(a.bits_ | b.bits_);
  }
  friend constexpr ElementSet operator&(ElementSet a, ElementSet b) {
    return ElementSet(a.bits_ & b.bits_);
  }
  // Set difference.
  friend constexpr ElementSet operator-(ElementSet a, ElementSet b) {
    return ElementSet(a.bits_ & ~b.bits_);
  }
  friend constexpr bool operator==(ElementSet a, ElementSet b) = default;
  friend constexpr auto operator<=>(ElementSet a, ElementSet b) = default;

  class Iterator {
   public:
    using value_type = Element;
    using difference_type = std::ptrdiff_t;
    constexpr Iterator() = default;
    constexpr explicit Iterator(std::uint32_t rest) : rest_(rest) {}
    constexpr Element operator*() const { return std::countr_zero(rest_); }
    constexpr Iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr Iterator operator++(int) {
      Iterator copy = *this;
      ++*this;
      return copy;
    }
    friend constexpr bool operator==(Iterator a, Iterator b) = default;

   private:
    std::uint32_t rest_ = 0;
  };

  constexpr Iterator begin() const { return Iterator(bits_); }
  constexpr Iterator end() const { return Iterator(0); }

  std::vector<Element> to_vector() const {
    std::vector<Element> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (Element e : *this) out.push_back(e);
    return out;
  }

  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (Element e : *this) {
      if (!first) out += ",";
      out += std::to_string(e);
      first = false;
    }
    return out + "}";
  }

 private:
  std::uint32_t bits_ = 0;
};

// Calls fn(subset) for every subset of `s`, including the empty set and `s`.
template <typename Fn>
void for_each_subset(ElementSet s, Fn&& fn) {
  const std::uint32_t mask = s.bits();
  std::uint32_t sub = 0;
  while (true) {
    fn(ElementSet(sub));
    if (sub == mask) break;
    sub = (sub - mask) & mask;
  }
}

}  // namespace probekit

#endif  // PROBEKIT_ELEMENT_SET_HPP_
