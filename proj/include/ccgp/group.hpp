// Vertex group menu: cyclic groups, the integers, finitely generated free
// groups, finite direct sums, and split wreath products of finite groups
// (base summed over the acting group's own element list, acted on by left
// translation).  All arithmetic is exact; integer payloads are
// arbitrary-precision.
//
// A VertexGroupSpec is an immutable description of a group; GroupElement is
// a tagged payload.  Every operation takes the spec explicitly and rejects
// payloads of the wrong shape with SpecMismatch.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ccgp/errors.hpp"

namespace ccgp {

using Int = boost::multiprecision::cpp_int;

class VertexGroupSpec;

// A group element payload.  The kind tag mirrors the spec the element was
// made by; containers of elements are used for both tuple and wreath parts.
class GroupElement {
 public:
  enum class Kind { Cyclic, Integers, Free, Tuple, Wreath };

  Kind kind() const { return kind_; }

  // Cyclic residue or integer value.
  const Int& scalar() const { return a_; }
  // Free word: (letter, exponent) runs, freely reduced.
  const std::vector<std::pair<int, Int>>& runs() const { return runs_; }
  // Tuple components.
  const std::vector<GroupElement>& parts() const { return parts_; }
  // Wreath base entries: (index, nontrivial base element), sorted by index.
  const std::vector<std::pair<int, GroupElement>>& base_entries() const {
    return entries_;
  }
  // Wreath top component.
  const GroupElement& top() const { return top_.front(); }

  bool is_identity() const {
    switch (kind_) {
      case Kind::Cyclic:
      case Kind::Integers: return a_ == 0;
      case Kind::Free: return runs_.empty();
      case Kind::Tuple:
        for (const auto& p : parts_)
          if (!p.is_identity()) return false;
        return true;
      case Kind::Wreath: return entries_.empty() && top().is_identity();
    }
    return false;
  }

  friend bool operator==(const GroupElement& x, const GroupElement& y) {
    return x.kind_ == y.kind_ && x.a_ == y.a_ && x.runs_ == y.runs_ &&
           x.parts_ == y.parts_ && x.entries_ == y.entries_ &&
           x.top_ == y.top_;
  }

  // Total order among elements of one spec; used for deterministic output.
  friend bool operator<(const GroupElement& x, const GroupElement& y) {
    if (x.kind_ != y.kind_) return x.kind_ < y.kind_;
    if (x.a_ != y.a_) return x.a_ < y.a_;
    if (x.runs_ != y.runs_) return x.runs_ < y.runs_;
    if (x.parts_ != y.parts_) return x.parts_ < y.parts_;
    if (x.entries_ != y.entries_) return x.entries_ < y.entries_;
    return x.top_ < y.top_;
  }

 private:
  friend class VertexGroupSpec;
  explicit GroupElement(Kind k) : kind_(k) {}

  Kind kind_;
  Int a_ = 0;
  std::vector<std::pair<int, Int>> runs_;
  std::vector<GroupElement> parts_;
  std::vector<std::pair<int, GroupElement>> entries_;
  std::vector<GroupElement> top_;  // singleton for Wreath
};

// Immutable group description with value semantics (cheap shared copies).
class VertexGroupSpec {
 public:
  enum class Kind { Cyclic, Integers, Free, DirectSum, SplitWreath };

  static VertexGroupSpec cyclic(Int n) {
    if (n < 2) throw Error("cyclic: modulus must be at least 2");
    auto node = std::make_shared<Node>();
    node->kind = Kind::Cyclic;
    node->n = std::move(n);
    return VertexGroupSpec(std::move(node));
  }

  static VertexGroupSpec integers() {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Integers;
    return VertexGroupSpec(std::move(node));
  }

  static VertexGroupSpec free_group(int rank) {
    if (rank < 1) throw Error("free: rank must be at least 1");
    auto node = std::make_shared<Node>();
    node->kind = Kind::Free;
    node->rank = rank;
    return VertexGroupSpec(std::move(node));
  }

  static VertexGroupSpec direct_sum(std::vector<VertexGroupSpec> parts) {
    if (parts.empty()) throw Error("sum: needs at least one part");
    auto node = std::make_shared<Node>();
    node->kind = Kind::DirectSum;
    node->children = std::move(parts);
    return VertexGroupSpec(std::move(node));
  }

  // base wr acting: functions from the acting group's element list into the
  // base, acted on by left translation, split extension.  Both factors must
  // be finite.
  static VertexGroupSpec split_wreath(VertexGroupSpec base,
                                      VertexGroupSpec acting) {
    if (!base.is_finite() || !acting.is_finite())
      throw Error("wreath: base and acting groups must be finite");
    auto node = std::make_shared<Node>();
    node->kind = Kind::SplitWreath;
    node->children = {std::move(base), std::move(acting)};
    return VertexGroupSpec(std::move(node));
  }

  Kind kind() const { return node_->kind; }
  const Int& modulus() const { return node_->n; }
  int rank() const { return node_->rank; }
  const std::vector<VertexGroupSpec>& parts() const { return node_->children; }
  const VertexGroupSpec& base() const { return node_->children[0]; }
  const VertexGroupSpec& acting() const { return node_->children[1]; }

  bool is_finite() const {
    switch (kind()) {
      case Kind::Cyclic: return true;
      case Kind::Integers:
      case Kind::Free: return false;
      case Kind::DirectSum:
        for (const auto& p : parts())
          if (!p.is_finite()) return false;
        return true;
      case Kind::SplitWreath: return true;
    }
    return false;
  }

  // Group order; only for finite specs.
  Int order() const {
    switch (kind()) {
      case Kind::Cyclic: return modulus();
      case Kind::DirectSum: {
        Int o = 1;
        for (const auto& p : parts()) o *= p.order();
        return o;
      }
      case Kind::SplitWreath: {
        Int m = acting().order();
        Int o = 1;
        for (Int i = 0; i < m; ++i) o *= base().order();
        return o * m;
      }
      default: throw Error("order: spec is infinite");
    }
  }

  bool is_abelian() const {
    switch (kind()) {
      case Kind::Cyclic:
      case Kind::Integers: return true;
      case Kind::Free: return rank() == 1;
      case Kind::DirectSum:
        for (const auto& p : parts())
          if (!p.is_abelian()) return false;
        return true;
      case Kind::SplitWreath: return false;  // both factors have order >= 2
    }
    return false;
  }

  // ----- element construction -----

  GroupElement identity() const {
    switch (kind()) {
      case Kind::Cyclic: return make(GroupElement::Kind::Cyclic);
      case Kind::Integers: return make(GroupElement::Kind::Integers);
      case Kind::Free: return make(GroupElement::Kind::Free);
      case Kind::DirectSum: {
        GroupElement e = make(GroupElement::Kind::Tuple);
        for (const auto& p : parts()) e.parts_.push_back(p.identity());
        return e;
      }
      case Kind::SplitWreath: {
        GroupElement e = make(GroupElement::Kind::Wreath);
        e.top_.push_back(acting().identity());
        return e;
      }
    }
    throw Error("identity: bad spec");
  }

  // Cyclic (reduced mod n) or Integers.
  GroupElement from_int(Int v) const {
    if (kind() == Kind::Cyclic) {
      GroupElement e = make(GroupElement::Kind::Cyclic);
      e.a_ = ((v % modulus()) + modulus()) % modulus();
      return e;
    }
    if (kind() == Kind::Integers) {
      GroupElement e = make(GroupElement::Kind::Integers);
      e.a_ = std::move(v);
      return e;
    }
    throw SpecMismatch("from_int: spec is " + to_text());
  }

  // Free word from a raw (letter, exponent) sequence; reduces freely.
  // Letters are 0-based.
  GroupElement free_word(const std::vector<std::pair<int, Int>>& raw) const {
    if (kind() != Kind::Free) throw SpecMismatch("free_word: spec is " + to_text());
    GroupElement e = make(GroupElement::Kind::Free);
    for (const auto& [letter, exp] : raw) {
      if (letter < 0 || letter >= rank())
        throw SpecMismatch("free_word: letter out of range");
      if (exp == 0) continue;
      if (!e.runs_.empty() && e.runs_.back().first == letter) {
        e.runs_.back().second += exp;
        if (e.runs_.back().second == 0) e.runs_.pop_back();
      } else {
        e.runs_.emplace_back(letter, exp);
      }
    }
    return e;
  }

  GroupElement tuple(std::vector<GroupElement> components) const {
    if (kind() != Kind::DirectSum) throw SpecMismatch("tuple: spec is " + to_text());
    if (components.size() != parts().size())
      throw SpecMismatch("tuple: arity mismatch");
    GroupElement e = make(GroupElement::Kind::Tuple);
    e.parts_ = std::move(components);
    for (std::size_t i = 0; i < parts().size(); ++i) parts()[i].check(e.parts_[i]);
    return e;
  }

  // Wreath element from sparse base entries and a top element.  Identity
  // base values are dropped; entries must use distinct indices in
  // [0, |acting|).
  GroupElement wreath(std::vector<std::pair<int, GroupElement>> entries,
                      GroupElement top) const {
    if (kind() != Kind::SplitWreath)
      throw SpecMismatch("wreath: spec is " + to_text());
    acting().check(top);
    const Int m = acting().order();
    GroupElement e = make(GroupElement::Kind::Wreath);
    std::sort(entries.begin(), entries.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& [i, a] : entries) {
      if (i < 0 || Int(i) >= m) throw SpecMismatch("wreath: index out of range");
      if (!e.entries_.empty() && e.entries_.back().first == i)
        throw SpecMismatch("wreath: duplicate index");
      base().check(a);
      if (!a.is_identity()) e.entries_.emplace_back(i, std::move(a));
    }
    e.top_.push_back(std::move(top));
    return e;
  }

  // ----- validation -----

  void check(const GroupElement& x) const {
    if (!valid(x)) throw SpecMismatch("element does not belong to " + to_text());
  }

  bool valid(const GroupElement& x) const {
    switch (kind()) {
      case Kind::Cyclic:
        return x.kind_ == GroupElement::Kind::Cyclic && x.a_ >= 0 &&
               x.a_ < modulus();
      case Kind::Integers: return x.kind_ == GroupElement::Kind::Integers;
      case Kind::Free: {
        if (x.kind_ != GroupElement::Kind::Free) return false;
        for (std::size_t i = 0; i < x.runs_.size(); ++i) {
          auto [letter, exp] = x.runs_[i];
          if (letter < 0 || letter >= rank() || exp == 0) return false;
          if (i > 0 && x.runs_[i - 1].first == letter) return false;
        }
        return true;
      }
      case Kind::DirectSum: {
        if (x.kind_ != GroupElement::Kind::Tuple ||
            x.parts_.size() != parts().size())
          return false;
        for (std::size_t i = 0; i < parts().size(); ++i)
          if (!parts()[i].valid(x.parts_[i])) return false;
        return true;
      }
      case Kind::SplitWreath: {
        if (x.kind_ != GroupElement::Kind::Wreath || x.top_.size() != 1 ||
            !acting().valid(x.top_[0]))
          return false;
        const Int m = acting().order();
        for (std::size_t i = 0; i < x.entries_.size(); ++i) {
          const auto& [idx, a] = x.entries_[i];
          if (idx < 0 || Int(idx) >= m) return false;
          if (i > 0 && x.entries_[i - 1].first >= idx) return false;
          if (!base().valid(a) || a.is_identity()) return false;
        }
        return true;
      }
    }
    return false;
  }

  // ----- group operations -----

  GroupElement mul(const GroupElement& x, const GroupElement& y) const {
    check(x);
    check(y);
    switch (kind()) {
      case Kind::Cyclic:
      case Kind::Integers: return from_int(x.a_ + y.a_);
      case Kind::Free: {
        std::vector<std::pair<int, Int>> raw = x.runs_;
        raw.insert(raw.end(), y.runs_.begin(), y.runs_.end());
        return free_word(raw);
      }
      case Kind::DirectSum: {
        std::vector<GroupElement> out;
        for (std::size_t i = 0; i < parts().size(); ++i)
          out.push_back(parts()[i].mul(x.parts_[i], y.parts_[i]));
        return tuple(std::move(out));
      }
      case Kind::SplitWreath: {
        // (f, b)(f', b') = (i -> f(i) * f'(b^-1 i), b b').
        std::vector<std::pair<int, GroupElement>> entries;
        for (const auto& [i, a] : x.entries_) entries.emplace_back(i, a);
        for (const auto& [i, a] : y.entries_) {
          int j = translate(x.top_[0], i);
          auto it = std::find_if(entries.begin(), entries.end(),
                                 [j](const auto& e) { return e.first == j; });
          if (it == entries.end())
            entries.emplace_back(j, a);
          else
            it->second = base().mul(it->second, a);
        }
        return wreath(std::move(entries), acting().mul(x.top_[0], y.top_[0]));
      }
    }
    throw Error("mul: bad spec");
  }

  GroupElement inv(const GroupElement& x) const {
    check(x);
    switch (kind()) {
      case Kind::Cyclic:
      case Kind::Integers: return from_int(-x.a_);
      case Kind::Free: {
        std::vector<std::pair<int, Int>> raw;
        for (auto it = x.runs_.rbegin(); it != x.runs_.rend(); ++it)
          raw.emplace_back(it->first, -it->second);
        return free_word(raw);
      }
      case Kind::DirectSum: {
        std::vector<GroupElement> out;
        for (std::size_t i = 0; i < parts().size(); ++i)
          out.push_back(parts()[i].inv(x.parts_[i]));
        return tuple(std::move(out));
      }
      case Kind::SplitWreath: {
        // (f, b)^-1 = (i -> f(b i)^-1, b^-1).
        GroupElement binv = acting().inv(x.top_[0]);
        std::vector<std::pair<int, GroupElement>> entries;
        for (const auto& [i, a] : x.entries_)
          entries.emplace_back(translate(binv, i), base().inv(a));
        return wreath(std::move(entries), std::move(binv));
      }
    }
    throw Error("inv: bad spec");
  }

  // ----- enumeration -----

  // Every element of a finite spec, deterministic order, identity first.
  // Throws Error for infinite specs and BudgetExhausted past max_count.
  std::vector<GroupElement> elements(std::size_t max_count = 1u << 20) const {
    if (!is_finite()) throw Error("elements: spec " + to_text() + " is infinite");
    if (order() > Int(max_count))
      throw BudgetExhausted("elements: order of " + to_text() + " exceeds " +
                            std::to_string(max_count));
    switch (kind()) {
      case Kind::Cyclic: {
        std::vector<GroupElement> out;
        for (Int r = 0; r < modulus(); ++r) out.push_back(from_int(r));
        return out;
      }
      case Kind::DirectSum: {
        std::vector<std::vector<GroupElement>> axes;
        for (const auto& p : parts()) axes.push_back(p.elements(max_count));
        std::vector<GroupElement> out;
        std::vector<std::size_t> idx(axes.size(), 0);
        while (true) {
          std::vector<GroupElement> comp;
          for (std::size_t i = 0; i < axes.size(); ++i)
            comp.push_back(axes[i][idx[i]]);
          out.push_back(tuple(std::move(comp)));
          std::size_t i = axes.size();
          while (i > 0 && ++idx[i - 1] == axes[i - 1].size()) idx[--i] = 0;
          if (i == 0) break;
        }
        return out;
      }
      case Kind::SplitWreath: {
        std::vector<GroupElement> bs = acting().elements(max_count);
        std::vector<GroupElement> as = base().elements(max_count);
        const int m = static_cast<int>(bs.size());
        std::vector<GroupElement> out;
        for (const auto& b : bs) {
          std::vector<std::size_t> idx(m, 0);
          while (true) {
            std::vector<std::pair<int, GroupElement>> entries;
            for (int i = 0; i < m; ++i)
              if (idx[i] != 0) entries.emplace_back(i, as[idx[i]]);
            out.push_back(wreath(std::move(entries), b));
            if (out.size() > max_count)
              throw BudgetExhausted("elements: enumeration exceeds budget");
            int i = m;
            while (i > 0 && ++idx[i - 1] == as.size()) idx[--i] = 0;
            if (i == 0) break;
          }
        }
        return out;
      }
      default: throw Error("elements: bad spec");
    }
  }

  // Nontrivial elements usable as single syllables: all of them for finite
  // specs; for the integers values in [-bound, bound]; for free groups
  // single-letter words with exponents in [-bound, bound].
  std::vector<GroupElement> small_elements(Int bound = 1,
                                           std::size_t max_count = 1u << 20) const {
    std::vector<GroupElement> out;
    switch (kind()) {
      case Kind::Integers:
        for (Int v = -bound; v <= bound; ++v)
          if (v != 0) out.push_back(from_int(v));
        return out;
      case Kind::Free:
        for (int letter = 0; letter < rank(); ++letter)
          for (Int e = -bound; e <= bound; ++e)
            if (e != 0) out.push_back(free_word({{letter, e}}));
        return out;
      case Kind::DirectSum:
        if (!is_finite()) {
          // Tuples with exactly one nontrivial small coordinate.
          for (std::size_t i = 0; i < parts().size(); ++i)
            for (const auto& a : parts()[i].small_elements(bound, max_count)) {
              std::vector<GroupElement> comp;
              for (std::size_t j = 0; j < parts().size(); ++j)
                comp.push_back(j == i ? a : parts()[j].identity());
              out.push_back(tuple(std::move(comp)));
            }
          return out;
        }
        [[fallthrough]];
      default:
        for (const auto& x : elements(max_count))
          if (!x.is_identity()) out.push_back(x);
        return out;
    }
  }

  // ----- wreath structure -----

  // The epimorphism onto the acting group.
  GroupElement wreath_top(const GroupElement& x) const {
    if (kind() != Kind::SplitWreath)
      throw SpecMismatch("wreath_top: spec is " + to_text());
    check(x);
    return x.top_[0];
  }

  // Left translation action on the base index set: where index i goes
  // under the acting element b.
  int translate(const GroupElement& b, int i) const {
    if (kind() != Kind::SplitWreath)
      throw SpecMismatch("translate: spec is " + to_text());
    const auto& elems = acting_elements();
    GroupElement moved = acting().mul(b, elems[i]);
    for (std::size_t j = 0; j < elems.size(); ++j)
      if (elems[j] == moved) return static_cast<int>(j);
    throw Error("translate: acting element not found");
  }

  // ----- text -----

  std::string to_text() const {
    switch (kind()) {
      case Kind::Cyclic: return "Z/" + modulus().str();
      case Kind::Integers: return "Z";
      case Kind::Free: return "F" + std::to_string(rank());
      case Kind::DirectSum: {
        std::string s = "sum(";
        for (std::size_t i = 0; i < parts().size(); ++i) {
          if (i) s += ", ";
          s += parts()[i].to_text();
        }
        return s + ")";
      }
      case Kind::SplitWreath:
        return "wreath(" + base().to_text() + ", " + acting().to_text() + ")";
    }
    return "?";
  }

  friend bool operator==(const VertexGroupSpec& a, const VertexGroupSpec& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Kind::Cyclic: return a.modulus() == b.modulus();
      case Kind::Integers: return true;
      case Kind::Free: return a.rank() == b.rank();
      case Kind::DirectSum:
      case Kind::SplitWreath: return a.parts() == b.parts();
    }
    return false;
  }

 private:
  struct Node {
    Kind kind;
    Int n = 0;
    int rank = 0;
    std::vector<VertexGroupSpec> children;
    // Lazily cached acting-group element list for SplitWreath.
    mutable std::vector<GroupElement> acting_cache;
  };

  explicit VertexGroupSpec(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}

  static GroupElement make(GroupElement::Kind k) { return GroupElement(k); }

  const std::vector<GroupElement>& acting_elements() const {
    if (node_->acting_cache.empty())
      node_->acting_cache = acting().elements();
    return node_->acting_cache;
  }

  std::shared_ptr<const Node> node_;
};

// ----- element literals -----
//
//   Cyclic / Integers   signed decimal            7, -12
//   Free                [x1 x2^-3 x1^2], [] = 1
//   DirectSum           (lit, lit, ...)
//   SplitWreath         {i:lit, j:lit | lit}, {|lit} for trivial base part

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

inline Int parse_int(const std::string& text) {
  std::string t = trim(text);
  if (t.empty()) throw ParseError("expected an integer");
  std::size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
  if (i == t.size()) throw ParseError("expected an integer, got '" + t + "'");
  for (; i < t.size(); ++i)
    if (t[i] < '0' || t[i] > '9')
      throw ParseError("expected an integer, got '" + t + "'");
  return Int(t);
}

// Split on top-level occurrences of sep (depth counts (), [], {}).
inline std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace detail

inline GroupElement parse_element(const VertexGroupSpec& spec,
                                  const std::string& text);

namespace detail {

inline GroupElement parse_free(const VertexGroupSpec& spec,
                               const std::string& body) {
  std::vector<std::pair<int, Int>> raw;
  std::size_t i = 0;
  while (i < body.size()) {
    if (body[i] == ' ' || body[i] == '\t') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < body.size() && body[j] != ' ' && body[j] != '\t') ++j;
    std::string tok = body.substr(i, j - i);
    i = j;
    std::size_t caret = tok.find('^');
    std::string letter = caret == std::string::npos ? tok : tok.substr(0, caret);
    Int exp = caret == std::string::npos ? Int(1)
                                         : parse_int(tok.substr(caret + 1));
    if (letter.size() < 2 || letter[0] != 'x')
      throw ParseError("free literal: bad letter '" + tok + "'");
    Int idx = parse_int(letter.substr(1));
    if (idx < 1 || idx > spec.rank())
      throw ParseError("free literal: letter out of range in '" + tok + "'");
    raw.emplace_back(static_cast<int>(idx) - 1, exp);
  }
  return spec.free_word(raw);
}

}  // namespace detail

inline GroupElement parse_element(const VertexGroupSpec& spec,
                                  const std::string& text) {
  using Kind = VertexGroupSpec::Kind;
  const std::string t = detail::trim(text);
  switch (spec.kind()) {
    case Kind::Cyclic:
    case Kind::Integers: return spec.from_int(detail::parse_int(t));
    case Kind::Free: {
      if (t.size() < 2 || t.front() != '[' || t.back() != ']')
        throw ParseError("free literal must be bracketed: '" + t + "'");
      return detail::parse_free(spec, t.substr(1, t.size() - 2));
    }
    case Kind::DirectSum: {
      if (t.size() < 2 || t.front() != '(' || t.back() != ')')
        throw ParseError("sum literal must be parenthesized: '" + t + "'");
      auto items = detail::split_top(t.substr(1, t.size() - 2), ',');
      if (items.size() != spec.parts().size())
        throw ParseError("sum literal arity mismatch in '" + t + "'");
      std::vector<GroupElement> comp;
      for (std::size_t i = 0; i < items.size(); ++i)
        comp.push_back(parse_element(spec.parts()[i], items[i]));
      return spec.tuple(std::move(comp));
    }
    case Kind::SplitWreath: {
      if (t.size() < 2 || t.front() != '{' || t.back() != '}')
        throw ParseError("wreath literal must be braced: '" + t + "'");
      auto sides = detail::split_top(t.substr(1, t.size() - 2), '|');
      if (sides.size() != 2)
        throw ParseError("wreath literal needs one '|': '" + t + "'");
      std::vector<std::pair<int, GroupElement>> entries;
      std::string left = detail::trim(sides[0]);
      if (!left.empty()) {
        for (const auto& item : detail::split_top(left, ',')) {
          auto kv = detail::split_top(item, ':');
          if (kv.size() != 2)
            throw ParseError("wreath entry needs 'index:element': '" + item + "'");
          Int idx = detail::parse_int(kv[0]);
          entries.emplace_back(static_cast<int>(idx),
                               parse_element(spec.base(), kv[1]));
        }
      }
      return spec.wreath(std::move(entries), parse_element(spec.acting(), sides[1]));
    }
  }
  throw ParseError("unsupported spec");
}

inline std::string format_element(const VertexGroupSpec& spec,
                                  const GroupElement& x) {
  using Kind = VertexGroupSpec::Kind;
  spec.check(x);
  switch (spec.kind()) {
    case Kind::Cyclic:
    case Kind::Integers: return x.scalar().str();
    case Kind::Free: {
      std::string s = "[";
      for (std::size_t i = 0; i < x.runs().size(); ++i) {
        if (i) s += ' ';
        s += "x" + std::to_string(x.runs()[i].first + 1);
        if (x.runs()[i].second != 1) s += "^" + x.runs()[i].second.str();
      }
      return s + "]";
    }
    case Kind::DirectSum: {
      std::string s = "(";
      for (std::size_t i = 0; i < x.parts().size(); ++i) {
        if (i) s += ", ";
        s += format_element(spec.parts()[i], x.parts()[i]);
      }
      return s + ")";
    }
    case Kind::SplitWreath: {
      std::string s = "{";
      for (std::size_t i = 0; i < x.base_entries().size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(x.base_entries()[i].first) + ":" +
             format_element(spec.base(), x.base_entries()[i].second);
      }
      return s + "|" + format_element(spec.acting(), x.top()) + "}";
    }
  }
  throw Error("format_element: bad spec");
}

// ----- spec literals -----
//
//   Z   Z/7   F2   sum(Z/2, Z)   wreath(Z/2, Z/3)

inline VertexGroupSpec parse_spec(const std::string& text) {
  const std::string t = detail::trim(text);
  if (t == "Z") return VertexGroupSpec::integers();
  if (t.rfind("Z/", 0) == 0) {
    Int n = detail::parse_int(t.substr(2));
    if (n < 2) throw ParseError("cyclic modulus must be at least 2: '" + t + "'");
    return VertexGroupSpec::cyclic(n);
  }
  if (t.size() >= 2 && t[0] == 'F') {
    Int k = detail::parse_int(t.substr(1));
    if (k < 1) throw ParseError("free rank must be at least 1: '" + t + "'");
    return VertexGroupSpec::free_group(static_cast<int>(k));
  }
  auto call = [&](const std::string& head) -> std::optional<std::string> {
    if (t.rfind(head + "(", 0) == 0 && t.back() == ')')
      return t.substr(head.size() + 1, t.size() - head.size() - 2);
    return std::nullopt;
  };
  if (auto body = call("sum")) {
    std::vector<VertexGroupSpec> parts;
    for (const auto& item : detail::split_top(*body, ','))
      parts.push_back(parse_spec(item));
    return VertexGroupSpec::direct_sum(std::move(parts));
  }
  if (auto body = call("wreath")) {
    auto items = detail::split_top(*body, ',');
    if (items.size() != 2)
      throw ParseError("wreath(...) takes exactly two groups: '" + t + "'");
    try {
      return VertexGroupSpec::split_wreath(parse_spec(items[0]),
                                           parse_spec(items[1]));
    } catch (const Error& e) {
      throw ParseError(std::string("wreath: ") + e.what());
    }
  }
  throw ParseError("unknown group spec '" + t + "'");
}

// ----- wreath verification -----

// Exhaustive verification that a SplitWreath spec satisfies the wreath-like
// axioms: the top projection is a homomorphism onto the acting group whose
// kernel is exactly the base sum, and conjugation carries base summand i
// onto base summand (top of w) applied to i.
struct WreathReport {
  Int order_total = 0;
  Int order_expected = 0;
  bool projection_is_homomorphism = false;
  bool projection_onto = false;
  bool kernel_is_base_sum = false;
  std::size_t summand_checks = 0;
  std::size_t summand_failures = 0;
  bool all_pass() const {
    return order_total == order_expected && projection_is_homomorphism &&
           projection_onto && kernel_is_base_sum && summand_checks > 0 &&
           summand_failures == 0;
  }
};

inline WreathReport wreath_summand_conjugation_check(
    const VertexGroupSpec& w, std::size_t max_count = 1u << 20) {
  if (w.kind() != VertexGroupSpec::Kind::SplitWreath)
    throw SpecMismatch("wreath check: spec is " + w.to_text());
  WreathReport rep;
  const auto all = w.elements(max_count);
  const auto bs = w.acting().elements(max_count);
  const auto as = w.base().elements(max_count);
  const int m = static_cast<int>(bs.size());
  rep.order_total = Int(all.size());
  rep.order_expected = w.order();

  rep.projection_is_homomorphism = true;
  for (const auto& x : all)
    for (const auto& y : all)
      if (w.wreath_top(w.mul(x, y)) !=
          w.acting().mul(w.wreath_top(x), w.wreath_top(y)))
        rep.projection_is_homomorphism = false;

  std::vector<bool> hit(m, false);
  Int kernel = 0;
  bool kernel_ok = true;
  for (const auto& x : all) {
    const GroupElement t = w.wreath_top(x);
    for (int j = 0; j < m; ++j)
      if (bs[j] == t) hit[j] = true;
    if (t.is_identity()) ++kernel;
  }
  rep.projection_onto =
      std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  Int base_sum = 1;
  for (int i = 0; i < m; ++i) base_sum *= w.base().order();
  kernel_ok = kernel == base_sum;
  rep.kernel_is_base_sum = kernel_ok;

  // Conjugation of summand i by x must be exactly summand translate(top, i).
  for (const auto& x : all) {
    const GroupElement xin = w.inv(x);
    for (int i = 0; i < m; ++i) {
      ++rep.summand_checks;
      const int j = w.translate(w.wreath_top(x), i);
      bool ok = true;
      std::vector<GroupElement> image;
      for (const auto& a : as) {
        if (a.is_identity()) continue;
        GroupElement conj = w.mul(w.mul(x, w.wreath({{i, a}}, w.acting().identity())), xin);
        if (!w.wreath_top(conj).is_identity() ||
            conj.base_entries().size() != 1 ||
            conj.base_entries()[0].first != j) {
          ok = false;
          break;
        }
        image.push_back(conj);
      }
      // Injective on a finite set, so "into" of full size means "onto".
      std::sort(image.begin(), image.end());
      if (ok)
        ok = std::adjacent_find(image.begin(), image.end()) == image.end() &&
             image.size() + 1 == as.size();
      if (!ok) ++rep.summand_failures;
    }
  }
  return rep;
}

}  // namespace ccgp
