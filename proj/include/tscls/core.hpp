#pragma once

// Term algebra of the calculus of looping sequences: elements, sequences,
// parallel compositions and membranes (looping sequences with a content).
//
// A Term is a multiset of Components stored as (component, multiplicity)
// entries. Structural congruence is decided by comparing canonical forms:
// entries sorted by the total component order and merged, every membrane
// rotated to its lexicographically least rotation, and empty pieces erased.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tscls {

/// A symbol of the alphabet. Names match [A-Za-z][A-Za-z0-9_]*.
class Element {
 public:
  Element() = default;
  explicit Element(std::string name);

  const std::string& name() const noexcept { return name_; }

  friend bool operator==(const Element&, const Element&) = default;
  friend std::strong_ordering operator<=>(const Element& a, const Element& b) {
    return a.name_.compare(b.name_) <=> 0;
  }

 private:
  std::string name_;
};

bool is_identifier(std::string_view text) noexcept;

/// Flattened sequence; the empty vector is the empty sequence.
using Sequence = std::vector<Element>;

class Term;

class Component {
 public:
  enum class Kind : std::uint8_t { Seq, Loop };

  /// A sequence component; `elements` must be non-empty.
  static Component seq(Sequence elements);
  /// A membrane `membrane` wrapping `content`.
  static Component loop(Sequence membrane, Term content);

  Kind kind() const noexcept { return kind_; }
  bool is_seq() const noexcept { return kind_ == Kind::Seq; }
  bool is_loop() const noexcept { return kind_ == Kind::Loop; }

  /// Elements of a sequence component, or the membrane of a loop.
  const Sequence& elements() const noexcept { return seq_; }
  const Sequence& membrane() const noexcept { return seq_; }
  /// Content of a loop. Only valid when is_loop().
  const Term& content() const noexcept { return *content_; }

  /// True for a one-element sequence component (a free molecule).
  bool is_bare(const Element& e) const noexcept {
    return kind_ == Kind::Seq && seq_.size() == 1 && seq_.front() == e;
  }

 private:
  Component() = default;
  Kind kind_ = Kind::Seq;
  Sequence seq_;
  std::shared_ptr<const Term> content_;
};

struct Entry {
  Component component;
  std::size_t count = 1;
};

class Term {
 public:
  Term() = default;
  /// Raw construction; call canonicalize() before comparing.
  explicit Term(std::vector<Entry> entries) : entries_(std::move(entries)) {}

  static Term of(const Component& c, std::size_t count = 1) { return Term({Entry{c, count}}); }
  static Term element(const Element& e, std::size_t count = 1) {
    return of(Component::seq({e}), count);
  }

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::vector<Entry>& mutable_entries() noexcept { return entries_; }

  /// True for the empty term (after canonicalization: iff congruent to eps).
  bool empty() const noexcept;
  /// Number of outermost components counted with multiplicity.
  std::size_t size() const noexcept;

 private:
  std::vector<Entry> entries_;
};

std::strong_ordering compare(const Component& a, const Component& b);
std::strong_ordering compare(const Term& a, const Term& b);

inline bool operator==(const Component& a, const Component& b) { return compare(a, b) == 0; }
inline std::strong_ordering operator<=>(const Component& a, const Component& b) { return compare(a, b); }
inline bool operator==(const Term& a, const Term& b) { return compare(a, b) == 0; }
inline std::strong_ordering operator<=>(const Term& a, const Term& b) { return compare(a, b); }

/// Lexicographically least rotation of a membrane.
Sequence min_rotation(const Sequence& s);

/// Unique representative of the congruence class of `t`.
/// Throws std::invalid_argument for a membrane that is empty but wraps a
/// non-empty content.
Term canonicalize(const Term& t);
bool is_canonical(const Term& t);
bool congruent(const Term& a, const Term& b);

/// Parallel composition of two canonical terms (canonical result).
Term par(const Term& a, const Term& b);

/// Every element occurring anywhere in `t`.
void collect_elements(const Term& t, std::set<Element>& out);

// ---------------------------------------------------------------------------
// Types

struct TypeName {
  enum class Tag : std::uint8_t { Basic, Seq };

  std::string base;
  Tag tag = Tag::Basic;

  static TypeName basic(std::string b) { return {std::move(b), Tag::Basic}; }
  static TypeName sequence(std::string b) { return {std::move(b), Tag::Seq}; }

  std::string str() const { return tag == Tag::Seq ? "seq(" + base + ")" : base; }

  friend bool operator==(const TypeName&, const TypeName&) = default;
  friend auto operator<=>(const TypeName&, const TypeName&) = default;
};

/// Type assignment from elements to base type names.
class TypeEnv {
 public:
  void assign(const Element& e, std::string type) { map_[e] = std::move(type); }
  bool contains(const Element& e) const { return map_.count(e) != 0; }
  /// Throws TypeError naming `e` when unassigned.
  const std::string& lookup(const Element& e) const;
  /// Gives every element in `elements` that is still unassigned its default type.
  void fill_defaults(const std::set<Element>& elements);

  const std::map<Element, std::string>& assignments() const noexcept { return map_; }

 private:
  std::map<Element, std::string> map_;
};

/// The type an undeclared element receives: "t_" followed by its name.
std::string default_type_name(const Element& e);

class TypeMultiset {
 public:
  void add(const TypeName& t, std::size_t n = 1);
  std::size_t count(const TypeName& t) const;
  std::size_t total() const noexcept;
  bool empty() const noexcept { return counts_.empty(); }
  const std::map<TypeName, std::size_t>& counts() const noexcept { return counts_; }

  TypeMultiset& operator+=(const TypeMultiset& other);
  friend TypeMultiset operator+(TypeMultiset a, const TypeMultiset& b) { return a += b; }
  friend bool operator==(const TypeMultiset&, const TypeMultiset&) = default;

  std::string str() const;

 private:
  std::map<TypeName, std::size_t> counts_;
};

/// Multiset of types of the outermost level of `t`: membranes contribute the
/// sequence types of their membrane only, multi-element sequences contribute
/// sequence types, and a lone element contributes its basic type.
TypeMultiset type_of(const Term& t, const TypeEnv& env);
/// One sequence type per element of `s`.
TypeMultiset stype_of(const Sequence& s, const TypeEnv& env);

}  // namespace tscls
