#include "tscls/core.hpp"

#include <algorithm>
#include <stdexcept>

#include "tscls/error.hpp"

namespace tscls {

bool is_identifier(std::string_view text) noexcept {
  if (text.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(text.front())) return false;
  return std::all_of(text.begin() + 1, text.end(),
                     [&](char c) { return alpha(c) || digit(c) || c == '_'; });
}

Element::Element(std::string name) : name_(std::move(name)) {
  if (!is_identifier(name_)) throw std::invalid_argument("invalid element name '" + name_ + "'");
}

Component Component::seq(Sequence elements) {
  Component c;
  c.kind_ = Kind::Seq;
  c.seq_ = std::move(elements);
  return c;
}

Component Component::loop(Sequence membrane, Term content) {
  Component c;
  c.kind_ = Kind::Loop;
  c.seq_ = std::move(membrane);
  c.content_ = std::make_shared<const Term>(std::move(content));
  return c;
}

bool Term::empty() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](const Entry& e) { return e.count == 0; });
}

std::size_t Term::size() const noexcept {
  std::size_t n = 0;
  for (const auto& e : entries_) n += e.count;
  return n;
}

namespace {

std::strong_ordering compare_seq(const Sequence& a, const Sequence& b) {
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

// Seq < Loop, then element names, then (for loops) the content.
std::strong_ordering compare(const Component& a, const Component& b) {
  if (a.kind() != b.kind()) return a.kind() <=> b.kind();
  if (auto c = compare_seq(a.elements(), b.elements()); c != 0) return c;
  if (a.is_seq()) return std::strong_ordering::equal;
  return compare(a.content(), b.content());
}

std::strong_ordering compare(const Term& a, const Term& b) {
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  std::size_t n = std::min(ea.size(), eb.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = compare(ea[i].component, eb[i].component); c != 0) return c;
    if (auto c = ea[i].count <=> eb[i].count; c != 0) return c;
  }
  return ea.size() <=> eb.size();
}

Sequence min_rotation(const Sequence& s) {
  const std::size_t n = s.size();
  std::size_t best = 0;
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      const Element& x = s[(r + i) % n];
      const Element& y = s[(best + i) % n];
      if (x == y) continue;
      if (x < y) best = r;
      break;
    }
  }
  Sequence out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(s[(best + i) % n]);
  return out;
}

namespace {

void sort_and_merge(std::vector<Entry>& entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& x, const Entry& y) { return compare(x.component, y.component) < 0; });
  std::vector<Entry> merged;
  merged.reserve(entries.size());
  for (auto& e : entries) {
    if (!merged.empty() && merged.back().component == e.component) {
      merged.back().count += e.count;
    } else {
      merged.push_back(std::move(e));
    }
  }
  entries = std::move(merged);
}

}  // namespace

Term canonicalize(const Term& t) {
  std::vector<Entry> out;
  out.reserve(t.entries().size());
  for (const auto& e : t.entries()) {
    if (e.count == 0) continue;
    const Component& c = e.component;
    if (c.is_seq()) {
      if (c.elements().empty()) continue;
      out.push_back(e);
      continue;
    }
    Term content = canonicalize(c.content());
    if (c.membrane().empty()) {
      if (content.empty()) continue;
      throw std::invalid_argument("membrane with empty sequence around a non-empty content");
    }
    out.push_back(Entry{Component::loop(min_rotation(c.membrane()), std::move(content)), e.count});
  }
  sort_and_merge(out);
  return Term(std::move(out));
}

bool is_canonical(const Term& t) {
  const auto& es = t.entries();
  for (std::size_t i = 0; i < es.size(); ++i) {
    const auto& e = es[i];
    if (e.count == 0 || e.component.elements().empty()) return false;
    if (i > 0 && compare(es[i - 1].component, e.component) >= 0) return false;
    if (e.component.is_loop()) {
      if (min_rotation(e.component.membrane()) != e.component.membrane()) return false;
      if (!is_canonical(e.component.content())) return false;
    }
  }
  return true;
}

bool congruent(const Term& a, const Term& b) { return canonicalize(a) == canonicalize(b); }

Term par(const Term& a, const Term& b) {
  if (a.entries().empty()) return b;
  if (b.entries().empty()) return a;
  std::vector<Entry> out;
  out.reserve(a.entries().size() + b.entries().size());
  auto ia = a.entries().begin(), ea = a.entries().end();
  auto ib = b.entries().begin(), eb = b.entries().end();
  while (ia != ea && ib != eb) {
    auto c = compare(ia->component, ib->component);
    if (c < 0) {
      out.push_back(*ia++);
    } else if (c > 0) {
      out.push_back(*ib++);
    } else {
      out.push_back(Entry{ia->component, ia->count + ib->count});
      ++ia;
      ++ib;
    }
  }
  out.insert(out.end(), ia, ea);
  out.insert(out.end(), ib, eb);
  return Term(std::move(out));
}

void collect_elements(const Term& t, std::set<Element>& out) {
  for (const auto& e : t.entries()) {
    out.insert(e.component.elements().begin(), e.component.elements().end());
    if (e.component.is_loop()) collect_elements(e.component.content(), out);
  }
}

// ---------------------------------------------------------------------------

const std::string& TypeEnv::lookup(const Element& e) const {
  auto it = map_.find(e);
  if (it == map_.end()) throw TypeError("no type assigned to element '" + e.name() + "'");
  return it->second;
}

void TypeEnv::fill_defaults(const std::set<Element>& elements) {
  for (const auto& e : elements) {
    if (!contains(e)) assign(e, default_type_name(e));
  }
}

std::string default_type_name(const Element& e) { return "t_" + e.name(); }

void TypeMultiset::add(const TypeName& t, std::size_t n) {
  if (n == 0) return;
  counts_[t] += n;
}

std::size_t TypeMultiset::count(const TypeName& t) const {
  auto it = counts_.find(t);
  return it == counts_.end() ? 0 : it->second;
}

std::size_t TypeMultiset::total() const noexcept {
  std::size_t n = 0;
  for (const auto& [_, c] : counts_) n += c;
  return n;
}

TypeMultiset& TypeMultiset::operator+=(const TypeMultiset& other) {
  for (const auto& [t, c] : other.counts_) add(t, c);
  return *this;
}

std::string TypeMultiset::str() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [t, c] : counts_) {
    if (!first) out += ", ";
    first = false;
    out += t.str() + ":" + std::to_string(c);
  }
  return out + "}";
}

TypeMultiset stype_of(const Sequence& s, const TypeEnv& env) {
  TypeMultiset out;
  for (const auto& e : s) out.add(TypeName::sequence(env.lookup(e)));
  return out;
}

TypeMultiset type_of(const Term& t, const TypeEnv& env) {
  TypeMultiset out;
  for (const auto& entry : t.entries()) {
    const Component& c = entry.component;
    if (c.is_seq() && c.elements().size() == 1) {
      out.add(TypeName::basic(env.lookup(c.elements().front())), entry.count);
      continue;
    }
    // Multi-element sequences and membranes both contribute sequence types.
    for (const auto& e : c.elements()) out.add(TypeName::sequence(env.lookup(e)), entry.count);
  }
  return out;
}

}  // namespace tscls
