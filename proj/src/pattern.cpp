#include "tscls/pattern.hpp"

#include "tscls/syntax.hpp"

namespace tscls {

std::string Variable::str() const {
  switch (kind) {
    case Kind::Term: return "$" + name;
    case Kind::Seq: return "~" + name;
    case Kind::Elem: return "?" + name;
  }
  return name;
}

PatternItem PatternItem::sequence(SeqPattern s) {
  PatternItem it;
  it.kind = Kind::Seq;
  it.seq = std::move(s);
  return it;
}

PatternItem PatternItem::loop(SeqPattern membrane, Pattern content) {
  PatternItem it;
  it.kind = Kind::Loop;
  it.seq = std::move(membrane);
  it.content = std::make_shared<const Pattern>(std::move(content));
  return it;
}

PatternItem PatternItem::term_var(std::string name) {
  PatternItem it;
  it.kind = Kind::TermVar;
  it.var = Variable::term(std::move(name));
  return it;
}

bool operator==(const PatternItem& a, const PatternItem& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case PatternItem::Kind::Seq: return a.seq == b.seq;
    case PatternItem::Kind::Loop: return a.seq == b.seq && *a.content == *b.content;
    case PatternItem::Kind::TermVar: return a.var == b.var;
  }
  return false;
}

bool operator==(const Pattern& a, const Pattern& b) { return a.items == b.items; }

namespace {

void walk_vars(const Pattern& p, std::vector<Variable>& out, std::set<Variable>& seen) {
  auto note = [&](const Variable& v) {
    if (seen.insert(v).second) out.push_back(v);
  };
  for (const auto& item : p.items) {
    switch (item.kind) {
      case PatternItem::Kind::TermVar: note(item.var); break;
      case PatternItem::Kind::Seq:
      case PatternItem::Kind::Loop:
        for (const auto& atom : item.seq) {
          if (const auto* v = std::get_if<Variable>(&atom)) note(*v);
        }
        if (item.kind == PatternItem::Kind::Loop) walk_vars(*item.content, out, seen);
        break;
    }
  }
}

// Position of the first occurrence: 1 = whole parallel item, 0 = elsewhere,
// -1 = not found.
int first_position(const Pattern& p, const Variable& v) {
  for (const auto& item : p.items) {
    if (item.kind == PatternItem::Kind::TermVar) continue;
    for (const auto& atom : item.seq) {
      const auto* var = std::get_if<Variable>(&atom);
      if (var && *var == v) {
        return item.kind == PatternItem::Kind::Seq && item.seq.size() == 1 ? 1 : 0;
      }
    }
    if (item.kind == PatternItem::Kind::Loop) {
      if (int r = first_position(*item.content, v); r >= 0) return r;
    }
  }
  return -1;
}

}  // namespace

std::vector<Variable> variables(const Pattern& p) {
  std::vector<Variable> out;
  std::set<Variable> seen;
  walk_vars(p, out, seen);
  return out;
}

void collect_elements(const Pattern& p, std::set<Element>& out) {
  for (const auto& item : p.items) {
    for (const auto& atom : item.seq) {
      if (const auto* e = std::get_if<Element>(&atom)) out.insert(*e);
    }
    if (item.kind == PatternItem::Kind::Loop) collect_elements(*item.content, out);
  }
}

bool elem_var_is_parallel_item(const Pattern& p, const Variable& v) {
  return first_position(p, v) == 1;
}

std::string binding_str(const Binding& b) {
  if (const auto* t = std::get_if<Term>(&b)) return print_term(*t);
  if (const auto* s = std::get_if<Sequence>(&b)) return print_sequence(*s);
  return std::get<Element>(b).name();
}

std::string instantiation_str(const Instantiation& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, b] : s) {
    if (!first) out += ", ";
    first = false;
    out += v.str() + " -> " + binding_str(b);
  }
  return out + "}";
}

std::optional<Instantiation> merge(const Instantiation& a, const Instantiation& b) {
  Instantiation out = a;
  for (const auto& [v, val] : b) {
    auto [it, inserted] = out.emplace(v, val);
    if (!inserted && !(it->second == val)) return std::nullopt;
  }
  return out;
}

}  // namespace tscls
