#include "tscls/match.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "tscls/error.hpp"

namespace tscls {

std::string CompartmentPath::str() const {
  if (steps.empty()) return "/";
  std::string out;
  for (auto s : steps) out += "/" + std::to_string(s);
  return out;
}

namespace {

void collect_compartments(const Term& t, CompartmentPath& path, std::vector<Compartment>& out) {
  out.push_back({path, t});
  const auto& es = t.entries();
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (!es[i].component.is_loop()) continue;
    path.steps.push_back(i);
    collect_compartments(es[i].component.content(), path, out);
    path.steps.pop_back();
  }
}

Term splice_from(const Term& t, const std::vector<std::size_t>& steps, std::size_t depth, const Term& content) {
  if (depth == steps.size()) return content;
  const auto& es = t.entries();
  const std::size_t i = steps[depth];
  if (i >= es.size() || !es[i].component.is_loop()) throw std::out_of_range("invalid compartment path");
  const Component& loop = es[i].component;
  Term inner = splice_from(loop.content(), steps, depth + 1, content);

  std::vector<Entry> entries = es;
  if (entries[i].count > 1) {
    --entries[i].count;
  } else {
    entries.erase(entries.begin() + static_cast<std::ptrdiff_t>(i));
  }
  entries.push_back({Component::loop(loop.membrane(), std::move(inner)), 1});
  return canonicalize(Term(std::move(entries)));
}

// ---------------------------------------------------------------------------
// Sequence matching: exhaustive split enumeration.

struct SeqMatcher {
  const SeqPattern& atoms;
  const Sequence& elems;
  std::vector<std::size_t> min_tail;  // minimal number of elements atoms[i..] consume
  std::set<Instantiation>& out;

  SeqMatcher(const SeqPattern& a, const Sequence& e, std::set<Instantiation>& o)
      : atoms(a), elems(e), min_tail(a.size() + 1, 0), out(o) {
    for (std::size_t i = a.size(); i-- > 0;) {
      const auto* v = std::get_if<Variable>(&a[i]);
      min_tail[i] = min_tail[i + 1] + ((v && v->kind == Variable::Kind::Seq) ? 0 : 1);
    }
  }

  void run(std::size_t ai, std::size_t ei, Instantiation& sigma) {
    const std::size_t n = elems.size();
    if (n - ei < min_tail[ai]) return;
    if (ai == atoms.size()) {
      if (ei == n) out.insert(sigma);
      return;
    }
    if (const auto* e = std::get_if<Element>(&atoms[ai])) {
      if (elems[ei] == *e) run(ai + 1, ei + 1, sigma);
      return;
    }
    const Variable& v = std::get<Variable>(atoms[ai]);
    auto it = sigma.find(v);
    if (v.kind == Variable::Kind::Elem) {
      if (it != sigma.end()) {
        if (std::get<Element>(it->second) == elems[ei]) run(ai + 1, ei + 1, sigma);
        return;
      }
      sigma.emplace(v, elems[ei]);
      run(ai + 1, ei + 1, sigma);
      sigma.erase(v);
      return;
    }
    if (it != sigma.end()) {
      const auto& bound = std::get<Sequence>(it->second);
      if (bound.size() <= n - ei && std::equal(bound.begin(), bound.end(), elems.begin() + static_cast<std::ptrdiff_t>(ei))) {
        run(ai + 1, ei + bound.size(), sigma);
      }
      return;
    }
    const std::size_t max_len = n - ei - min_tail[ai + 1];
    for (std::size_t len = 0; len <= max_len; ++len) {
      auto first = elems.begin() + static_cast<std::ptrdiff_t>(ei);
      sigma.emplace(v, Sequence(first, first + static_cast<std::ptrdiff_t>(len)));
      run(ai + 1, ei + len, sigma);
      sigma.erase(v);
    }
  }
};

std::set<Instantiation> join(const std::set<Instantiation>& a, const std::set<Instantiation>& b) {
  std::set<Instantiation> out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      if (auto m = merge(x, y)) out.insert(std::move(*m));
    }
  }
  return out;
}

bool all_seq_vars(const SeqPattern& s) {
  return std::all_of(s.begin(), s.end(), [](const SeqAtom& a) {
    const auto* v = std::get_if<Variable>(&a);
    return v && v->kind == Variable::Kind::Seq;
  });
}

// ---------------------------------------------------------------------------
// Parallel matching: backtracking over the distinct component entries of the
// content for the sequence/membrane items, then distribution of the remainder
// over the term variables.

class ParMatcher {
 public:
  ParMatcher(const Pattern& p, const Term& content) : content_(content) {
    for (const auto& item : p.items) {
      if (item.kind == PatternItem::Kind::TermVar) {
        auto it = std::find_if(tvars_.begin(), tvars_.end(), [&](const auto& tv) { return tv.first == item.var; });
        if (it == tvars_.end()) {
          tvars_.emplace_back(item.var, 1);
        } else {
          ++it->second;
        }
      } else {
        structural_.push_back(&item);
      }
    }
    remaining_.reserve(content.entries().size());
    for (const auto& e : content.entries()) remaining_.push_back(e.count);
    memo_.resize(structural_.size() * content.entries().size());
  }

  std::set<Instantiation> run() {
    Instantiation sigma;
    place(0, sigma);
    return std::move(out_);
  }

 private:
  const std::set<Instantiation>& item_matches(std::size_t k, std::size_t g) {
    auto& slot = memo_[k * content_.entries().size() + g];
    if (!slot) slot = match_component(*structural_[k], content_.entries()[g].component);
    return *slot;
  }

  static std::set<Instantiation> match_component(const PatternItem& item, const Component& c) {
    if (item.kind == PatternItem::Kind::Seq) {
      if (!c.is_seq()) return {};
      return match_sequence(item.seq, c.elements());
    }
    if (!c.is_loop()) return {};
    std::set<Instantiation> membranes;
    const Sequence& m = c.membrane();
    std::set<Sequence> rotations;
    for (std::size_t r = 0; r < m.size(); ++r) {
      Sequence rot(m.begin() + static_cast<std::ptrdiff_t>(r), m.end());
      rot.insert(rot.end(), m.begin(), m.begin() + static_cast<std::ptrdiff_t>(r));
      if (!rotations.insert(rot).second) continue;
      auto ms = match_sequence(item.seq, rot);
      membranes.insert(ms.begin(), ms.end());
    }
    if (membranes.empty()) return {};
    return join(membranes, match_whole(*item.content, c.content()));
  }

  // Ways an item can stand for nothing at all. Only sequences can: a loop
  // item always needs a membrane of the compartment to match.
  static std::set<Instantiation> match_nothing(const PatternItem& item) {
    if (item.kind != PatternItem::Kind::Seq || !all_seq_vars(item.seq)) return {};
    Instantiation eps;
    for (const auto& a : item.seq) eps.emplace(std::get<Variable>(a), Sequence{});
    return {eps};
  }

  void place(std::size_t k, const Instantiation& sigma) {
    if (k == structural_.size()) {
      distribute(sigma);
      return;
    }
    const auto& es = content_.entries();
    for (std::size_t g = 0; g < es.size(); ++g) {
      if (remaining_[g] == 0) continue;
      for (const auto& r : item_matches(k, g)) {
        auto m = merge(sigma, r);
        if (!m) continue;
        --remaining_[g];
        place(k + 1, *m);
        ++remaining_[g];
      }
    }
    for (const auto& r : match_nothing(*structural_[k])) {
      if (auto m = merge(sigma, r)) place(k + 1, *m);
    }
  }

  // Subtracts `times` copies of `t` from `rest`; false if not contained.
  bool subtract(std::vector<std::size_t>& rest, const Term& t, std::size_t times) const {
    const auto& es = content_.entries();
    for (const auto& e : t.entries()) {
      auto it = std::lower_bound(es.begin(), es.end(), e.component,
                                 [](const Entry& x, const Component& c) { return compare(x.component, c) < 0; });
      if (it == es.end() || !(it->component == e.component)) return false;
      auto g = static_cast<std::size_t>(it - es.begin());
      if (rest[g] < e.count * times) return false;
      rest[g] -= e.count * times;
    }
    return true;
  }

  Term to_term(const std::vector<std::size_t>& counts) const {
    std::vector<Entry> entries;
    for (std::size_t g = 0; g < counts.size(); ++g) {
      if (counts[g]) entries.push_back({content_.entries()[g].component, counts[g]});
    }
    return Term(std::move(entries));
  }

  void distribute(const Instantiation& sigma) {
    std::vector<std::size_t> rest = remaining_;
    std::vector<std::pair<Variable, std::size_t>> unbound;
    for (const auto& [v, times] : tvars_) {
      auto it = sigma.find(v);
      if (it == sigma.end()) {
        unbound.emplace_back(v, times);
      } else if (!subtract(rest, std::get<Term>(it->second), times)) {
        return;
      }
    }
    Instantiation s = sigma;
    share(unbound, 0, rest, s);
  }

  void share(const std::vector<std::pair<Variable, std::size_t>>& unbound, std::size_t u,
             std::vector<std::size_t>& rest, Instantiation& sigma) {
    if (u == unbound.size()) {
      if (std::all_of(rest.begin(), rest.end(), [](std::size_t c) { return c == 0; })) out_.insert(sigma);
      return;
    }
    const auto& [v, times] = unbound[u];
    if (u + 1 == unbound.size()) {
      std::vector<std::size_t> part(rest.size());
      for (std::size_t g = 0; g < rest.size(); ++g) {
        if (rest[g] % times) return;
        part[g] = rest[g] / times;
      }
      sigma[v] = to_term(part);
      out_.insert(sigma);
      sigma.erase(v);
      return;
    }
    // Odometer over every sub-multiset `part` with times * part <= rest.
    std::vector<std::size_t> part(rest.size(), 0);
    for (;;) {
      std::vector<std::size_t> left(rest.size());
      for (std::size_t g = 0; g < rest.size(); ++g) left[g] = rest[g] - times * part[g];
      sigma[v] = to_term(part);
      share(unbound, u + 1, left, sigma);
      sigma.erase(v);
      std::size_t g = 0;
      for (; g < part.size(); ++g) {
        if (times * (part[g] + 1) <= rest[g]) {
          ++part[g];
          break;
        }
        part[g] = 0;
      }
      if (g == part.size()) break;
    }
  }

  const Term& content_;
  std::vector<const PatternItem*> structural_;
  std::vector<std::pair<Variable, std::size_t>> tvars_;
  std::vector<std::size_t> remaining_;
  std::vector<std::optional<std::set<Instantiation>>> memo_;
  std::set<Instantiation> out_;
};

void splice_atoms(const SeqPattern& atoms, const Instantiation& sigma, Sequence& out) {
  for (const auto& a : atoms) {
    if (const auto* e = std::get_if<Element>(&a)) {
      out.push_back(*e);
      continue;
    }
    const Variable& v = std::get<Variable>(a);
    auto it = sigma.find(v);
    if (it == sigma.end()) throw MatchError("unbound variable " + v.str());
    if (v.kind == Variable::Kind::Elem) {
      const auto* e = std::get_if<Element>(&it->second);
      if (!e) throw MatchError("variable " + v.str() + " is not bound to an element");
      out.push_back(*e);
    } else {
      const auto* s = std::get_if<Sequence>(&it->second);
      if (!s) throw MatchError("variable " + v.str() + " is not bound to a sequence");
      out.insert(out.end(), s->begin(), s->end());
    }
  }
}

Term substitute_raw(const Pattern& p, const Instantiation& sigma) {
  std::vector<Entry> entries;
  for (const auto& item : p.items) {
    if (item.kind == PatternItem::Kind::TermVar) {
      auto it = sigma.find(item.var);
      if (it == sigma.end()) throw MatchError("unbound variable " + item.var.str());
      const auto* t = std::get_if<Term>(&it->second);
      if (!t) throw MatchError("variable " + item.var.str() + " is not bound to a term");
      entries.insert(entries.end(), t->entries().begin(), t->entries().end());
      continue;
    }
    Sequence s;
    splice_atoms(item.seq, sigma, s);
    if (item.kind == PatternItem::Kind::Seq) {
      if (!s.empty()) entries.push_back({Component::seq(std::move(s)), 1});
    } else {
      entries.push_back({Component::loop(std::move(s), substitute_raw(*item.content, sigma)), 1});
    }
  }
  return Term(std::move(entries));
}

}  // namespace

std::vector<Compartment> compartments(const Term& state) {
  std::vector<Compartment> out;
  CompartmentPath path;
  collect_compartments(state, path, out);
  return out;
}

const Term& content_at(const Term& state, const CompartmentPath& path) {
  const Term* t = &state;
  for (auto i : path.steps) {
    const auto& es = t->entries();
    if (i >= es.size() || !es[i].component.is_loop()) throw std::out_of_range("invalid compartment path");
    t = &es[i].component.content();
  }
  return *t;
}

Term splice(const Term& state, const CompartmentPath& path, const Term& content) {
  return splice_from(state, path.steps, 0, content);
}

std::set<Instantiation> match_sequence(const SeqPattern& pattern, const Sequence& seq) {
  std::set<Instantiation> out;
  SeqMatcher m(pattern, seq, out);
  Instantiation sigma;
  m.run(0, 0, sigma);
  return out;
}

std::set<Instantiation> match_whole(const Pattern& lhs, const Term& content) {
  return ParMatcher(lhs, content).run();
}

Term substitute(const Pattern& p, const Instantiation& sigma) {
  try {
    return canonicalize(substitute_raw(p, sigma));
  } catch (const std::invalid_argument& e) {
    throw MatchError(e.what());
  }
}

}  // namespace tscls
