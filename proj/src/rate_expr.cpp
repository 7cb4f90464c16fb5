#include "tscls/rate_expr.hpp"

#include "tscls/error.hpp"

namespace tscls {

bool operator==(const RateExpr& a, const RateExpr& b) {
  if (a.op != b.op) return false;
  switch (a.op) {
    case RateExpr::Op::Num: return a.value == b.value;
    case RateExpr::Op::Name: return a.name == b.name;
    case RateExpr::Op::IfZero:
      if (a.name != b.name) return false;
      break;
    default: break;
  }
  return a.args == b.args;
}

namespace {

std::string at(const RateExpr& e) {
  return e.column ? " at column " + std::to_string(e.column) : std::string();
}

double lookup(const std::string& name, const RateExpr& e, const CountValues& counts,
              const Constants& consts) {
  if (auto it = counts.find(name); it != counts.end()) return static_cast<double>(it->second);
  if (auto it = consts.find(name); it != consts.end()) return it->second;
  throw EvalError("unknown name '" + name + "'" + at(e));
}

}  // namespace

double evaluate(const RateExpr& e, const CountValues& counts, const Constants& consts) {
  using Op = RateExpr::Op;
  switch (e.op) {
    case Op::Num: return e.value;
    case Op::Name: return lookup(e.name, e, counts, consts);
    case Op::Neg: return -evaluate(e.args[0], counts, consts);
    case Op::Add: return evaluate(e.args[0], counts, consts) + evaluate(e.args[1], counts, consts);
    case Op::Sub: return evaluate(e.args[0], counts, consts) - evaluate(e.args[1], counts, consts);
    case Op::Mul: return evaluate(e.args[0], counts, consts) * evaluate(e.args[1], counts, consts);
    case Op::Div: {
      double num = evaluate(e.args[0], counts, consts);
      double den = evaluate(e.args[1], counts, consts);
      if (den == 0.0) throw EvalError("division by zero" + at(e));
      return num / den;
    }
    case Op::IfZero: {
      double guard = lookup(e.name, e, counts, consts);
      return evaluate(e.args[guard == 0.0 ? 0 : 1], counts, consts);
    }
  }
  throw EvalError("malformed rate expression");
}

void free_names(const RateExpr& e, std::set<std::string>& out) {
  if (e.op == RateExpr::Op::Name || e.op == RateExpr::Op::IfZero) out.insert(e.name);
  for (const auto& a : e.args) free_names(a, out);
}

}  // namespace tscls
