#pragma once

// Rate functions: small arithmetic expressions over count variables and
// named constants, with a zero-guarded conditional.

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace tscls {

struct RateExpr {
  enum class Op : std::uint8_t { Num, Name, Neg, Add, Sub, Mul, Div, IfZero };

  Op op = Op::Num;
  double value = 0.0;          // Num
  std::string name;            // Name; IfZero: the guarded count variable
  std::vector<RateExpr> args;  // operands; IfZero: {then, else}
  std::size_t column = 0;      // 1-based column of the node in its source line (0 = synthesized)

  static RateExpr number(double v) {
    RateExpr e;
    e.op = Op::Num;
    e.value = v;
    return e;
  }
  static RateExpr ref(std::string n) {
    RateExpr e;
    e.op = Op::Name;
    e.name = std::move(n);
    return e;
  }
  static RateExpr neg(RateExpr a) {
    RateExpr e;
    e.op = Op::Neg;
    e.args.push_back(std::move(a));
    return e;
  }
  static RateExpr binary(Op op, RateExpr a, RateExpr b) {
    RateExpr e;
    e.op = op;
    e.args.push_back(std::move(a));
    e.args.push_back(std::move(b));
    return e;
  }
  /// `if guard == 0 then when_zero else otherwise`
  static RateExpr if_zero(std::string guard, RateExpr when_zero, RateExpr otherwise) {
    RateExpr e;
    e.op = Op::IfZero;
    e.name = std::move(guard);
    e.args.push_back(std::move(when_zero));
    e.args.push_back(std::move(otherwise));
    return e;
  }

  friend RateExpr operator+(RateExpr a, RateExpr b) { return binary(Op::Add, std::move(a), std::move(b)); }
  friend RateExpr operator-(RateExpr a, RateExpr b) { return binary(Op::Sub, std::move(a), std::move(b)); }
  friend RateExpr operator*(RateExpr a, RateExpr b) { return binary(Op::Mul, std::move(a), std::move(b)); }
  friend RateExpr operator/(RateExpr a, RateExpr b) { return binary(Op::Div, std::move(a), std::move(b)); }
};

/// Structural equality; source columns are ignored.
bool operator==(const RateExpr& a, const RateExpr& b);

using CountValues = std::map<std::string, std::uint64_t>;
using Constants = std::map<std::string, double>;

/// Evaluates `e`. Count variables shadow constants of the same name. Throws
/// EvalError on an unknown name or a division by zero.
double evaluate(const RateExpr& e, const CountValues& counts, const Constants& consts);

/// Free names of `e` (count variables and constants alike), including guards.
void free_names(const RateExpr& e, std::set<std::string>& out);

}  // namespace tscls
