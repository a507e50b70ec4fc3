// Copyright 2026 The Tempoforge Authors.
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

#ifndef TEMPOFORGE_EVALUATE_H_
#define TEMPOFORGE_EVALUATE_H_

#include <map>
#include <variant>

#include "tempoforge/condition.h"
#include "tempoforge/temporal.h"

namespace tempoforge {

// Unbound slot or ill-typed operands. Either means the template or the
// generator is wrong, never the data.
class EvalError : public Error {
 public:
  using Error::Error;
};

using TemporalValue = std::variant<TruncatedTimePoint, IntervalValue>;
using TemporalBindings = std::map<TemporalSlotRef, TemporalValue>;

struct Evaluation {
  Label label = Label::kNeutral;
  // Some calendar step clamped a day or carried into a hidden unit.
  bool adjusted = false;
};

namespace evaluate_internal {

using Value = std::variant<TruncatedTimePoint, IntervalValue, Weekday>;

class Evaluator {
 public:
  explicit Evaluator(const TemporalBindings& bindings) : bindings_(bindings) {}

  bool adjusted() const { return adjusted_; }

  Value Eval(const Term& t) {
    switch (t.kind) {
      case Term::Kind::kSlot: {
        auto it = bindings_.find(t.slot);
        if (it == bindings_.end()) throw EvalError("unbound slot " + t.slot.Name());
        if (t.slot.kind == TemporalKind::kInterval) {
          if (!std::holds_alternative<IntervalValue>(it->second)) {
            throw EvalError(t.slot.Name() + " is bound to a time point");
          }
          return std::get<IntervalValue>(it->second);
        }
        if (!std::holds_alternative<TruncatedTimePoint>(it->second)) {
          throw EvalError(t.slot.Name() + " is bound to an interval");
        }
        return std::get<TruncatedTimePoint>(it->second);
      }
      case Term::Kind::kIntervalLiteral: return t.literal;
      case Term::Kind::kWeekdayLiteral: return t.weekday;
      case Term::Kind::kDayOfWeek: {
        const auto tp = AsTimePoint(Eval(t.operands[0]));
        if (!tp.format.Has(Unit::kYear) || !tp.format.Has(Unit::kMonth) ||
            !tp.format.Has(Unit::kDay)) {
          throw EvalError("dow() needs year, month and day; format is " + tp.format.Name());
        }
        return DayOfWeek(tp.Snap());
      }
      case Term::Kind::kAdd:
      case Term::Kind::kSub: {
        const Value a = Eval(t.operands[0]);
        const Value b = Eval(t.operands[1]);
        const bool sub = t.kind == Term::Kind::kSub;
        try {
          if (std::holds_alternative<TruncatedTimePoint>(a) &&
              std::holds_alternative<TruncatedTimePoint>(b)) {
            if (!sub) throw EvalError("cannot add two time points");
            const auto& x = std::get<TruncatedTimePoint>(a);
            const auto& y = std::get<TruncatedTimePoint>(b);
            return IntervalValue{Diff(x, y), x.format.Smallest()};
          }
          if (std::holds_alternative<TruncatedTimePoint>(a) &&
              std::holds_alternative<IntervalValue>(b)) {
            const auto& tp = std::get<TruncatedTimePoint>(a);
            const auto& iv = std::get<IntervalValue>(b);
            const AddResult r = sub ? Subtract(tp, iv) : Add(tp, iv);
            adjusted_ |= r.adjusted();
            return r.value;
          }
          if (!sub && std::holds_alternative<IntervalValue>(a) &&
              std::holds_alternative<TruncatedTimePoint>(b)) {
            const AddResult r = Add(std::get<TruncatedTimePoint>(b), std::get<IntervalValue>(a));
            adjusted_ |= r.adjusted();
            return r.value;
          }
          if (std::holds_alternative<IntervalValue>(a) &&
              std::holds_alternative<IntervalValue>(b)) {
            const auto& x = std::get<IntervalValue>(a);
            const auto& y = std::get<IntervalValue>(b);
            if (x.unit != y.unit) throw EvalError("interval unit mismatch");
            return IntervalValue{sub ? x.magnitude - y.magnitude : x.magnitude + y.magnitude, x.unit};
          }
        } catch (const TemporalError& e) {
          throw EvalError(e.what());
        }
        throw EvalError("ill-typed arithmetic in " + FormatTerm(t));
      }
    }
    throw EvalError("unknown term");
  }

  bool Holds(const Comparison& c) {
    const Value a = Eval(c.lhs);
    const Value b = Eval(c.rhs);
    std::partial_ordering ord = std::partial_ordering::unordered;
    if (std::holds_alternative<TruncatedTimePoint>(a) &&
        std::holds_alternative<TruncatedTimePoint>(b)) {
      try {
        ord = Compare(std::get<TruncatedTimePoint>(a), std::get<TruncatedTimePoint>(b));
      } catch (const TemporalError& e) {
        throw EvalError(e.what());
      }
    } else if (std::holds_alternative<IntervalValue>(a) &&
               std::holds_alternative<IntervalValue>(b)) {
      const auto& x = std::get<IntervalValue>(a);
      const auto& y = std::get<IntervalValue>(b);
      if (x.unit != y.unit) {
        throw EvalError("cannot compare " + std::string(UnitName(x.unit)) + " and " +
                        std::string(UnitName(y.unit)) + " intervals");
      }
      ord = x.magnitude <=> y.magnitude;
    } else if (std::holds_alternative<Weekday>(a) && std::holds_alternative<Weekday>(b)) {
      const bool eq = std::get<Weekday>(a) == std::get<Weekday>(b);
      if (c.op == CompareOp::kEq) return eq;
      if (c.op == CompareOp::kNe) return !eq;
      throw EvalError("weekdays support only == and !=");
    } else {
      throw EvalError("type mismatch in comparison");
    }
    switch (c.op) {
      case CompareOp::kLt: return ord < 0;
      case CompareOp::kLe: return ord <= 0;
      case CompareOp::kEq: return ord == 0;
      case CompareOp::kGe: return ord >= 0;
      case CompareOp::kGt: return ord > 0;
      case CompareOp::kNe: return ord != 0;
    }
    return false;
  }

 private:
  static TruncatedTimePoint AsTimePoint(const Value& v) {
    if (!std::holds_alternative<TruncatedTimePoint>(v)) throw EvalError("expected a time point");
    return std::get<TruncatedTimePoint>(v);
  }

  const TemporalBindings& bindings_;
  bool adjusted_ = false;
};

}  // namespace evaluate_internal

// Evaluates the branches in order; conjunctions short-circuit.
inline Evaluation Evaluate(const ConditionAst& ast, const TemporalBindings& bindings) {
  evaluate_internal::Evaluator ev(bindings);
  for (const auto& branch : ast.branches) {
    bool all = true;
    for (const auto& c : branch.conjuncts) {
      if (!ev.Holds(c)) {
        all = false;
        break;
      }
    }
    if (all) return {branch.label, ev.adjusted()};
  }
  return {ast.fallback, ev.adjusted()};
}

inline Label EvalCondition(const ConditionAst& ast, const TemporalBindings& bindings) {
  return Evaluate(ast, bindings).label;
}

}  // namespace tempoforge

#endif  // TEMPOFORGE_EVALUATE_H_
