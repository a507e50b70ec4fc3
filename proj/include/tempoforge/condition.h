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

// Gold-label condition language.
//
//   condition  := LABEL | 'if' conj 'then' LABEL 'else' condition
//   conj       := comparison ('and' comparison)*
//   comparison := term OP term            OP in < <= == >= > != (also ≤ ≥ ≠)
//   term       := atom (('+' | '-') atom)*
//   atom       := interval_K | timepoint_K | NUMBER UNIT | WEEKDAY
//               | 'dow' '(' term ')' | '(' term ')'
//
// Types: timepoint - timepoint is an interval in the format's smallest
// unit; timepoint +/- interval is a timepoint; intervals combine only with
// intervals of the same unit; dow(timepoint) compares (==, !=) only with
// weekday literals.

#ifndef TEMPOFORGE_CONDITION_H_
#define TEMPOFORGE_CONDITION_H_

#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tempoforge/temporal.h"
#include "tempoforge/util.h"

namespace tempoforge {

enum class Label : uint8_t { kEntailment = 0, kContradiction = 1, kNeutral = 2 };

inline constexpr std::array<Label, 3> kAllLabels = {
    Label::kEntailment, Label::kContradiction, Label::kNeutral};

inline std::string_view LabelName(Label l) {
  switch (l) {
    case Label::kEntailment: return "Entailment";
    case Label::kContradiction: return "Contradiction";
    case Label::kNeutral: return "Neutral";
  }
  return "?";
}

inline char LabelInitial(Label l) { return LabelName(l)[0]; }

// Accepts the canonical names and their lowercase spellings.
inline std::optional<Label> ParseLabel(std::string_view s) {
  for (Label l : kAllLabels) {
    const auto name = LabelName(l);
    if (s == name) return l;
    if (s.size() == name.size()) {
      bool same = true;
      for (size_t i = 0; i < s.size(); ++i) {
        same &= std::tolower(static_cast<unsigned char>(s[i])) ==
                std::tolower(static_cast<unsigned char>(name[i]));
      }
      if (same) return l;
    }
  }
  return std::nullopt;
}

struct SourcePos {
  int line = 0;
  int column = 0;
};

enum class TemporalKind : uint8_t { kInterval, kTimePoint };

struct TemporalSlotRef {
  TemporalKind kind = TemporalKind::kInterval;
  int index = 1;

  std::string Name() const {
    return std::string(kind == TemporalKind::kInterval ? "interval_" : "timepoint_") +
           std::to_string(index);
  }
  auto operator<=>(const TemporalSlotRef&) const = default;
};

struct Term {
  enum class Kind : uint8_t {
    kSlot,
    kIntervalLiteral,
    kWeekdayLiteral,
    kDayOfWeek,
    kAdd,
    kSub
  };
  Kind kind = Kind::kSlot;
  TemporalSlotRef slot;
  IntervalValue literal;
  Weekday weekday = Weekday::kSunday;
  std::vector<Term> operands;
  SourcePos pos;  // not part of equality

  bool operator==(const Term& o) const {
    return kind == o.kind && slot == o.slot && literal == o.literal &&
           weekday == o.weekday && operands == o.operands;
  }
};

enum class CompareOp : uint8_t { kLt, kLe, kEq, kGe, kGt, kNe };

inline std::string_view CompareOpText(CompareOp op) {
  switch (op) {
    case CompareOp::kLt: return "<";
    case CompareOp::kLe: return "<=";
    case CompareOp::kEq: return "==";
    case CompareOp::kGe: return ">=";
    case CompareOp::kGt: return ">";
    case CompareOp::kNe: return "!=";
  }
  return "?";
}

struct Comparison {
  Term lhs;
  CompareOp op = CompareOp::kEq;
  Term rhs;

  bool operator==(const Comparison&) const = default;
};

// if c1 then l1 else if c2 then l2 ... else fallback. An empty branch list
// is a constant label.
struct ConditionAst {
  struct Branch {
    std::vector<Comparison> conjuncts;
    Label label = Label::kNeutral;
    bool operator==(const Branch&) const = default;
  };
  std::vector<Branch> branches;
  Label fallback = Label::kNeutral;

  bool operator==(const ConditionAst&) const = default;

  static ConditionAst Leaf(Label l) { return ConditionAst{{}, l}; }

  // Labels named anywhere in the expression.
  std::set<Label> MentionedLabels() const {
    std::set<Label> out{fallback};
    for (const auto& b : branches) out.insert(b.label);
    return out;
  }
};

// Problem found while reading a template pack or condition.
struct Diagnostic {
  enum class Severity : uint8_t { kError, kWarning };
  Severity severity = Severity::kError;
  std::string template_id;
  SourcePos pos;
  std::string message;

  bool is_error() const { return severity == Severity::kError; }

  std::string ToString() const {
    std::string out = std::to_string(pos.line) + ":" + std::to_string(pos.column) +
                      ": " + (is_error() ? "error" : "warning");
    if (!template_id.empty()) out += " [" + template_id + "]";
    return out + ": " + message;
  }
};

// ---------------------------------------------------------------------------
// Parsing.

namespace condition_internal {

struct Token {
  enum class Kind : uint8_t { kIdent, kNumber, kOp, kLParen, kRParen, kPlus, kMinus, kEnd };
  Kind kind;
  std::string text;
  SourcePos pos;
};

// Columns count bytes; `base` is the position of text[0] in the file.
inline std::vector<Token> Lex(std::string_view text, SourcePos base,
                              std::vector<Diagnostic>& diags,
                              const std::string& template_id) {
  std::vector<Token> out;
  size_t i = 0;
  auto pos_at = [&](size_t k) {
    return SourcePos{base.line, base.column + static_cast<int>(k)};
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    const SourcePos p = pos_at(i);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      out.push_back({Token::Kind::kIdent, std::string(text.substr(i, j - i)), p});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Token::Kind::kNumber, std::string(text.substr(i, j - i)), p});
      i = j;
    } else if (c == '(') {
      out.push_back({Token::Kind::kLParen, "(", p});
      ++i;
    } else if (c == ')') {
      out.push_back({Token::Kind::kRParen, ")", p});
      ++i;
    } else if (c == '+') {
      out.push_back({Token::Kind::kPlus, "+", p});
      ++i;
    } else if (c == '-') {
      out.push_back({Token::Kind::kMinus, "-", p});
      ++i;
    } else if (c == '<' || c == '>' || c == '=' || c == '!') {
      std::string op(1, c);
      if (i + 1 < text.size() && text[i + 1] == '=') op += '=';
      if (op == "=" || op == "!") {
        diags.push_back({Diagnostic::Severity::kError, template_id, p,
                         "unknown operator '" + op + "'"});
      }
      out.push_back({Token::Kind::kOp, op, p});
      i += op.size();
    } else if (text.substr(i, 3) == "≤" || text.substr(i, 3) == "≥" ||
               text.substr(i, 3) == "≠") {
      const auto u = text.substr(i, 3);
      out.push_back({Token::Kind::kOp,
                     u == "≤" ? "<=" : u == "≥" ? ">=" : "!=", p});
      i += 3;
    } else {
      diags.push_back({Diagnostic::Severity::kError, template_id, p,
                       std::string("unexpected character '") + c + "'"});
      ++i;
    }
  }
  out.push_back({Token::Kind::kEnd, "", pos_at(text.size())});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::vector<Diagnostic>& diags,
         std::string template_id)
      : tokens_(std::move(tokens)), diags_(diags), template_id_(std::move(template_id)) {}

  std::optional<ConditionAst> ParseCondition() {
    ConditionAst ast;
    while (true) {
      if (IsKeyword("if")) {
        Advance();
        ConditionAst::Branch branch;
        auto first = ParseComparison();
        if (!first) return std::nullopt;
        branch.conjuncts.push_back(std::move(*first));
        while (IsKeyword("and")) {
          Advance();
          auto next = ParseComparison();
          if (!next) return std::nullopt;
          branch.conjuncts.push_back(std::move(*next));
        }
        if (!ExpectKeyword("then")) return std::nullopt;
        auto label = ParseLabelToken();
        if (!label) return std::nullopt;
        branch.label = *label;
        ast.branches.push_back(std::move(branch));
        if (!ExpectKeyword("else")) return std::nullopt;
        continue;
      }
      auto label = ParseLabelToken();
      if (!label) return std::nullopt;
      ast.fallback = *label;
      break;
    }
    if (Peek().kind != Token::Kind::kEnd) {
      Error(Peek().pos, "trailing input '" + Peek().text + "'");
      return std::nullopt;
    }
    return ast;
  }

 private:
  const Token& Peek() const { return tokens_[pos_]; }
  const Token& Advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  bool IsKeyword(std::string_view kw) const {
    return Peek().kind == Token::Kind::kIdent && Peek().text == kw;
  }
  bool ExpectKeyword(std::string_view kw) {
    if (!IsKeyword(kw)) {
      Error(Peek().pos, "expected '" + std::string(kw) + "'" + Found());
      return false;
    }
    Advance();
    return true;
  }
  std::string Found() const {
    return Peek().kind == Token::Kind::kEnd ? " at end of condition"
                                            : " but found '" + Peek().text + "'";
  }
  void Error(SourcePos p, std::string message) {
    diags_.push_back({Diagnostic::Severity::kError, template_id_, p, std::move(message)});
  }

  std::optional<Label> ParseLabelToken() {
    if (Peek().kind == Token::Kind::kIdent) {
      if (auto l = ParseLabel(Peek().text)) {
        Advance();
        return l;
      }
    }
    Error(Peek().pos, "expected a label (Entailment, Contradiction, Neutral)" + Found());
    return std::nullopt;
  }

  std::optional<Comparison> ParseComparison() {
    auto lhs = ParseTerm();
    if (!lhs) return std::nullopt;
    if (Peek().kind != Token::Kind::kOp) {
      Error(Peek().pos, "expected a comparison operator" + Found());
      return std::nullopt;
    }
    const std::string op = Advance().text;
    CompareOp cop;
    if (op == "<") cop = CompareOp::kLt;
    else if (op == "<=") cop = CompareOp::kLe;
    else if (op == "==") cop = CompareOp::kEq;
    else if (op == ">=") cop = CompareOp::kGe;
    else if (op == ">") cop = CompareOp::kGt;
    else if (op == "!=") cop = CompareOp::kNe;
    else return std::nullopt;  // already diagnosed by the lexer
    auto rhs = ParseTerm();
    if (!rhs) return std::nullopt;
    return Comparison{std::move(*lhs), cop, std::move(*rhs)};
  }

  std::optional<Term> ParseTerm() {
    auto left = ParseAtom();
    if (!left) return std::nullopt;
    while (Peek().kind == Token::Kind::kPlus || Peek().kind == Token::Kind::kMinus) {
      const Token op = Advance();
      auto right = ParseAtom();
      if (!right) return std::nullopt;
      Term t;
      t.kind = op.kind == Token::Kind::kPlus ? Term::Kind::kAdd : Term::Kind::kSub;
      t.pos = left->pos;
      t.operands.push_back(std::move(*left));
      t.operands.push_back(std::move(*right));
      left = std::move(t);
    }
    return left;
  }

  std::optional<Term> ParseAtom() {
    const Token tok = Peek();
    Term t;
    t.pos = tok.pos;
    switch (tok.kind) {
      case Token::Kind::kLParen: {
        Advance();
        auto inner = ParseTerm();
        if (!inner) return std::nullopt;
        if (Peek().kind != Token::Kind::kRParen) {
          Error(Peek().pos, "expected ')'" + Found());
          return std::nullopt;
        }
        Advance();
        return inner;
      }
      case Token::Kind::kNumber: {
        Advance();
        const auto n = util::ParseInt<int64_t>(tok.text);
        if (Peek().kind != Token::Kind::kIdent || !ParseUnit(Peek().text)) {
          Error(Peek().pos, "expected a unit after " + tok.text + Found());
          return std::nullopt;
        }
        if (!n || *n < 1) {
          Error(tok.pos, "interval literal must be positive");
          return std::nullopt;
        }
        t.kind = Term::Kind::kIntervalLiteral;
        t.literal = {*n, *ParseUnit(Advance().text)};
        return t;
      }
      case Token::Kind::kIdent: {
        Advance();
        if (tok.text == "dow") {
          if (Peek().kind != Token::Kind::kLParen) {
            Error(Peek().pos, "expected '(' after dow" + Found());
            return std::nullopt;
          }
          Advance();
          auto inner = ParseTerm();
          if (!inner) return std::nullopt;
          if (Peek().kind != Token::Kind::kRParen) {
            Error(Peek().pos, "expected ')'" + Found());
            return std::nullopt;
          }
          Advance();
          t.kind = Term::Kind::kDayOfWeek;
          t.operands.push_back(std::move(*inner));
          return t;
        }
        if (auto w = ParseWeekday(tok.text)) {
          t.kind = Term::Kind::kWeekdayLiteral;
          t.weekday = *w;
          return t;
        }
        for (auto [prefix, kind] :
             {std::pair<std::string_view, TemporalKind>{"interval_", TemporalKind::kInterval},
              {"timepoint_", TemporalKind::kTimePoint}}) {
          if (util::StartsWith(tok.text, prefix)) {
            const auto idx = util::ParseInt<int>(std::string_view(tok.text).substr(prefix.size()));
            if (!idx || *idx < 1) break;
            t.kind = Term::Kind::kSlot;
            t.slot = {kind, *idx};
            return t;
          }
        }
        Error(tok.pos, "unknown identifier '" + tok.text + "' in condition");
        return std::nullopt;
      }
      default:
        Error(tok.pos, "expected a term" + Found());
        return std::nullopt;
    }
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
  std::vector<Diagnostic>& diags_;
  std::string template_id_;
};

}  // namespace condition_internal

// Parses a condition. On failure returns nullopt and appends diagnostics.
inline std::optional<ConditionAst> ParseCondition(std::string_view text,
                                                  std::vector<Diagnostic>& diags,
                                                  SourcePos base = {1, 1},
                                                  const std::string& template_id = "") {
  const size_t before = diags.size();
  auto tokens = condition_internal::Lex(text, base, diags, template_id);
  if (diags.size() != before) return std::nullopt;
  condition_internal::Parser parser(std::move(tokens), diags, template_id);
  return parser.ParseCondition();
}

// ---------------------------------------------------------------------------
// Printing.

inline std::string FormatTerm(const Term& t) {
  switch (t.kind) {
    case Term::Kind::kSlot: return t.slot.Name();
    case Term::Kind::kIntervalLiteral:
      return std::to_string(t.literal.magnitude) + " " + std::string(UnitName(t.literal.unit));
    case Term::Kind::kWeekdayLiteral: return std::string(WeekdayName(t.weekday));
    case Term::Kind::kDayOfWeek: return "dow(" + FormatTerm(t.operands[0]) + ")";
    case Term::Kind::kAdd:
    case Term::Kind::kSub: {
      std::string rhs = FormatTerm(t.operands[1]);
      if (t.operands[1].kind == Term::Kind::kAdd || t.operands[1].kind == Term::Kind::kSub) {
        rhs = "(" + rhs + ")";
      }
      return FormatTerm(t.operands[0]) + (t.kind == Term::Kind::kAdd ? " + " : " - ") + rhs;
    }
  }
  return "?";
}

inline std::string FormatCondition(const ConditionAst& ast) {
  std::string out;
  for (const auto& b : ast.branches) {
    out += "if ";
    for (size_t i = 0; i < b.conjuncts.size(); ++i) {
      if (i) out += " and ";
      const auto& c = b.conjuncts[i];
      out += FormatTerm(c.lhs) + " " + std::string(CompareOpText(c.op)) + " " + FormatTerm(c.rhs);
    }
    out += " then " + std::string(LabelName(b.label)) + " else ";
  }
  return out + std::string(LabelName(ast.fallback));
}

// ---------------------------------------------------------------------------
// Typing.

enum class ValueType : uint8_t { kInterval, kTimePoint, kWeekday };

inline std::string_view ValueTypeName(ValueType t) {
  switch (t) {
    case ValueType::kInterval: return "interval";
    case ValueType::kTimePoint: return "timepoint";
    case ValueType::kWeekday: return "weekday";
  }
  return "?";
}

template <typename Fn>
void ForEachTerm(const Term& t, Fn&& fn) {
  fn(t);
  for (const auto& o : t.operands) ForEachTerm(o, fn);
}

template <typename Fn>
void ForEachTerm(const ConditionAst& ast, Fn&& fn) {
  for (const auto& b : ast.branches) {
    for (const auto& c : b.conjuncts) {
      ForEachTerm(c.lhs, fn);
      ForEachTerm(c.rhs, fn);
    }
  }
}

inline std::set<TemporalSlotRef> ReferencedSlots(const ConditionAst& ast) {
  std::set<TemporalSlotRef> out;
  ForEachTerm(ast, [&](const Term& t) {
    if (t.kind == Term::Kind::kSlot) out.insert(t.slot);
  });
  return out;
}

namespace condition_internal {

inline std::optional<ValueType> TypeOf(const Term& t, std::vector<Diagnostic>& diags,
                                       const std::string& id) {
  auto error = [&](const std::string& m) {
    diags.push_back({Diagnostic::Severity::kError, id, t.pos, m});
    return std::nullopt;
  };
  switch (t.kind) {
    case Term::Kind::kSlot:
      return t.slot.kind == TemporalKind::kInterval ? ValueType::kInterval : ValueType::kTimePoint;
    case Term::Kind::kIntervalLiteral: return ValueType::kInterval;
    case Term::Kind::kWeekdayLiteral: return ValueType::kWeekday;
    case Term::Kind::kDayOfWeek: {
      auto inner = TypeOf(t.operands[0], diags, id);
      if (!inner) return std::nullopt;
      if (*inner != ValueType::kTimePoint) {
        return error("type error: dow() takes a timepoint, got " +
                     std::string(ValueTypeName(*inner)));
      }
      return ValueType::kWeekday;
    }
    case Term::Kind::kAdd:
    case Term::Kind::kSub: {
      auto a = TypeOf(t.operands[0], diags, id);
      auto b = TypeOf(t.operands[1], diags, id);
      if (!a || !b) return std::nullopt;
      const bool sub = t.kind == Term::Kind::kSub;
      if (*a == ValueType::kTimePoint && *b == ValueType::kInterval) return ValueType::kTimePoint;
      if (*a == ValueType::kInterval && *b == ValueType::kInterval) return ValueType::kInterval;
      if (sub && *a == ValueType::kTimePoint && *b == ValueType::kTimePoint) return ValueType::kInterval;
      if (!sub && *a == ValueType::kInterval && *b == ValueType::kTimePoint) return ValueType::kTimePoint;
      return error("type error: " + std::string(ValueTypeName(*a)) + (sub ? " - " : " + ") +
                   std::string(ValueTypeName(*b)));
    }
  }
  return std::nullopt;
}

}  // namespace condition_internal

// Static type check. `declared` lists the temporal slots present in the
// template's patterns; references to anything else are unbound.
inline std::vector<Diagnostic> TypeCheck(const ConditionAst& ast,
                                         const std::set<TemporalSlotRef>& declared,
                                         const std::string& template_id = "") {
  std::vector<Diagnostic> diags;
  ForEachTerm(ast, [&](const Term& t) {
    if (t.kind == Term::Kind::kSlot && !declared.count(t.slot)) {
      diags.push_back({Diagnostic::Severity::kError, template_id, t.pos,
                       "unbound slot " + t.slot.Name()});
    }
  });
  for (const auto& b : ast.branches) {
    for (const auto& c : b.conjuncts) {
      auto l = condition_internal::TypeOf(c.lhs, diags, template_id);
      auto r = condition_internal::TypeOf(c.rhs, diags, template_id);
      if (!l || !r) continue;
      if (*l != *r) {
        diags.push_back({Diagnostic::Severity::kError, template_id, c.lhs.pos,
                         "type error: cannot compare " + std::string(ValueTypeName(*l)) +
                             " with " + std::string(ValueTypeName(*r))});
      } else if (*l == ValueType::kWeekday && c.op != CompareOp::kEq &&
                 c.op != CompareOp::kNe) {
        diags.push_back({Diagnostic::Severity::kError, template_id, c.lhs.pos,
                         "type error: weekdays support only == and !="});
      } else if (*l == ValueType::kWeekday &&
                 c.lhs.kind != Term::Kind::kWeekdayLiteral &&
                 c.rhs.kind != Term::Kind::kWeekdayLiteral) {
        diags.push_back({Diagnostic::Severity::kError, template_id, c.lhs.pos,
                         "type error: dow() compares only with a weekday literal"});
      }
    }
  }
  return diags;
}

// True when some comparison tests time points for (in)equality. Such
// conditions are hit rarely by independent uniform draws.
inline bool HasTimePointEquality(const ConditionAst& ast) {
  std::vector<Diagnostic> sink;
  for (const auto& b : ast.branches) {
    for (const auto& c : b.conjuncts) {
      if (c.op != CompareOp::kEq && c.op != CompareOp::kNe) continue;
      auto t = condition_internal::TypeOf(c.lhs, sink, "");
      if (t && *t == ValueType::kTimePoint) return true;
    }
  }
  return false;
}

// Unit-level compatibility of a condition with a concrete time format and
// interval unit (shared by every interval slot of one problem). `format`
// is the problem's time-point format; `interval_unit` is empty when the
// template has no interval slots.
inline bool UnitsCompatible(const ConditionAst& ast, TimeFormat format,
                            std::optional<Unit> interval_unit) {
  // Resolved unit of an interval-typed term, or nullopt on conflict.
  struct Walk {
    TimeFormat format;
    std::optional<Unit> slot_unit;
    bool ok = true;

    // Returns the unit for interval terms; type stored in `out_type`.
    std::optional<Unit> Visit(const Term& t, ValueType& out_type) {
      switch (t.kind) {
        case Term::Kind::kSlot:
          if (t.slot.kind == TemporalKind::kTimePoint) {
            out_type = ValueType::kTimePoint;
            return std::nullopt;
          }
          out_type = ValueType::kInterval;
          if (!slot_unit) ok = false;
          return slot_unit;
        case Term::Kind::kIntervalLiteral:
          out_type = ValueType::kInterval;
          return t.literal.unit;
        case Term::Kind::kWeekdayLiteral:
          out_type = ValueType::kWeekday;
          return std::nullopt;
        case Term::Kind::kDayOfWeek: {
          ValueType inner;
          Visit(t.operands[0], inner);
          if (!format.Has(Unit::kYear) || !format.Has(Unit::kMonth) || !format.Has(Unit::kDay)) {
            ok = false;
          }
          out_type = ValueType::kWeekday;
          return std::nullopt;
        }
        case Term::Kind::kAdd:
        case Term::Kind::kSub: {
          ValueType ta, tb;
          auto ua = Visit(t.operands[0], ta);
          auto ub = Visit(t.operands[1], tb);
          if (ta == ValueType::kTimePoint && tb == ValueType::kTimePoint) {
            out_type = ValueType::kInterval;
            return format.Smallest();
          }
          if (ta == ValueType::kTimePoint || tb == ValueType::kTimePoint) {
            out_type = ValueType::kTimePoint;
            const auto u = ta == ValueType::kInterval ? ua : ub;
            if (!u || !format.Has(*u)) ok = false;
            return std::nullopt;
          }
          out_type = ValueType::kInterval;
          if (ua != ub) ok = false;
          return ua;
        }
      }
      return std::nullopt;
    }
  };
  Walk walk{format, interval_unit};
  for (const auto& b : ast.branches) {
    for (const auto& c : b.conjuncts) {
      ValueType tl = ValueType::kTimePoint, tr = ValueType::kTimePoint;
      auto ul = walk.Visit(c.lhs, tl);
      auto ur = walk.Visit(c.rhs, tr);
      if (tl == ValueType::kInterval && tr == ValueType::kInterval && ul != ur) walk.ok = false;
    }
  }
  return walk.ok;
}

}  // namespace tempoforge

#endif  // TEMPOFORGE_CONDITION_H_
