#include "pmcp/formula.hpp"

#include <algorithm>
#include <cctype>

#include "pmcp/errors.hpp"

namespace pmcp {

namespace {

FormulaPtr make(FKind kind, std::string atom, FormulaPtr lhs, FormulaPtr rhs) {
  return std::make_shared<const Formula>(Formula{kind, std::move(atom), std::move(lhs), std::move(rhs)});
}

}  // namespace

FormulaPtr f_true() {
  static const FormulaPtr t = make(FKind::True, "", nullptr, nullptr);
  return t;
}
FormulaPtr f_false() {
  static const FormulaPtr f = make(FKind::False, "", nullptr, nullptr);
  return f;
}
FormulaPtr f_atom(std::string name) { return make(FKind::Atom, std::move(name), nullptr, nullptr); }
FormulaPtr f_not(FormulaPtr f) { return make(FKind::Not, "", std::move(f), nullptr); }
FormulaPtr f_and(FormulaPtr a, FormulaPtr b) { return make(FKind::And, "", std::move(a), std::move(b)); }
FormulaPtr f_or(FormulaPtr a, FormulaPtr b) { return make(FKind::Or, "", std::move(a), std::move(b)); }
FormulaPtr f_next(FormulaPtr f) { return make(FKind::Next, "", std::move(f), nullptr); }
FormulaPtr f_until(FormulaPtr a, FormulaPtr b) { return make(FKind::Until, "", std::move(a), std::move(b)); }
FormulaPtr f_release(FormulaPtr a, FormulaPtr b) { return make(FKind::Release, "", std::move(a), std::move(b)); }

// ---------------------------------------------------------------- parsing

namespace {

struct Token {
  enum Kind { Word, AndOp, OrOp, NotOp, LParen, RParen, End } kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '&') tokens.push_back({Token::AndOp, "&", i++});
    else if (c == '|') tokens.push_back({Token::OrOp, "|", i++});
    else if (c == '!') tokens.push_back({Token::NotOp, "!", i++});
    else if (c == '(') tokens.push_back({Token::LParen, "(", i++});
    else if (c == ')') tokens.push_back({Token::RParen, ")", i++});
    else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
        ++i;
      tokens.push_back({Token::Word, std::string(text.substr(start, i - start)), start});
    } else {
      throw ParseError(std::string("unknown character '") + c + "'", i);
    }
  }
  tokens.push_back({Token::End, "", text.size()});
  return tokens;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  FormulaPtr parse() {
    FormulaPtr f = parse_or();
    if (peek().kind != Token::End) throw ParseError("unexpected \"" + peek().text + "\"", peek().pos);
    return f;
  }

 private:
  const Token& peek() const { return tokens_[at_]; }
  Token take() { return tokens_[at_++]; }

  bool word_is(const char* w) const {
    return peek().kind == Token::Word && peek().text == w;
  }

  FormulaPtr parse_or() {
    FormulaPtr lhs = parse_and();
    if (peek().kind == Token::OrOp) {
      take();
      return f_or(std::move(lhs), parse_or());
    }
    return lhs;
  }

  FormulaPtr parse_and() {
    FormulaPtr lhs = parse_temporal();
    if (peek().kind == Token::AndOp) {
      take();
      return f_and(std::move(lhs), parse_and());
    }
    return lhs;
  }

  FormulaPtr parse_temporal() {
    FormulaPtr lhs = parse_unary();
    if (word_is("U")) {
      take();
      return f_until(std::move(lhs), parse_temporal());
    }
    if (word_is("R")) {
      take();
      return f_release(std::move(lhs), parse_temporal());
    }
    if (word_is("W")) {
      take();
      FormulaPtr rhs = parse_temporal();
      return f_or(f_until(lhs, std::move(rhs)), f_release(f_false(), lhs));
    }
    return lhs;
  }

  FormulaPtr parse_unary() {
    if (peek().kind == Token::NotOp) {
      take();
      return f_not(parse_unary());
    }
    if (word_is("X")) {
      take();
      return f_next(parse_unary());
    }
    if (word_is("F")) {
      take();
      return f_until(f_true(), parse_unary());
    }
    if (word_is("G")) {
      take();
      return f_release(f_false(), parse_unary());
    }
    return parse_primary();
  }

  FormulaPtr parse_primary() {
    const Token& t = peek();
    if (t.kind == Token::LParen) {
      take();
      FormulaPtr f = parse_or();
      if (peek().kind != Token::RParen) throw ParseError("expected ')'", peek().pos);
      take();
      return f;
    }
    if (t.kind == Token::Word) {
      if (t.text == "true") {
        take();
        return f_true();
      }
      if (t.text == "false") {
        take();
        return f_false();
      }
      if (t.text == "U" || t.text == "R" || t.text == "W" || t.text == "X" ||
          t.text == "F" || t.text == "G")
        throw ParseError("operator \"" + t.text + "\" needs a left operand", t.pos);
      return f_atom(take().text);
    }
    throw ParseError(t.kind == Token::End ? "unexpected end of formula"
                                          : "unexpected \"" + t.text + "\"",
                     t.pos);
  }

  std::vector<Token> tokens_;
  std::size_t at_ = 0;
};

// Precedence levels for printing: | = 0, & = 1, U/R = 2, unary = 3, leaf = 4.
int precedence(FKind kind) {
  switch (kind) {
    case FKind::Or: return 0;
    case FKind::And: return 1;
    case FKind::Until:
    case FKind::Release: return 2;
    case FKind::Not:
    case FKind::Next: return 3;
    default: return 4;
  }
}

void print_into(const FormulaPtr& f, int min_prec, std::string& out) {
  int prec = precedence(f->kind);
  bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (f->kind) {
    case FKind::True: out += "true"; break;
    case FKind::False: out += "false"; break;
    case FKind::Atom: out += f->atom; break;
    case FKind::Not:
      out += '!';
      print_into(f->lhs, 3, out);
      break;
    case FKind::Next:
      out += "X ";
      print_into(f->lhs, 3, out);
      break;
    case FKind::And:
    case FKind::Or:
    case FKind::Until:
    case FKind::Release:
      // Right-associative: the left operand needs strictly higher precedence.
      print_into(f->lhs, prec + 1, out);
      out += f->kind == FKind::And     ? " & "
             : f->kind == FKind::Or    ? " | "
             : f->kind == FKind::Until ? " U "
                                       : " R ";
      print_into(f->rhs, prec, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

FormulaPtr parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string print_formula(const FormulaPtr& f) {
  std::string out;
  print_into(f, 0, out);
  return out;
}

// ---------------------------------------------------------------- structure

bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  if (a->kind == FKind::Atom) return a->atom == b->atom;
  if (a->lhs && !structurally_equal(a->lhs, b->lhs)) return false;
  if (a->rhs && !structurally_equal(a->rhs, b->rhs)) return false;
  return true;
}

bool is_positive(const FormulaPtr& f) {
  if (f->kind == FKind::Not) return false;
  if (f->lhs && !is_positive(f->lhs)) return false;
  if (f->rhs && !is_positive(f->rhs)) return false;
  return true;
}

bool is_pnf(const FormulaPtr& f) {
  if (f->kind == FKind::Not) return f->lhs->kind == FKind::Atom;
  if (f->lhs && !is_pnf(f->lhs)) return false;
  if (f->rhs && !is_pnf(f->rhs)) return false;
  return true;
}

bool is_propositional(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Next:
    case FKind::Until:
    case FKind::Release: return false;
    default: break;
  }
  if (f->lhs && !is_propositional(f->lhs)) return false;
  if (f->rhs && !is_propositional(f->rhs)) return false;
  return true;
}

FormulaPtr to_pnf(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::True:
    case FKind::False:
    case FKind::Atom: return f;
    case FKind::Not: return negate_to_pnf(f->lhs);
    case FKind::And: return f_and(to_pnf(f->lhs), to_pnf(f->rhs));
    case FKind::Or: return f_or(to_pnf(f->lhs), to_pnf(f->rhs));
    case FKind::Next: return f_next(to_pnf(f->lhs));
    case FKind::Until: return f_until(to_pnf(f->lhs), to_pnf(f->rhs));
    case FKind::Release: return f_release(to_pnf(f->lhs), to_pnf(f->rhs));
  }
  throw Error("unreachable");
}

FormulaPtr negate_to_pnf(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::True: return f_false();
    case FKind::False: return f_true();
    case FKind::Atom: return f_not(f);
    case FKind::Not: return to_pnf(f->lhs);
    case FKind::And: return f_or(negate_to_pnf(f->lhs), negate_to_pnf(f->rhs));
    case FKind::Or: return f_and(negate_to_pnf(f->lhs), negate_to_pnf(f->rhs));
    case FKind::Next: return f_next(negate_to_pnf(f->lhs));
    case FKind::Until: return f_release(negate_to_pnf(f->lhs), negate_to_pnf(f->rhs));
    case FKind::Release: return f_until(negate_to_pnf(f->lhs), negate_to_pnf(f->rhs));
  }
  throw Error("unreachable");
}

std::set<std::string> atoms_of(const FormulaPtr& f) {
  std::set<std::string> atoms;
  auto walk = [&](auto&& self, const FormulaPtr& g) -> void {
    if (g->kind == FKind::Atom) atoms.insert(g->atom);
    if (g->lhs) self(self, g->lhs);
    if (g->rhs) self(self, g->rhs);
  };
  walk(walk, f);
  return atoms;
}

FormulaPtr substitute(const FormulaPtr& f, const FormulaPtr& what, const FormulaPtr& with) {
  if (structurally_equal(f, what)) return with;
  FormulaPtr lhs = f->lhs ? substitute(f->lhs, what, with) : nullptr;
  FormulaPtr rhs = f->rhs ? substitute(f->rhs, what, with) : nullptr;
  if (lhs == f->lhs && rhs == f->rhs) return f;
  return make(f->kind, f->atom, std::move(lhs), std::move(rhs));
}

bool eval_on_labels(const FormulaPtr& f, const LabelSet& labels) {
  switch (f->kind) {
    case FKind::True: return true;
    case FKind::False: return false;
    case FKind::Atom: return labels.count(f->atom) > 0;
    case FKind::Not: return !eval_on_labels(f->lhs, labels);
    case FKind::And: return eval_on_labels(f->lhs, labels) && eval_on_labels(f->rhs, labels);
    case FKind::Or: return eval_on_labels(f->lhs, labels) || eval_on_labels(f->rhs, labels);
    default: throw Error("eval_on_labels: formula is not propositional");
  }
}

// ---------------------------------------------------------------- words

namespace {

void collect_postorder(const FormulaPtr& f, std::vector<FormulaPtr>& nodes) {
  if (f->lhs) collect_postorder(f->lhs, nodes);
  if (f->rhs) collect_postorder(f->rhs, nodes);
  for (const auto& n : nodes)
    if (structurally_equal(n, f)) return;
  nodes.push_back(f);
}

std::size_t node_index(const std::vector<FormulaPtr>& nodes, const FormulaPtr& f) {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (structurally_equal(nodes[i], f)) return i;
  throw Error("unreachable: subformula not collected");
}

}  // namespace

std::vector<FormulaPtr> subformulas_postorder(const FormulaPtr& f) {
  std::vector<FormulaPtr> nodes;
  collect_postorder(f, nodes);
  return nodes;
}

EvalTable eval_up_word_table(const UpWord& word, const FormulaPtr& f) {
  if (word.loop.empty()) throw Error("UpWord loop must be nonempty");
  const std::size_t u = word.prefix.size();
  const std::size_t n = u + word.loop.size();
  auto label_at = [&](std::size_t p) -> const LabelSet& {
    return p < u ? word.prefix[p] : word.loop[p - u];
  };
  auto succ = [&](std::size_t p) { return p + 1 < n ? p + 1 : u; };

  EvalTable table;
  collect_postorder(f, table.nodes);
  table.sat.assign(table.nodes.size(), std::vector<bool>(n, false));

  for (std::size_t i = 0; i < table.nodes.size(); ++i) {
    const FormulaPtr& node = table.nodes[i];
    auto& sat = table.sat[i];
    auto child = [&](const FormulaPtr& c) -> const std::vector<bool>& {
      return table.sat[node_index(table.nodes, c)];
    };
    switch (node->kind) {
      case FKind::True:
        sat.assign(n, true);
        break;
      case FKind::False:
        break;
      case FKind::Atom:
        for (std::size_t p = 0; p < n; ++p) sat[p] = label_at(p).count(node->atom) > 0;
        break;
      case FKind::Not: {
        const auto& c = child(node->lhs);
        for (std::size_t p = 0; p < n; ++p) sat[p] = !c[p];
        break;
      }
      case FKind::And: {
        const auto& a = child(node->lhs);
        const auto& b = child(node->rhs);
        for (std::size_t p = 0; p < n; ++p) sat[p] = a[p] && b[p];
        break;
      }
      case FKind::Or: {
        const auto& a = child(node->lhs);
        const auto& b = child(node->rhs);
        for (std::size_t p = 0; p < n; ++p) sat[p] = a[p] || b[p];
        break;
      }
      case FKind::Next: {
        const auto& c = child(node->lhs);
        for (std::size_t p = 0; p < n; ++p) sat[p] = c[succ(p)];
        break;
      }
      case FKind::Until: {
        // Least fixpoint of sat = b | (a & X sat): grow from b.
        const auto& a = child(node->lhs);
        const auto& b = child(node->rhs);
        for (std::size_t p = 0; p < n; ++p) sat[p] = b[p];
        for (bool changed = true; changed;) {
          changed = false;
          for (std::size_t p = n; p-- > 0;) {
            if (!sat[p] && a[p] && sat[succ(p)]) {
              sat[p] = true;
              changed = true;
            }
          }
        }
        break;
      }
      case FKind::Release: {
        // Greatest fixpoint of sat = b & (a | X sat): shrink from b.
        const auto& a = child(node->lhs);
        const auto& b = child(node->rhs);
        for (std::size_t p = 0; p < n; ++p) sat[p] = b[p];
        for (bool changed = true; changed;) {
          changed = false;
          for (std::size_t p = n; p-- > 0;) {
            if (sat[p] && !a[p] && !sat[succ(p)]) {
              sat[p] = false;
              changed = true;
            }
          }
        }
        break;
      }
    }
  }
  return table;
}

bool eval_up_word(const UpWord& word, const FormulaPtr& f) {
  EvalTable table = eval_up_word_table(word, f);
  return table.sat[node_index(table.nodes, f)][0];
}

bool dominates(const UpWord& w1, const UpWord& w2) {
  if (w1.prefix.size() != w2.prefix.size() || w1.loop.size() != w2.loop.size())
    throw Error("dominates: words must have the same prefix and loop lengths");
  auto contained = [](const LabelSet& a, const LabelSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  for (std::size_t i = 0; i < w1.prefix.size(); ++i)
    if (!contained(w1.prefix[i], w2.prefix[i])) return false;
  for (std::size_t i = 0; i < w1.loop.size(); ++i)
    if (!contained(w1.loop[i], w2.loop[i])) return false;
  return true;
}

}  // namespace pmcp
