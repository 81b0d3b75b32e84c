#include "cdm/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "cdm/error.hpp"

namespace cdm {

FormulaPtr Formula::atom(FormulaKind k, std::vector<std::string> args, int pos) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->args = std::move(args);
  f->pos = pos;
  return f;
}

FormulaPtr Formula::in_sort(std::string v, std::uint64_t n, int pos) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::InSort;
  f->args = {std::move(v)};
  f->sort = n;
  f->pos = pos;
  return f;
}

FormulaPtr Formula::iso_of(std::string v, IsoName tag, int pos) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Iso;
  f->args = {std::move(v)};
  f->iso = tag;
  f->pos = pos;
  return f;
}

FormulaPtr Formula::negation(FormulaPtr x) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Not;
  f->children = {std::move(x)};
  return f;
}

namespace {
FormulaPtr binary(FormulaKind k, FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->children = {std::move(a), std::move(b)};
  return f;
}
}  // namespace

FormulaPtr Formula::conjunction(FormulaPtr a, FormulaPtr b) {
  return binary(FormulaKind::And, std::move(a), std::move(b));
}
FormulaPtr Formula::disjunction(FormulaPtr a, FormulaPtr b) {
  return binary(FormulaKind::Or, std::move(a), std::move(b));
}
FormulaPtr Formula::implication(FormulaPtr a, FormulaPtr b) {
  return binary(FormulaKind::Implies, std::move(a), std::move(b));
}

FormulaPtr Formula::quantifier(FormulaKind k, std::string v, std::uint64_t sort,
                               FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->var = std::move(v);
  f->sort = sort;
  f->children = {std::move(body)};
  return f;
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a->kind != b->kind || a->args != b->args || a->sort != b->sort ||
      a->iso != b->iso || a->var != b->var ||
      a->children.size() != b->children.size())
    return false;
  for (std::size_t i = 0; i < a->children.size(); ++i)
    if (!equal(a->children[i], b->children[i])) return false;
  return true;
}

namespace {

void collect_free(const FormulaPtr& f, std::set<std::string>& bound,
                  std::set<std::string>& free) {
  switch (f->kind) {
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      bool fresh = bound.insert(f->var).second;
      collect_free(f->children[0], bound, free);
      if (fresh) bound.erase(f->var);
      return;
    }
    default:
      for (const auto& v : f->args)
        if (!bound.count(v)) free.insert(v);
      for (const auto& c : f->children) collect_free(c, bound, free);
  }
}

}  // namespace

std::vector<std::string> free_variables(const FormulaPtr& f) {
  std::set<std::string> bound, free;
  collect_free(f, bound, free);
  return {free.begin(), free.end()};
}

const char* iso_name_str(IsoName n) {
  switch (n) {
    case IsoName::Dp: return "Dp";
    case IsoName::W: return "W";
    case IsoName::C2: return "C2";
    case IsoName::Dq: return "Dq";
  }
  return "Dp";
}

// ---------------------------------------------------------------------------
// Lexer / parser

namespace {

enum class Tok { Ident, Int, LParen, RParen, LBracket, RBracket, Comma, Dot,
                 Colon, Bang, Amp, Pipe, Arrow, Equals, End };

struct Lexer {
  std::string_view src;
  std::size_t at = 0;
  Tok tok = Tok::End;
  std::string ident;
  std::uint64_t number = 0;
  std::size_t tok_pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("offset " + std::to_string(tok_pos) + ": " + msg);
  }

  void next() {
    while (at < src.size() && std::isspace(static_cast<unsigned char>(src[at]))) ++at;
    tok_pos = at;
    if (at >= src.size()) {
      tok = Tok::End;
      return;
    }
    char c = src[at];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = at;
      while (at < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[at])) || src[at] == '_'))
        ++at;
      ident = std::string(src.substr(start, at - start));
      tok = Tok::Ident;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      number = 0;
      while (at < src.size() && std::isdigit(static_cast<unsigned char>(src[at]))) {
        number = number * 10 + (src[at] - '0');
        ++at;
      }
      tok = Tok::Int;
      return;
    }
    ++at;
    switch (c) {
      case '(': tok = Tok::LParen; return;
      case ')': tok = Tok::RParen; return;
      case '[': tok = Tok::LBracket; return;
      case ']': tok = Tok::RBracket; return;
      case ',': tok = Tok::Comma; return;
      case '.': tok = Tok::Dot; return;
      case ':': tok = Tok::Colon; return;
      case '!': tok = Tok::Bang; return;
      case '&': tok = Tok::Amp; return;
      case '|': tok = Tok::Pipe; return;
      case '=': tok = Tok::Equals; return;
      case '-':
        if (at < src.size() && src[at] == '>') {
          ++at;
          tok = Tok::Arrow;
          return;
        }
        fail("stray '-'");
      default:
        fail(std::string("unexpected character '") + c + "'");
    }
  }
};

struct Parser {
  Lexer lx;

  explicit Parser(std::string_view src) : lx{src, 0, Tok::End, {}, 0, 0} { lx.next(); }

  void expect(Tok t, const char* what) {
    if (lx.tok != t) lx.fail(std::string("expected ") + what);
    lx.next();
  }

  std::uint64_t sort_bound() {
    // X[n]
    if (lx.tok != Tok::Ident || lx.ident != "X") lx.fail("expected sort X[n]");
    lx.next();
    expect(Tok::LBracket, "'['");
    if (lx.tok != Tok::Int) lx.fail("expected sort index");
    std::uint64_t n = lx.number;
    if (n == 0) lx.fail("sort index must be >= 1");
    lx.next();
    expect(Tok::RBracket, "']'");
    return n;
  }

  std::string variable() {
    if (lx.tok != Tok::Ident) lx.fail("expected a variable name");
    std::string v = lx.ident;
    lx.next();
    return v;
  }

  FormulaPtr formula() {
    if (lx.tok == Tok::Ident && (lx.ident == "exists" || lx.ident == "forall")) {
      FormulaKind k = lx.ident == "exists" ? FormulaKind::Exists : FormulaKind::Forall;
      int pos = static_cast<int>(lx.tok_pos);
      lx.next();
      std::string v = variable();
      expect(Tok::Colon, "':' with a sort annotation");
      std::uint64_t n = sort_bound();
      expect(Tok::Dot, "'.'");
      auto f = Formula::quantifier(k, std::move(v), n, formula());
      const_cast<Formula&>(*f).pos = pos;
      return f;
    }
    return implication();
  }

  FormulaPtr implication() {
    auto lhs = disjunction();
    if (lx.tok == Tok::Arrow) {
      lx.next();
      return Formula::implication(std::move(lhs), implication());
    }
    return lhs;
  }

  FormulaPtr disjunction() {
    auto lhs = conjunction();
    while (lx.tok == Tok::Pipe) {
      lx.next();
      lhs = Formula::disjunction(std::move(lhs), conjunction());
    }
    return lhs;
  }

  FormulaPtr conjunction() {
    auto lhs = negation();
    while (lx.tok == Tok::Amp) {
      lx.next();
      lhs = Formula::conjunction(std::move(lhs), negation());
    }
    return lhs;
  }

  FormulaPtr negation() {
    if (lx.tok == Tok::Bang) {
      lx.next();
      return Formula::negation(negation());
    }
    return atom();
  }

  std::vector<std::string> arg_list(std::size_t arity, const char* name) {
    expect(Tok::LParen, "'('");
    std::vector<std::string> args;
    for (;;) {
      args.push_back(variable());
      if (lx.tok == Tok::Comma) {
        lx.next();
        continue;
      }
      break;
    }
    expect(Tok::RParen, "')'");
    if (args.size() != arity)
      lx.fail(std::string(name) + " takes " + std::to_string(arity) + " arguments");
    return args;
  }

  FormulaPtr atom() {
    int pos = static_cast<int>(lx.tok_pos);
    if (lx.tok == Tok::LParen) {
      lx.next();
      auto f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (lx.tok != Tok::Ident) lx.fail("expected an atom");
    std::string head = lx.ident;

    if (head == "exists" || head == "forall") return formula();

    // Relation keywords are only recognized when followed by '('; otherwise
    // the identifier is a term of an equality.
    if (head == "leq" || head == "c" || head == "p" || head == "in" || head == "iso") {
      std::size_t save_at = lx.at;
      Tok save_tok = lx.tok;
      std::string save_ident = lx.ident;
      std::size_t save_pos = lx.tok_pos;
      lx.next();
      if (lx.tok == Tok::LParen) {
        if (head == "leq") return Formula::atom(FormulaKind::Leq, arg_list(2, "leq"), pos);
        if (head == "c") return Formula::atom(FormulaKind::CRel, arg_list(2, "c"), pos);
        if (head == "p") return Formula::atom(FormulaKind::PRel, arg_list(3, "p"), pos);
        if (head == "in") {
          expect(Tok::LParen, "'('");
          std::string v = variable();
          expect(Tok::Comma, "','");
          std::uint64_t n = sort_bound();
          expect(Tok::RParen, "')'");
          return Formula::in_sort(std::move(v), n, pos);
        }
        // iso
        expect(Tok::LParen, "'('");
        std::string v = variable();
        expect(Tok::Comma, "','");
        if (lx.tok != Tok::Ident) lx.fail("expected an iso tag");
        std::string tag = lx.ident;
        lx.next();
        expect(Tok::RParen, "')'");
        IsoName n;
        if (tag == "Dp") n = IsoName::Dp;
        else if (tag == "W") n = IsoName::W;
        else if (tag == "C2") n = IsoName::C2;
        else if (tag == "Dq") n = IsoName::Dq;
        else lx.fail("unknown iso tag '" + tag + "' (expected Dp|W|C2|Dq)");
        return Formula::iso_of(std::move(v), n, pos);
      }
      // Not a call: restore and treat as a bare term.
      lx.at = save_at;
      lx.tok = save_tok;
      lx.ident = save_ident;
      lx.tok_pos = save_pos;
    }

    // term = term
    std::string lhs = variable();
    expect(Tok::Equals, "'=' (bare variables only occur in equalities)");
    std::string rhs = variable();
    return Formula::atom(FormulaKind::Eq, {std::move(lhs), std::move(rhs)}, pos);
  }
};

int precedence(FormulaKind k) {
  switch (k) {
    case FormulaKind::Exists:
    case FormulaKind::Forall: return 0;
    case FormulaKind::Implies: return 1;
    case FormulaKind::Or: return 2;
    case FormulaKind::And: return 3;
    case FormulaKind::Not: return 4;
    default: return 5;
  }
}

void print_rec(const FormulaPtr& f, std::ostringstream& out, int parent_prec) {
  int prec = precedence(f->kind);
  bool paren = prec < parent_prec;
  if (paren) out << "(";
  switch (f->kind) {
    case FormulaKind::Leq:
      out << "leq(" << f->args[0] << ", " << f->args[1] << ")";
      break;
    case FormulaKind::CRel:
      out << "c(" << f->args[0] << ", " << f->args[1] << ")";
      break;
    case FormulaKind::PRel:
      out << "p(" << f->args[0] << ", " << f->args[1] << ", " << f->args[2] << ")";
      break;
    case FormulaKind::Eq:
      out << f->args[0] << " = " << f->args[1];
      break;
    case FormulaKind::InSort:
      out << "in(" << f->args[0] << ", X[" << f->sort << "])";
      break;
    case FormulaKind::Iso:
      out << "iso(" << f->args[0] << ", " << iso_name_str(f->iso) << ")";
      break;
    case FormulaKind::Not:
      out << "!";
      print_rec(f->children[0], out, precedence(FormulaKind::Not));
      break;
    case FormulaKind::And:
      print_rec(f->children[0], out, prec);
      out << " & ";
      print_rec(f->children[1], out, prec + 1);
      break;
    case FormulaKind::Or:
      print_rec(f->children[0], out, prec);
      out << " | ";
      print_rec(f->children[1], out, prec + 1);
      break;
    case FormulaKind::Implies:
      print_rec(f->children[0], out, prec + 1);  // right associative
      out << " -> ";
      print_rec(f->children[1], out, prec);
      break;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      out << (f->kind == FormulaKind::Exists ? "exists " : "forall ") << f->var << ":X["
          << f->sort << "]. ";
      print_rec(f->children[0], out, 0);
      break;
  }
  if (paren) out << ")";
}

}  // namespace

FormulaPtr parse_formula(std::string_view text) {
  Parser parser(text);
  auto f = parser.formula();
  if (parser.lx.tok != Tok::End) parser.lx.fail("trailing input after formula");
  return f;
}

std::string print_formula(const FormulaPtr& f) {
  std::ostringstream out;
  print_rec(f, out, 0);
  return out.str();
}

}  // namespace cdm
