#include <sstream>

#include "teamlogic/error.hpp"
#include "teamlogic/formula.hpp"

namespace teamlogic {

namespace {

// Recursive descent over the grammar
//   idis  := disj ('\/' idis)?
//   disj  := conj ('|' disj)?
//   conj  := unary ('&' conj)?
//   unary := '~' ident | '<>' unary | '[]' unary | primary
//   primary := 'T' | 'F' | ident | dep '(' [idis {',' idis}] ';' idis ')'
//            | '(' idis ')'
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula run() {
    Formula f = parse_idis();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                   text_[pos_] == '\n' || text_[pos_] == '\r'))
      ++pos_;
  }

  bool accept(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  static bool ident_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_';
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= text_.size() || text_[pos_] < 'a' || text_[pos_] > 'z') return {};
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Formula parse_idis() {
    Formula l = parse_disj();
    if (accept("\\/")) return idis(l, parse_idis());
    return l;
  }

  Formula parse_disj() {
    Formula l = parse_conj();
    if (accept("|")) return disj(l, parse_disj());
    return l;
  }

  Formula parse_conj() {
    Formula l = parse_unary();
    if (accept("&")) return conj(l, parse_conj());
    return l;
  }

  Formula parse_unary() {
    skip_ws();
    std::size_t at = pos_;
    if (accept("~")) {
      std::string name = identifier();
      if (name.empty() || name == "dep") {
        pos_ = at;
        fail("'~' applies only to proposition symbols");
      }
      return neg(name);
    }
    if (accept("<>")) return dia(parse_unary());
    if (accept("[]")) return box(parse_unary());
    return parse_primary();
  }

  Formula member() {
    skip_ws();
    std::size_t at = pos_;
    Formula f = parse_idis();
    if (!f.is_ml()) {
      pos_ = at;
      fail("dependence atom members must not contain '\\/' or dep");
    }
    return f;
  }

  Formula parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Formula f = parse_idis();
      expect(")");
      return f;
    }
    if ((c == 'T' || c == 'F') &&
        (pos_ + 1 == text_.size() || !ident_char(text_[pos_ + 1]))) {
      ++pos_;
      return c == 'T' ? top() : bot();
    }
    std::size_t at = pos_;
    std::string name = identifier();
    if (name.empty()) fail("expected a formula");
    if (name != "dep") return prop(name);

    if (!accept("(")) {
      pos_ = at;
      fail("'dep' is reserved for dependence atoms");
    }
    std::vector<Formula> args;
    if (!accept(";")) {
      args.push_back(member());
      while (accept(",")) args.push_back(member());
      expect(";");
    }
    Formula target = member();
    expect(")");
    return dep(std::move(args), std::move(target));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Binding strength: higher binds tighter.
int level(Kind k) {
  switch (k) {
    case Kind::IDis: return 1;
    case Kind::Or: return 2;
    case Kind::And: return 3;
    default: return 4;
  }
}

void emit(std::ostream& os, const Formula& f);

void emit_wrapped(std::ostream& os, const Formula& f, bool parens) {
  if (parens) os << '(';
  emit(os, f);
  if (parens) os << ')';
}

void emit(std::ostream& os, const Formula& f) {
  switch (f.kind()) {
    case Kind::Top: os << 'T'; return;
    case Kind::Bot: os << 'F'; return;
    case Kind::Prop: os << f.name(); return;
    case Kind::NegProp: os << '~' << f.name(); return;
    case Kind::Dia:
    case Kind::Box:
      os << (f.kind() == Kind::Dia ? "<>" : "[]");
      emit_wrapped(os, f.operand(), level(f.operand().kind()) < 4);
      return;
    case Kind::Dep: {
      os << "dep(";
      auto args = f.dep_args();
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) os << ", ";
        emit(os, args[i]);
      }
      os << "; ";
      emit(os, f.dep_target());
      os << ')';
      return;
    }
    case Kind::And:
    case Kind::Or:
    case Kind::IDis: {
      int lv = level(f.kind());
      const char* op = f.kind() == Kind::And ? " & " : f.kind() == Kind::Or ? " | " : " \\/ ";
      // Right associative: a left operand at the same level needs parentheses.
      emit_wrapped(os, f.left(), level(f.left().kind()) <= lv);
      os << op;
      emit_wrapped(os, f.right(), level(f.right().kind()) < lv);
      return;
    }
  }
}

}  // namespace

Formula parse(std::string_view text) { return Parser(text).run(); }

std::string render(const Formula& f) {
  std::ostringstream os;
  emit(os, f);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Formula& f) {
  emit(os, f);
  return os;
}

}  // namespace teamlogic
