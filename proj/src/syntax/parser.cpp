#include "latte/syntax/parser.hpp"

#include <cctype>
#include <unordered_set>

namespace latte {

const char* to_string(DeclAnno a) {
  switch (a) {
    case DeclAnno::Unique: return "unique";
    case DeclAnno::Shared: return "shared";
    case DeclAnno::Owned: return "owned";
  }
  return "?";
}

namespace {

enum class Tok {
  Ident,
  KwClass, KwExtends, KwNull, KwNew, KwReturn, KwIf, KwElse, KwVoid, KwThis, KwSuper,
  KwUnique, KwShared, KwOwned,
  LBrace, RBrace, LParen, RParen, Semi, Comma, Dot, Assign, EqEq, NotEq, OrOr, AndAnd,
  Eof,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::KwClass: return "'class'";
    case Tok::KwExtends: return "'extends'";
    case Tok::KwNull: return "'null'";
    case Tok::KwNew: return "'new'";
    case Tok::KwReturn: return "'return'";
    case Tok::KwIf: return "'if'";
    case Tok::KwElse: return "'else'";
    case Tok::KwVoid: return "'void'";
    case Tok::KwThis: return "'this'";
    case Tok::KwSuper: return "'super'";
    case Tok::KwUnique: return "'unique'";
    case Tok::KwShared: return "'shared'";
    case Tok::KwOwned: return "'owned'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Semi: return "';'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Assign: return "'='";
    case Tok::EqEq: return "'=='";
    case Tok::NotEq: return "'!='";
    case Tok::OrOr: return "'||'";
    case Tok::AndAnd: return "'&&'";
    case Tok::Eof: return "end of input";
  }
  return "?";
}

std::vector<Token> lex(std::string_view src) {
  static const std::vector<std::pair<std::string_view, Tok>> keywords = {
      {"class", Tok::KwClass},   {"extends", Tok::KwExtends}, {"null", Tok::KwNull},
      {"new", Tok::KwNew},       {"return", Tok::KwReturn},   {"if", Tok::KwIf},
      {"else", Tok::KwElse},     {"void", Tok::KwVoid},       {"this", Tok::KwThis},
      {"super", Tok::KwSuper},   {"unique", Tok::KwUnique},   {"shared", Tok::KwShared},
      {"owned", Tok::KwOwned},
  };

  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
        ++col;
      }
      ++i;
    }
  };

  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
      int l = line, cl = col;
      advance(2);
      while (i + 1 < src.size() && !(src[i] == '*' && src[i + 1] == '/')) advance(1);
      if (i + 1 >= src.size()) throw SyntaxError("unterminated block comment", {l, cl, cl + 2});
      advance(2);
      continue;
    }
    int l = line, cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      std::string word(src.substr(i, j - i));
      Tok kind = Tok::Ident;
      for (const auto& [kw, k] : keywords) {
        if (kw == word) kind = k;
      }
      out.push_back({kind, word, l, cl});
      advance(j - i);
      continue;
    }
    auto two = [&](char a, char b) { return c == a && i + 1 < src.size() && src[i + 1] == b; };
    Tok kind;
    std::size_t len = 1;
    if (two('=', '=')) {
      kind = Tok::EqEq, len = 2;
    } else if (two('!', '=')) {
      kind = Tok::NotEq, len = 2;
    } else if (two('|', '|')) {
      kind = Tok::OrOr, len = 2;
    } else if (two('&', '&')) {
      kind = Tok::AndAnd, len = 2;
    } else {
      switch (c) {
        case '{': kind = Tok::LBrace; break;
        case '}': kind = Tok::RBrace; break;
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case ';': kind = Tok::Semi; break;
        case ',': kind = Tok::Comma; break;
        case '.': kind = Tok::Dot; break;
        case '=': kind = Tok::Assign; break;
        default:
          throw SyntaxError(std::string("unexpected character '") + c + "'", {l, cl, cl + 1});
      }
    }
    out.push_back({kind, std::string(src.substr(i, len)), l, cl});
    advance(len);
  }
  out.push_back({Tok::Eof, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program program() {
    Program p;
    while (!at(Tok::Eof)) p.classes.push_back(class_decl());
    return p;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  const Token& cur() const { return toks_[pos_]; }
  const Token& peek(std::size_t n = 1) const {
    return toks_[std::min(pos_ + n, toks_.size() - 1)];
  }
  bool at(Tok k) const { return cur().kind == k; }
  const Token& take() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool accept(Tok k) {
    if (!at(k)) return false;
    take();
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = cur();
    int width = t.text.empty() ? 1 : static_cast<int>(t.text.size());
    throw SyntaxError(msg, {t.line, t.column, t.column + width});
  }
  const Token& expect(Tok k) {
    if (!at(k)) {
      fail(std::string("expected ") + describe(k) + ", found " +
           (at(Tok::Eof) ? describe(Tok::Eof) : "'" + cur().text + "'"));
    }
    return take();
  }
  SourceSpan span_here() const { return {cur().line, cur().column, cur().column}; }
  SourceSpan span_from(const Token& start) const {
    const Token& prev = toks_[pos_ == 0 ? 0 : pos_ - 1];
    int end = prev.line == start.line ? prev.column + static_cast<int>(prev.text.size())
                                      : start.column + static_cast<int>(start.text.size());
    return {start.line, start.column, end};
  }

  bool at_anno() const { return at(Tok::KwUnique) || at(Tok::KwShared) || at(Tok::KwOwned); }
  DeclAnno anno() {
    if (accept(Tok::KwUnique)) return DeclAnno::Unique;
    if (accept(Tok::KwShared)) return DeclAnno::Shared;
    if (accept(Tok::KwOwned)) return DeclAnno::Owned;
    fail("expected an annotation (unique, shared or owned)");
  }

  ClassDecl class_decl() {
    const Token& start = expect(Tok::KwClass);
    ClassDecl c;
    c.name = expect(Tok::Ident).text;
    if (accept(Tok::KwExtends)) c.parent = expect(Tok::Ident).text;
    c.span = span_from(start);
    expect(Tok::LBrace);
    while (!at(Tok::RBrace)) {
      if (at(Tok::Eof)) fail("unterminated class body");
      member(c);
    }
    expect(Tok::RBrace);
    return c;
  }

  void member(ClassDecl& c) {
    if (at(Tok::Ident) && cur().text == c.name && peek().kind == Tok::LParen) {
      if (c.ctor) fail("class '" + c.name + "' declares more than one constructor");
      c.ctor = ctor_decl(c.name);
      return;
    }
    const Token& start = cur();
    if (accept(Tok::KwVoid)) {
      c.methods.push_back(method_decl(std::nullopt, start));
      return;
    }
    if (!at_anno()) fail("expected a field, constructor or method declaration");
    bool owned = at(Tok::KwOwned);
    DeclAnno a = anno();
    std::string cls = expect(Tok::Ident).text;
    if (peek().kind == Tok::LParen) {
      if (owned) fail("return types cannot be annotated owned");
      c.methods.push_back(method_decl(ReturnType{a, cls}, start));
      return;
    }
    FieldDecl f;
    f.anno = a;
    f.class_name = cls;
    f.name = expect(Tok::Ident).text;
    expect(Tok::Semi);
    f.span = span_from(start);
    if (owned) throw SyntaxError("fields cannot be annotated owned", f.span);
    c.fields.push_back(std::move(f));
  }

  Param param(bool allow_this) {
    Param p;
    p.anno = anno();
    p.class_name = expect(Tok::Ident).text;
    if (allow_this && at(Tok::KwThis)) {
      p.name = take().text;
    } else {
      p.name = expect(Tok::Ident).text;
    }
    return p;
  }

  CtorDecl ctor_decl(const std::string& cls) {
    const Token& start = take();
    CtorDecl k;
    k.name = cls;
    expect(Tok::LParen);
    if (!at(Tok::RParen)) {
      do {
        k.params.push_back(param(false));
      } while (accept(Tok::Comma));
    }
    expect(Tok::RParen);
    k.span = span_from(start);
    expect(Tok::LBrace);
    if (accept(Tok::KwSuper)) {
      std::vector<std::string> args;
      expect(Tok::LParen);
      if (!at(Tok::RParen)) {
        do {
          args.push_back(expect(Tok::Ident).text);
        } while (accept(Tok::Comma));
      }
      expect(Tok::RParen);
      expect(Tok::Semi);
      k.super_args = std::move(args);
    }
    while (!at(Tok::RBrace)) {
      if (!at(Tok::KwThis)) {
        fail("constructor bodies may only contain super(...) followed by this.f = f; assignments");
      }
      take();
      expect(Tok::Dot);
      std::string field = expect(Tok::Ident).text;
      expect(Tok::Assign);
      std::string value = expect(Tok::Ident).text;
      expect(Tok::Semi);
      k.inits.emplace_back(std::move(field), std::move(value));
    }
    expect(Tok::RBrace);
    return k;
  }

  MethodDecl method_decl(std::optional<ReturnType> ret, const Token& start) {
    MethodDecl m;
    m.ret = std::move(ret);
    m.name = expect(Tok::Ident).text;
    expect(Tok::LParen);
    if (at(Tok::RParen)) fail("method '" + m.name + "' must declare its receiver, e.g. (owned C this)");
    Param recv = param(true);
    if (recv.name != "this") {
      throw SyntaxError("first parameter of method '" + m.name + "' must be the receiver 'this'",
                        span_from(start));
    }
    m.receiver_anno = recv.anno;
    m.receiver_class = recv.class_name;
    while (accept(Tok::Comma)) m.params.push_back(param(false));
    expect(Tok::RParen);
    m.span = span_from(start);
    expect(Tok::LBrace);
    while (!at(Tok::RBrace) && !at(Tok::KwReturn)) {
      if (at(Tok::Eof)) fail("unterminated method body");
      m.body.push_back(statement());
    }
    if (at(Tok::KwReturn)) {
      const Token& rs = take();
      if (!m.ret) fail("void method '" + m.name + "' cannot return a value");
      m.ret_expr = expr();
      expect(Tok::Semi);
      m.ret_span = span_from(rs);
    } else if (m.ret) {
      fail("method '" + m.name + "' must end with a return statement");
    }
    expect(Tok::RBrace);
    return m;
  }

  Path path() {
    Path p;
    if (at(Tok::KwThis)) {
      p.root = take().text;
    } else {
      p.root = expect(Tok::Ident).text;
    }
    while (at(Tok::Dot)) {
      take();
      p.fields.push_back(expect(Tok::Ident).text);
    }
    return p;
  }

  Expr expr() {
    if (accept(Tok::KwNull)) return Expr::null();
    if (!at(Tok::Ident) && !at(Tok::KwThis)) fail("expected null or a path");
    return Expr::of(path());
  }

  std::vector<Expr> args() {
    std::vector<Expr> out;
    expect(Tok::LParen);
    if (!at(Tok::RParen)) {
      do {
        out.push_back(expr());
      } while (accept(Tok::Comma));
    }
    expect(Tok::RParen);
    return out;
  }

  static void split_call(Path chain, Path& receiver, std::string& method) {
    if (chain.is_var()) {
      receiver = Path("this");
      method = chain.root;
    } else {
      method = chain.fields.back();
      chain.fields.pop_back();
      receiver = std::move(chain);
    }
  }

  stmt::Cond cond_or() {
    stmt::Cond left = cond_and();
    while (accept(Tok::OrOr)) {
      stmt::Cond c;
      c.kind = stmt::Cond::Kind::Or;
      c.left = std::move(left);
      c.right = cond_and();
      left = std::move(c);
    }
    return left;
  }
  stmt::Cond cond_and() {
    stmt::Cond left = cond_atom();
    while (accept(Tok::AndAnd)) {
      stmt::Cond c;
      c.kind = stmt::Cond::Kind::And;
      c.left = std::move(left);
      c.right = cond_atom();
      left = std::move(c);
    }
    return left;
  }
  stmt::Cond cond_atom() {
    if (accept(Tok::LParen)) {
      stmt::Cond c = cond_or();
      expect(Tok::RParen);
      return c;
    }
    stmt::Cond c;
    c.lhs = expr();
    if (accept(Tok::EqEq)) {
      c.kind = stmt::Cond::Kind::Eq;
    } else if (accept(Tok::NotEq)) {
      c.kind = stmt::Cond::Kind::Ne;
    } else {
      fail("expected '==' or '!=' in condition");
    }
    c.rhs = expr();
    return c;
  }

  Stmt statement() {
    const Token& start = cur();
    Stmt s;
    if (accept(Tok::LBrace)) {
      stmt::Block b;
      while (!at(Tok::RBrace)) {
        if (at(Tok::Eof)) fail("unterminated block");
        if (at(Tok::KwReturn)) fail("return is only allowed as the last statement of a method");
        b.body.push_back(statement());
      }
      expect(Tok::RBrace);
      s.node = std::move(b);
      s.span = {start.line, start.column, start.column + 1};
      return s;
    }
    if (accept(Tok::KwIf)) {
      expect(Tok::LParen);
      stmt::SugarIf si;
      si.cond = cond_or();
      expect(Tok::RParen);
      s.span = span_from(start);
      si.then_branch = statement();
      if (accept(Tok::KwElse)) si.else_branch = statement();
      s.node = std::move(si);
      return s;
    }
    if (at(Tok::KwReturn)) fail("return is only allowed as the last statement of a method");

    // C x;  or  C x = rhs;
    if (at(Tok::Ident) && peek().kind == Tok::Ident) {
      std::string cls = take().text;
      std::string var = take().text;
      if (accept(Tok::Semi)) {
        s.node = stmt::Decl{cls, var};
        s.span = span_from(start);
        return s;
      }
      expect(Tok::Assign);
      Stmt init = assignment_rhs(var, start);
      s.span = init.span;
      s.node = stmt::DeclInit{cls, var, std::move(init)};
      return s;
    }

    Path chain = path();
    if (at(Tok::LParen)) {
      stmt::CallVoid call;
      split_call(std::move(chain), call.receiver, call.method);
      call.args = args();
      expect(Tok::Semi);
      s.node = std::move(call);
      s.span = span_from(start);
      return s;
    }
    expect(Tok::Assign);
    if (chain.is_var()) return assignment_rhs(chain.root, start);
    if (chain.depth() != 1) {
      throw SyntaxError("field assignment target must have the form x.f", span_from(start));
    }
    stmt::AssignField af;
    af.var = chain.root;
    af.field = chain.fields[0];
    if (at(Tok::KwNew)) fail("right-hand side of a field assignment must be null or a path");
    af.value = expr();
    if (at(Tok::LParen)) fail("right-hand side of a field assignment must be null or a path");
    expect(Tok::Semi);
    s.node = std::move(af);
    s.span = span_from(start);
    return s;
  }

  // After `x =`: new, call, or plain expression.
  Stmt assignment_rhs(const std::string& var, const Token& start) {
    Stmt s;
    if (accept(Tok::KwNew)) {
      stmt::AssignNew an;
      an.var = var;
      an.class_name = expect(Tok::Ident).text;
      an.args = args();
      s.node = std::move(an);
    } else if (accept(Tok::KwNull)) {
      s.node = stmt::AssignVar{var, Expr::null()};
    } else {
      Path chain = path();
      if (at(Tok::LParen)) {
        stmt::AssignCall ac;
        ac.var = var;
        split_call(std::move(chain), ac.receiver, ac.method);
        ac.args = args();
        s.node = std::move(ac);
      } else {
        s.node = stmt::AssignVar{var, Expr::of(std::move(chain))};
      }
    }
    expect(Tok::Semi);
    s.span = span_from(start);
    return s;
  }
};

Stmt lower_cond(const stmt::Cond& c, const Stmt& then_s, const Stmt& else_s, SourceSpan span) {
  using K = stmt::Cond::Kind;
  Stmt out;
  out.span = span;
  auto block_of = [&](Stmt inner) {
    Stmt b;
    b.span = span;
    stmt::Block blk;
    blk.body.push_back(std::move(inner));
    b.node = std::move(blk);
    return b;
  };
  switch (c.kind) {
    case K::Eq:
      out.node = stmt::If{c.lhs, c.rhs, then_s, else_s};
      return out;
    case K::Ne:
      out.node = stmt::If{c.lhs, c.rhs, else_s, then_s};
      return out;
    case K::Or:
      return lower_cond(*c.left, then_s, block_of(lower_cond(*c.right, then_s, else_s, span)), span);
    case K::And:
      return lower_cond(*c.left, block_of(lower_cond(*c.right, then_s, else_s, span)), else_s, span);
  }
  return out;
}

std::vector<Stmt> desugar_list(std::vector<Stmt> in);

// Desugars one statement in a single-statement position (branch of an if).
Stmt desugar_single(Stmt s) {
  std::vector<Stmt> v;
  v.push_back(std::move(s));
  SourceSpan span = v.front().span;
  v = desugar_list(std::move(v));
  if (v.size() == 1) return std::move(v.front());
  Stmt b;
  b.span = span;
  b.node = stmt::Block{std::move(v)};
  return b;
}

std::vector<Stmt> desugar_list(std::vector<Stmt> in) {
  std::vector<Stmt> out;
  for (auto& s : in) {
    if (auto* di = std::get_if<stmt::DeclInit>(&s.node)) {
      Stmt decl;
      decl.span = s.span;
      decl.node = stmt::Decl{di->class_name, di->var};
      out.push_back(std::move(decl));
      out.push_back(std::move(*di->init));
    } else if (auto* si = std::get_if<stmt::SugarIf>(&s.node)) {
      Stmt then_s = desugar_single(std::move(*si->then_branch));
      Stmt else_s;
      if (si->else_branch) {
        else_s = desugar_single(std::move(*si->else_branch));
      } else {
        else_s.span = s.span;
        else_s.node = stmt::Block{};
      }
      out.push_back(lower_cond(si->cond, then_s, else_s, s.span));
    } else if (auto* b = std::get_if<stmt::Block>(&s.node)) {
      b->body = desugar_list(std::move(b->body));
      out.push_back(std::move(s));
    } else if (auto* i = std::get_if<stmt::If>(&s.node)) {
      i->then_branch = desugar_single(std::move(*i->then_branch));
      i->else_branch = desugar_single(std::move(*i->else_branch));
      out.push_back(std::move(s));
    } else {
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace

bool Stmt::is_core() const {
  if (std::holds_alternative<stmt::DeclInit>(node) || std::holds_alternative<stmt::SugarIf>(node)) {
    return false;
  }
  if (auto* b = as<stmt::Block>()) {
    for (const auto& s : b->body) {
      if (!s.is_core()) return false;
    }
  }
  if (auto* i = as<stmt::If>()) return i->then_branch->is_core() && i->else_branch->is_core();
  return true;
}

Program parse_surface(std::string_view source) { return Parser(lex(source)).program(); }

Program desugar(Program program) {
  for (auto& c : program.classes) {
    for (auto& m : c.methods) m.body = desugar_list(std::move(m.body));
  }
  return program;
}

Program parse_program(std::string_view source) { return desugar(parse_surface(source)); }

}  // namespace latte
