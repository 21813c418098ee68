#include "hat/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace hat {

namespace {

enum class Tok { Lower, Upper, Quoted, Dollar, Number, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int col = 1;
};

const char* const kPuncts[] = {"<=>", "<~>", "=>", "<=", "~|", "~&", "!=", "(", ")", "[", "]",
                               ",",   ";",   ":",  ".",  "~",  "&",  "|",  "!",  "?", "="};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.line = line_;
      t.col = col_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = (std::isupper(static_cast<unsigned char>(c)) || c == '_') ? Tok::Upper : Tok::Lower;
        t.text = take_word();
      } else if (c == '$') {
        advance();
        t.kind = Tok::Dollar;
        t.text = "$" + take_word();
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = Tok::Number;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          t.text += src_[pos_];
          advance();
        }
      } else if (c == '\'' || c == '"') {
        t.kind = Tok::Quoted;
        advance();
        while (pos_ < src_.size() && src_[pos_] != c) {
          if (src_[pos_] == '\\' && pos_ + 1 < src_.size()) advance();
          t.text += src_[pos_];
          advance();
        }
        if (pos_ >= src_.size()) throw ParseError(t.line, t.col, "unterminated quoted name");
        advance();
      } else {
        bool found = false;
        for (const char* p : kPuncts) {
          std::string_view sv(p);
          if (src_.substr(pos_, sv.size()) == sv) {
            t.kind = Tok::Punct;
            t.text = std::string(sv);
            for (std::size_t i = 0; i < sv.size(); ++i) advance();
            found = true;
            break;
          }
        }
        if (!found) throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string take_word() {
    std::string w;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      w += src_[pos_];
      advance();
    }
    return w;
  }

  void skip_space() {
    for (;;) {
      while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
      if (pos_ < src_.size() && src_[pos_] == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
        continue;
      }
      if (src_.substr(pos_, 2) == "/*") {
        int l = line_, c = col_;
        advance();
        advance();
        while (pos_ < src_.size() && src_.substr(pos_, 2) != "*/") advance();
        if (pos_ >= src_.size()) throw ParseError(l, c, "unterminated comment");
        advance();
        advance();
        continue;
      }
      return;
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// Symbol arities seen so far in one problem, for clash detection.
struct Signature {
  std::map<std::string, int> preds;
  std::map<std::string, int> funs;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, int& next_var, Signature& sig)
      : toks_(std::move(toks)), next_var_(next_var), sig_(sig) {}

  bool at_end() const { return peek().kind == Tok::End; }
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }

  bool is(const char* punct, std::size_t k = 0) const {
    const Token& t = peek(k);
    return t.kind == Tok::Punct && t.text == punct;
  }

  Token next() {
    Token t = peek();
    if (t.kind != Tok::End) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw ParseError(t.line, t.col, msg + (t.kind == Tok::End ? " at end of input" : " near '" + t.text + "'"));
  }

  void expect(const char* punct) {
    if (!is(punct)) fail(peek(), std::string("expected '") + punct + "'");
    next();
  }

  std::string name_token() {
    const Token& t = peek();
    if (t.kind != Tok::Lower && t.kind != Tok::Quoted && t.kind != Tok::Number) fail(t, "expected a name");
    return next().text;
  }

  // Wraps the formula in universal quantifiers for its free variables.
  FormulaPtr close(FormulaPtr f) {
    for (auto it = free_order_.rbegin(); it != free_order_.rend(); ++it) f = forall(*it, f);
    free_order_.clear();
    free_.clear();
    return f;
  }

  // ---- TPTP -------------------------------------------------------------

  FormulaPtr tptp_formula() {
    FormulaPtr lhs = tptp_unitary();
    if (is("&") || is("|")) {
      std::string op = peek().text;
      while (is(op.c_str())) {
        next();
        FormulaPtr rhs = tptp_unitary();
        lhs = op == "&" ? conj(lhs, rhs) : disj(lhs, rhs);
      }
      return lhs;
    }
    const Token& t = peek();
    if (t.kind != Tok::Punct) return lhs;
    const std::string op = t.text;
    if (op == "=>" || op == "<=" || op == "<=>" || op == "<~>" || op == "~|" || op == "~&") {
      next();
      FormulaPtr rhs = tptp_unitary();
      if (op == "=>") return imp(lhs, rhs);
      if (op == "<=") return imp(rhs, lhs);
      if (op == "<=>") return iff(lhs, rhs);
      if (op == "<~>") return neg(iff(lhs, rhs));
      if (op == "~|") return neg(disj(lhs, rhs));
      return neg(conj(lhs, rhs));
    }
    return lhs;
  }

  FormulaPtr tptp_unitary() {
    if (is("(")) {
      next();
      FormulaPtr f = tptp_formula();
      expect(")");
      return f;
    }
    if (is("~")) {
      next();
      return neg(tptp_unitary());
    }
    if (is("!") || is("?")) {
      bool all = next().text == "!";
      expect("[");
      std::vector<TermPtr> vars;
      do {
        const Token& v = peek();
        if (v.kind != Tok::Upper) fail(v, "expected a variable");
        vars.push_back(bind(next().text));
      } while (is(",") && (next(), true));
      expect("]");
      expect(":");
      FormulaPtr body = tptp_unitary();
      for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
        body = all ? forall(*it, body) : exists(*it, body);
        unbind((*it)->name);
      }
      return body;
    }
    return atomic(true);
  }

  // ---- native -------------------------------------------------------------
  // Precedence: ~ > , > ; > => > <=>, => right-associative, quantifiers
  // extend as far right as possible.

  FormulaPtr native_formula() {
    FormulaPtr lhs = native_imp();
    while (is("<=>")) {
      next();
      lhs = iff(lhs, native_imp());
    }
    return lhs;
  }

  FormulaPtr native_imp() {
    FormulaPtr lhs = native_or();
    if (is("=>")) {
      next();
      return imp(lhs, native_imp());
    }
    return lhs;
  }

  FormulaPtr native_or() {
    FormulaPtr lhs = native_and();
    while (is(";")) {
      next();
      lhs = disj(lhs, native_and());
    }
    return lhs;
  }

  FormulaPtr native_and() {
    FormulaPtr lhs = native_unary();
    while (is(",")) {
      next();
      lhs = conj(lhs, native_unary());
    }
    return lhs;
  }

  FormulaPtr native_unary() {
    if (is("~")) {
      next();
      return neg(native_unary());
    }
    if (is("(")) {
      next();
      FormulaPtr f = native_formula();
      expect(")");
      return f;
    }
    const Token& t = peek();
    if (t.kind == Tok::Lower && (t.text == "all" || t.text == "ex") &&
        (peek(1).kind == Tok::Upper || (peek(1).kind == Tok::Punct && peek(1).text == "["))) {
      bool all = next().text == "all";
      std::vector<TermPtr> vars;
      if (is("[")) {
        next();
        do {
          if (peek().kind != Tok::Upper) fail(peek(), "expected a variable");
          vars.push_back(bind(next().text));
        } while (is(",") && (next(), true));
        expect("]");
      } else {
        vars.push_back(bind(next().text));
      }
      expect(":");
      FormulaPtr body = native_formula();
      for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
        body = all ? forall(*it, body) : exists(*it, body);
        unbind((*it)->name);
      }
      return body;
    }
    return atomic(false);
  }

  // ---- shared ---------------------------------------------------------------

  FormulaPtr atomic(bool tptp) {
    const Token& t = peek();
    if (t.kind == Tok::Dollar) {
      next();
      FormulaPtr top = imp(atom("$t"), atom("$t"));
      if (t.text == "$true") return top;
      if (t.text == "$false") return neg(top);
      fail(t, "unsupported defined symbol");
    }
    if (t.kind == Tok::Upper || (t.kind == Tok::Lower && peek(1).kind == Tok::Punct &&
                                 (peek(1).text == "=" || peek(1).text == "!=")) ||
        t.kind == Tok::Number) {
      Token at = t;
      TermPtr lhs = term();
      if (!is("=") && !is("!=")) fail(peek(), "expected '=' after term");
      bool negated = next().text == "!=";
      TermPtr rhs = term();
      note_symbol(sig_.preds, kEquality, 2, at);
      FormulaPtr eq = atom(kEquality, {lhs, rhs});
      return negated ? neg(eq) : eq;
    }
    if (t.kind != Tok::Lower && t.kind != Tok::Quoted) fail(t, "expected a formula");
    Token at = next();
    std::vector<TermPtr> args = maybe_args();
    if (is("=") || is("!=")) {
      // Function application on the left of an equation.
      note_symbol(sig_.funs, at.text, static_cast<int>(args.size()), at);
      TermPtr lhs = make_fun(at.text, std::move(args));
      bool negated = next().text == "!=";
      TermPtr rhs = term();
      note_symbol(sig_.preds, kEquality, 2, at);
      FormulaPtr eq = atom(kEquality, {lhs, rhs});
      return negated ? neg(eq) : eq;
    }
    (void)tptp;
    note_symbol(sig_.preds, at.text, static_cast<int>(args.size()), at);
    return atom(at.text, std::move(args));
  }

  std::vector<TermPtr> maybe_args() {
    std::vector<TermPtr> args;
    if (!is("(")) return args;
    next();
    do {
      args.push_back(term());
    } while (is(",") && (next(), true));
    expect(")");
    return args;
  }

  TermPtr term() {
    const Token& t = peek();
    if (t.kind == Tok::Upper) return lookup(next().text);
    if (t.kind == Tok::Lower || t.kind == Tok::Quoted || t.kind == Tok::Number) {
      Token at = next();
      std::vector<TermPtr> args = maybe_args();
      note_symbol(sig_.funs, at.text, static_cast<int>(args.size()), at);
      return make_fun(at.text, std::move(args));
    }
    fail(t, "expected a term");
  }

  void note_symbol(std::map<std::string, int>& table, const std::string& sym, int arity, const Token& at) {
    auto [it, inserted] = table.emplace(sym, arity);
    if (!inserted && it->second != arity)
      throw ParseError(at.line, at.col,
                       "arity clash for '" + sym + "': " + std::to_string(it->second) + " and " +
                           std::to_string(arity));
  }

  TermPtr bind(const std::string& name) {
    auto v = make_var(next_var_++, name);
    scope_[name].push_back(v);
    return v;
  }

  void unbind(const std::string& name) {
    auto& s = scope_[name];
    s.pop_back();
    if (s.empty()) scope_.erase(name);
  }

  TermPtr lookup(const std::string& name) {
    auto it = scope_.find(name);
    if (it != scope_.end()) return it->second.back();
    auto f = free_.find(name);
    if (f != free_.end()) return f->second;
    auto v = make_var(next_var_++, name);
    free_.emplace(name, v);
    free_order_.push_back(v);
    return v;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int& next_var_;
  Signature& sig_;
  std::map<std::string, std::vector<TermPtr>> scope_;
  std::map<std::string, TermPtr> free_;
  std::vector<TermPtr> free_order_;
};

struct TptpContext {
  std::filesystem::path axiom_root;
  int next_var = 0;
  Signature sig;
  int depth = 0;
};

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void parse_tptp(std::string_view text, const std::filesystem::path& base_dir, TptpContext& ctx,
                Problem& out, const std::vector<std::string>* only) {
  Parser p(Lexer(text).run(), ctx.next_var, ctx.sig);
  while (!p.at_end()) {
    Token head = p.next();
    if (head.kind != Tok::Lower) p.fail(head, "expected fof or include");
    if (head.text == "include") {
      p.expect("(");
      Token file = p.next();
      if (file.kind != Tok::Quoted) p.fail(file, "expected a quoted file name");
      std::vector<std::string> names;
      bool filtered = false;
      if (p.is(",")) {
        p.next();
        p.expect("[");
        filtered = true;
        if (!p.is("]")) {
          do {
            names.push_back(p.name_token());
          } while (p.is(",") && (p.next(), true));
        }
        p.expect("]");
      }
      p.expect(")");
      p.expect(".");
      if (ctx.depth > 16) throw ParseError(head.line, head.col, "include nesting too deep");
      std::filesystem::path root = ctx.axiom_root.empty() ? base_dir : ctx.axiom_root;
      std::filesystem::path path = root / file.text;
      std::string inc;
      try {
        inc = read_file(path);
      } catch (const std::runtime_error&) {
        throw ParseError(file.line, file.col, "cannot open include file " + path.string());
      }
      ++ctx.depth;
      try {
        parse_tptp(inc, path.parent_path(), ctx, out, filtered ? &names : nullptr);
      } catch (const ParseError& e) {
        throw ParseError(file.line, file.col, "in " + file.text + ": " + e.what());
      }
      --ctx.depth;
      continue;
    }
    if (head.text != "fof") p.fail(head, "unsupported statement '" + head.text + "'");
    p.expect("(");
    std::string name = p.name_token();
    p.expect(",");
    Token role = p.next();
    if (role.kind != Tok::Lower) p.fail(role, "expected a role");
    p.expect(",");
    FormulaPtr f = p.close(p.tptp_formula());
    if (p.is(",")) {
      // Annotations are skipped up to the matching parenthesis.
      int depth = 0;
      while (!p.at_end() && !(depth == 0 && p.is(")"))) {
        if (p.is("(") || p.is("[")) ++depth;
        if (p.is(")") || p.is("]")) --depth;
        p.next();
      }
    }
    p.expect(")");
    p.expect(".");
    if (only && std::find(only->begin(), only->end(), name) == only->end()) continue;
    if (role.text == "axiom" || role.text == "hypothesis" || role.text == "lemma") {
      out.axioms.push_back(f);
    } else if (role.text == "conjecture") {
      if (out.conjecture) throw ParseError(role.line, role.col, "more than one conjecture");
      out.conjecture = f;
    } else {
      throw ParseError(role.line, role.col, "unsupported role '" + role.text + "'");
    }
  }
}

}  // namespace

bool uses_equality(const FormulaPtr& f) {
  for (const auto& [p, n] : predicates_of(f))
    if (p == kEquality && n == 2) return true;
  return false;
}

Problem parse_problem(std::string_view text, Format format, const ParseOptions& opts) {
  Problem out;
  out.name = opts.name;
  if (format == Format::Tptp) {
    TptpContext ctx;
    ctx.axiom_root = opts.axiom_root;
    parse_tptp(text, opts.base_dir, ctx, out, nullptr);
  } else {
    int next_var = 0;
    Signature sig;
    Parser p(Lexer(text).run(), next_var, sig);
    if (p.at_end()) throw ParseError(1, 1, "empty input");
    out.conjecture = p.close(p.native_formula());
    if (p.is(".")) p.next();
    if (!p.at_end()) p.fail(p.peek(), "trailing input");
  }
  for (const auto& a : out.axioms) out.uses_equality |= uses_equality(a);
  if (out.conjecture) out.uses_equality |= uses_equality(out.conjecture);
  return out;
}

Problem load_problem(const std::filesystem::path& path, Format format,
                     const std::filesystem::path& axiom_root) {
  ParseOptions opts;
  opts.name = path.stem().string();
  opts.axiom_root = axiom_root;
  opts.base_dir = path.parent_path();
  return parse_problem(read_file(path), format, opts);
}

FormulaPtr parse_native(std::string_view text) {
  Problem p = parse_problem(text, Format::Native);
  return p.conjecture;
}

Format format_for(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  if (ext == ".p" || ext == ".ax" || ext == ".tptp") return Format::Tptp;
  return Format::Native;
}

FormulaPtr assemble_goal(const Problem& p) {
  if (!p.conjecture && p.axioms.empty()) throw std::invalid_argument("empty problem");
  if (!p.conjecture) return neg(conj_all(p.axioms));
  if (p.axioms.empty()) return p.conjecture;
  return imp(conj_all(p.axioms), p.conjecture);
}

FormulaPtr add_equality_axioms(const FormulaPtr& f) {
  if (!uses_equality(f)) return f;
  VarPool pool(max_var_id(f) + 1);
  auto eq = [](TermPtr a, TermPtr b) { return atom(kEquality, {std::move(a), std::move(b)}); };
  auto close = [](const std::vector<TermPtr>& vars, FormulaPtr body) {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = forall(*it, body);
    return body;
  };

  std::vector<FormulaPtr> axioms;
  {
    auto x = pool.fresh("X");
    axioms.push_back(close({x}, eq(x, x)));
  }
  {
    auto x = pool.fresh("X"), y = pool.fresh("Y");
    axioms.push_back(close({x, y}, imp(eq(x, y), eq(y, x))));
  }
  {
    auto x = pool.fresh("X"), y = pool.fresh("Y"), z = pool.fresh("Z");
    axioms.push_back(close({x, y, z}, imp(conj(eq(x, y), eq(y, z)), eq(x, z))));
  }
  // One congruence axiom per argument position; the other positions share a
  // variable on both sides.
  auto positions = [&](const std::string& sym, int arity, bool is_pred) {
    for (int i = 0; i < arity; ++i) {
      auto x = pool.fresh("X"), y = pool.fresh("Y");
      std::vector<TermPtr> vars{x, y};
      std::vector<TermPtr> l, r;
      for (int k = 0; k < arity; ++k) {
        if (k == i) {
          l.push_back(x);
          r.push_back(y);
        } else {
          auto z = pool.fresh("Z");
          vars.push_back(z);
          l.push_back(z);
          r.push_back(z);
        }
      }
      FormulaPtr body = is_pred ? imp(atom(sym, l), atom(sym, r))
                                : eq(make_fun(sym, l), make_fun(sym, r));
      axioms.push_back(close(vars, imp(eq(x, y), body)));
    }
  };
  for (const auto& [sym, n] : functions_of(f)) positions(sym, n, false);
  for (const auto& [sym, n] : predicates_of(f))
    if (sym != kEquality) positions(sym, n, true);
  return imp(conj_all(axioms), f);
}

}  // namespace hat
