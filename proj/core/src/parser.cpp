#include "slddb/parser.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <vector>

namespace slddb {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message), line_(line), column_(column) {}

namespace {

enum class Tok { Name, Var, Int, Quoted, LParen, RParen, Comma, Dot, If, QueryStart, Neq, Directive, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
  std::uint32_t arity = 0;  // directives only
};

bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool plain_symbol(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!is_ident_char(c)) return false;
  return true;
}

bool plain_integer(std::string_view s) {
  std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

std::string quote(std::string_view content) {
  std::string out = "'";
  for (char c : content) {
    if (c == '\'') out += '\'';
    out += c;
  }
  return out + "'";
}

// Reserved spelling of normalized variables and parameters: V<n> / C<n>, n >= 1.
std::optional<std::pair<char, std::uint32_t>> reserved_name(std::string_view name) {
  if (name.size() < 2 || (name[0] != 'V' && name[0] != 'C') || name[1] == '0') return std::nullopt;
  std::uint32_t index = 0;
  auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), index);
  if (ec != std::errc{} || ptr != name.data() + name.size()) return std::nullopt;
  return std::pair{name[0], index};
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    Token tok{Tok::End, "", line_, col_};
    if (pos_ >= text_.size()) return tok;
    const char c = text_[pos_];
    if (c == '%') {
      if (auto d = directive()) return *d;
      while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      return next();
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      tok.kind = Tok::Name;
      tok.text = ident();
      return tok;
    }
    if (std::isupper(static_cast<unsigned char>(c))) {
      tok.kind = Tok::Var;
      tok.text = ident();
      return tok;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      tok.kind = Tok::Int;
      tok.text += c;
      advance();
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        tok.text += text_[pos_];
        advance();
      }
      return tok;
    }
    if (c == '\'') {
      advance();
      tok.kind = Tok::Quoted;
      for (;;) {
        if (pos_ >= text_.size()) throw ParseError("unterminated quoted constant", tok.line, tok.column);
        char q = text_[pos_];
        advance();
        if (q == '\'') {
          if (pos_ < text_.size() && text_[pos_] == '\'') {
            tok.text += '\'';
            advance();
            continue;
          }
          break;
        }
        if (q == '\n') throw ParseError("newline in quoted constant", tok.line, tok.column);
        tok.text += q;
      }
      return tok;
    }
    auto single = [&](Tok k, std::size_t len) {
      tok.kind = k;
      tok.text = std::string(text_.substr(pos_, len));
      for (std::size_t i = 0; i < len; ++i) advance();
      return tok;
    };
    if (c == '(') return single(Tok::LParen, 1);
    if (c == ')') return single(Tok::RParen, 1);
    if (c == ',') return single(Tok::Comma, 1);
    if (c == '.') return single(Tok::Dot, 1);
    if (text_.substr(pos_, 2) == ":-") return single(Tok::If, 2);
    if (text_.substr(pos_, 2) == "?-") return single(Tok::QueryStart, 2);
    if (text_.substr(pos_, 2) == "!=") return single(Tok::Neq, 2);
    throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  std::string ident() {
    std::string out;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) {
      out += text_[pos_];
      advance();
    }
    return out;
  }

  // "% edb name/arity" with nothing else on the line but whitespace.
  std::optional<Token> directive() {
    auto eol = text_.find('\n', pos_);
    std::string_view line = text_.substr(pos_ + 1, eol == std::string_view::npos ? std::string_view::npos : eol - pos_ - 1);
    std::size_t i = 0;
    auto ws = [&] {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    };
    ws();
    if (line.substr(i, 3) != "edb" || i + 3 >= line.size() || !std::isspace(static_cast<unsigned char>(line[i + 3])))
      return std::nullopt;
    i += 3;
    ws();
    std::size_t name_begin = i;
    while (i < line.size() && is_ident_char(line[i])) ++i;
    std::string_view name = line.substr(name_begin, i - name_begin);
    ws();
    if (!plain_symbol(name) || i >= line.size() || line[i] != '/')
      throw ParseError("malformed edb directive", line_, col_);
    ++i;
    ws();
    std::uint32_t arity = 0;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), arity);
    if (ec != std::errc{}) throw ParseError("malformed edb directive", line_, col_);
    i = static_cast<std::size_t>(ptr - line.data());
    ws();
    if (i != line.size()) throw ParseError("trailing text after edb directive", line_, col_);
    Token tok{Tok::Directive, std::string(name), line_, col_, arity};
    while (pos_ < text_.size() && text_[pos_] != '\n') advance();
    return tok;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& options) : lexer_(text), options_(options) { tok_ = lexer_.next(); }

  Program program() {
    Program prog;
    while (tok_.kind != Tok::End) {
      if (tok_.kind == Tok::Directive) {
        auto pred = Predicate::of(tok_.text, tok_.arity);
        check_name(pred, tok_);
        prog.edb.insert(pred);
        shift();
        continue;
      }
      prog.rules.push_back(rule());
    }
    return prog;
  }

  Query query() {
    if (tok_.kind == Tok::QueryStart) shift();
    std::vector<Literal> lits;
    lits.push_back(atom());
    while (tok_.kind == Tok::Comma) {
      shift();
      lits.push_back(atom());
    }
    if (tok_.kind == Tok::Dot) shift();
    expect_end();
    return Query::from_literals(std::move(lits));
  }

  std::vector<Literal> facts() {
    std::vector<Literal> out;
    while (tok_.kind != Tok::End) {
      if (tok_.kind == Tok::Directive) {
        shift();
        continue;
      }
      auto start = tok_;
      out.push_back(atom());
      if (!out.back().is_ground()) throw ParseError("fact is not ground", start.line, start.column);
      expect(Tok::Dot, "'.'");
    }
    return out;
  }

  Goal conjunction() {
    Goal g;
    g.literals.push_back(atom());
    while (tok_.kind == Tok::Comma) {
      shift();
      g.literals.push_back(atom());
    }
    if (tok_.kind == Tok::Dot) shift();
    expect_end();
    return g;
  }

  Literal single_atom() {
    auto lit = atom();
    if (tok_.kind == Tok::Dot) shift();
    expect_end();
    return lit;
  }

  Term single_term() {
    auto t = term();
    expect_end();
    return t;
  }

 private:
  Rule rule() {
    Rule r;
    r.head = atom();
    if (tok_.kind == Tok::If) {
      shift();
      body_item(r);
      while (tok_.kind == Tok::Comma) {
        shift();
        body_item(r);
      }
    }
    expect(Tok::Dot, "'.'");
    return r;
  }

  void body_item(Rule& r) {
    if (tok_.kind == Tok::Name) {
      r.body.push_back(atom());
      return;
    }
    auto start = tok_;
    auto lhs = term();
    if (tok_.kind != Tok::Neq) throw ParseError("expected atom", start.line, start.column);
    if (!options_.extended) throw ParseError("'!=' conditions are only allowed in compiled rules", tok_.line, tok_.column);
    shift();
    r.guards.push_back({lhs, term()});
  }

  Literal atom() {
    if (tok_.kind != Tok::Name) error("expected predicate name");
    auto start = tok_;
    std::string name = tok_.text;
    shift();
    std::vector<Term> args;
    if (tok_.kind == Tok::LParen) {
      shift();
      args.push_back(term());
      while (tok_.kind == Tok::Comma) {
        shift();
        args.push_back(term());
      }
      expect(Tok::RParen, "')'");
    }
    auto pred = Predicate::of(name, static_cast<std::uint32_t>(args.size()));
    check_name(pred, start);
    return {pred, std::move(args)};
  }

  Term term() {
    auto t = tok_;
    switch (t.kind) {
      case Tok::Name:
        shift();
        return Term::constant(t.text);
      case Tok::Int:
        shift();
        return parse_constant(t.text);
      case Tok::Quoted:
        shift();
        return plain_symbol(t.text) ? Term::constant(t.text) : Term::constant(quote(t.text));
      case Tok::Var: {
        shift();
        if (auto reserved = reserved_name(t.text)) {
          if (!options_.internal_terms)
            throw ParseError("variable name '" + t.text + "' is reserved", t.line, t.column);
          return reserved->first == 'V' ? Term::normalized(reserved->second) : Term::parameter(reserved->second);
        }
        return Term::variable(t.text);
      }
      default:
        error("expected term");
    }
  }

  void check_name(Predicate pred, const Token& at) {
    if (is_answer(pred) && !options_.extended)
      throw ParseError("predicate 'answer' is reserved", at.line, at.column);
    auto [it, inserted] = arities_.emplace(pred.name, pred.arity);
    if (!inserted && it->second != pred.arity)
      throw ParseError("arity conflict for '" + std::string(pred.name_text()) + "': " + std::to_string(it->second) +
                           " vs " + std::to_string(pred.arity),
                       at.line, at.column);
  }

  void shift() { tok_ = lexer_.next(); }

  void expect(Tok kind, const char* what) {
    if (tok_.kind != kind) error(std::string("expected ") + what);
    shift();
  }

  void expect_end() {
    if (tok_.kind != Tok::End) error("unexpected trailing input");
  }

  [[noreturn]] void error(const std::string& message) {
    std::string found = tok_.kind == Tok::End ? "end of input" : "'" + tok_.text + "'";
    throw ParseError(message + ", found " + found, tok_.line, tok_.column);
  }

  Lexer lexer_;
  ParseOptions options_;
  Token tok_;
  std::map<std::uint32_t, std::uint32_t> arities_;
};

}  // namespace

Program parse_program(std::string_view text, const ParseOptions& options) { return Parser(text, options).program(); }

Query parse_query(std::string_view text, const ParseOptions& options) { return Parser(text, options).query(); }

Database parse_facts(std::string_view text, const Program& program) {
  Database db;
  for (auto& fact : Parser(text, {}).facts()) {
    if (!program.is_edb(fact.pred)) throw Error("fact " + to_string(fact) + " uses undeclared EDB predicate " + to_string(fact.pred));
    db.add(fact);
  }
  return db;
}

Term parse_constant(std::string_view text) {
  if (plain_integer(text)) {
    long long v = 0;
    std::from_chars(text.data(), text.data() + text.size(), v);
    return Term::integer(v);
  }
  if (text.size() >= 2 && text.front() == '\'' && text.back() == '\'')
    return Parser(text, {}).single_term();
  if (plain_symbol(text)) return Term::constant(text);
  return Term::constant(quote(text));
}

void load_csv(std::string_view text, Predicate pred, Database& db) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    Tuple row;
    std::size_t start = 0;
    for (;;) {
      auto comma = line.find(',', start);
      auto cell = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      auto b = cell.find_first_not_of(" \t");
      auto e = cell.find_last_not_of(" \t");
      cell = b == std::string_view::npos ? std::string_view{} : cell.substr(b, e - b + 1);
      if (cell.empty()) throw ParseError("empty CSV cell", line_no, start + 1);
      row.push_back(parse_constant(cell));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (row.size() != pred.arity)
      throw ParseError("CSV row has " + std::to_string(row.size()) + " columns, " + to_string(pred) + " expects " +
                           std::to_string(pred.arity),
                       line_no, 1);
    db.add(pred, std::move(row));
  }
}

Goal parse_goal(std::string_view text) { return Parser(text, {.internal_terms = true, .extended = true}).conjunction(); }

Literal parse_literal(std::string_view text, const ParseOptions& options) { return Parser(text, options).single_atom(); }

}  // namespace slddb
