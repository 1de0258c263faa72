#pragma once

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vpc {

using Name = std::string;
using IoList = std::vector<Name>;

bool is_int_literal(std::string_view s);
bool is_identifier(std::string_view s);

// Integer literals are always constants; named constants come from a pack.
struct Constants {
  std::set<Name> named;
  bool contains(const Name& n) const { return is_int_literal(n) || named.count(n) > 0; }
};

struct Atomic {
  Name name;
  IoList in;
  IoList out;

  std::string render() const;
  bool operator==(const Atomic& o) const { return name == o.name && in == o.in && out == o.out; }
  bool operator!=(const Atomic& o) const { return !(*this == o); }
  bool operator<(const Atomic& o) const;
};

class Program {
 public:
  enum class Kind { Atomic, List, Disjunction };

  Program() : kind_(Kind::List) {}
  static Program atomic(Atomic a);
  static Program atomic(Name name, IoList in, IoList out);
  // Nested lists are flattened; a one-element list stays a list.
  static Program list(std::vector<Program> items);
  static Program disjunction(Program left, Program right);

  Kind kind() const { return kind_; }
  bool is_atomic() const { return kind_ == Kind::Atomic; }
  bool is_list() const { return kind_ == Kind::List; }
  bool is_disjunction() const { return kind_ == Kind::Disjunction; }

  const Atomic& atom() const;
  const std::vector<Program>& items() const;
  const Program& left() const;
  const Program& right() const;

  // Element view: a list yields its items, anything else yields itself.
  std::vector<Program> elements() const;
  // All atomic statements in order, descending into disjunction operands.
  std::vector<Atomic> atoms() const;

  std::string render() const;
  bool operator==(const Program& o) const { return render() == o.render(); }
  bool operator!=(const Program& o) const { return !(*this == o); }

 private:
  Kind kind_;
  Atomic atom_;
  std::vector<Program> items_;
  std::shared_ptr<const Program> left_, right_;
};

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(const std::string& msg, int l, int c)
      : std::runtime_error(msg + " at " + std::to_string(l) + ":" + std::to_string(c)), line(l), column(c) {}
};

struct Token {
  enum class Kind { LBracket, RBracket, LParen, RParen, Bar, Word, End };
  Kind kind;
  std::string text;
  int line = 1;
  int column = 1;
};

std::vector<Token> tokenize(std::string_view text);

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}
  explicit TokenStream(std::string_view text) : toks_(tokenize(text)) {}
  const Token& peek(size_t ahead = 0) const;
  Token next();
  bool at_end() const { return peek().kind == Token::Kind::End; }
  void expect(Token::Kind k, const char* what);
  [[noreturn]] void fail(const std::string& msg) const;

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

IoList parse_io_list(TokenStream& ts);
Atomic parse_atomic(TokenStream& ts);
// A program element: atomic statement, bracketed list or parenthesised disjunction.
Program parse_program_element(TokenStream& ts);
Program parse_program(TokenStream& ts);
Program parse_program(std::string_view text);
Atomic parse_atomic(std::string_view text);
std::vector<Atomic> parse_atomic_sequence(std::string_view text);

std::string render_io(const IoList& l);
std::string render_atoms(const std::vector<Atomic>& atoms);

// List algebra on name lists.
bool sublist(const IoList& b, const IoList& a);
IoList list_intersection(const IoList& a, const IoList& b);
IoList dedup(const IoList& a);
IoList list_subtract(const IoList& a, const IoList& b);
IoList substitute_at(const IoList& a, size_t pos, const Name& value);
IoList concat(const IoList& a, const IoList& b);

// List algebra on program elements, compared by rendering.
bool sublist(const Program& b, const Program& a);
Program list_intersection(const Program& a, const Program& b);
Program dedup(const Program& a);
Program list_subtract(const Program& a, const Program& b);

// Fresh names a..z, a1..z1, a2..z2, ... skipping used names and constants.
std::vector<Name> fresh_names(const std::set<Name>& used, size_t count, const Constants& consts = {});

std::set<Name> names_in(const std::vector<Atomic>& atoms);

}  // namespace vpc
