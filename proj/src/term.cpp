#include "vpc/term.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace vpc {

bool is_int_literal(std::string_view s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::string render_io(const IoList& l) {
  if (l.empty()) return "[ ]";
  std::string s = "[";
  for (size_t i = 0; i < l.size(); ++i) {
    if (i) s += ' ';
    s += l[i];
  }
  return s + "]";
}

std::string Atomic::render() const { return name + " " + render_io(in) + " " + render_io(out); }

bool Atomic::operator<(const Atomic& o) const {
  if (name != o.name) return name < o.name;
  if (in != o.in) return in < o.in;
  return out < o.out;
}

std::string render_atoms(const std::vector<Atomic>& atoms) {
  std::string s;
  for (size_t i = 0; i < atoms.size(); ++i) {
    if (i) s += ' ';
    s += atoms[i].render();
  }
  return s;
}

Program Program::atomic(Atomic a) {
  Program p;
  p.kind_ = Kind::Atomic;
  p.atom_ = std::move(a);
  return p;
}

Program Program::atomic(Name name, IoList in, IoList out) { return atomic(Atomic{std::move(name), std::move(in), std::move(out)}); }

Program Program::list(std::vector<Program> items) {
  Program p;
  p.kind_ = Kind::List;
  for (auto& it : items) {
    if (it.is_list())
      for (auto& sub : it.items_) p.items_.push_back(sub);
    else
      p.items_.push_back(std::move(it));
  }
  return p;
}

Program Program::disjunction(Program left, Program right) {
  Program p;
  p.kind_ = Kind::Disjunction;
  p.left_ = std::make_shared<const Program>(std::move(left));
  p.right_ = std::make_shared<const Program>(std::move(right));
  return p;
}

const Atomic& Program::atom() const {
  if (kind_ != Kind::Atomic) throw std::logic_error("not an atomic program");
  return atom_;
}

const std::vector<Program>& Program::items() const {
  if (kind_ != Kind::List) throw std::logic_error("not a program list");
  return items_;
}

const Program& Program::left() const {
  if (kind_ != Kind::Disjunction) throw std::logic_error("not a disjunction");
  return *left_;
}

const Program& Program::right() const {
  if (kind_ != Kind::Disjunction) throw std::logic_error("not a disjunction");
  return *right_;
}

std::vector<Program> Program::elements() const {
  if (kind_ == Kind::List) return items_;
  return {*this};
}

std::vector<Atomic> Program::atoms() const {
  std::vector<Atomic> out;
  switch (kind_) {
    case Kind::Atomic: out.push_back(atom_); break;
    case Kind::List:
      for (const auto& it : items_) {
        auto sub = it.atoms();
        out.insert(out.end(), sub.begin(), sub.end());
      }
      break;
    case Kind::Disjunction: {
      out = left_->atoms();
      auto r = right_->atoms();
      out.insert(out.end(), r.begin(), r.end());
      break;
    }
  }
  return out;
}

namespace {
std::string render_element(const Program& p);

std::string render_operand(const Program& p) {
  if (p.is_list()) return "[" + render_element(p) + "]";
  return render_element(p);
}

std::string render_element(const Program& p) {
  switch (p.kind()) {
    case Program::Kind::Atomic: return p.atom().render();
    case Program::Kind::List: {
      std::string s;
      for (size_t i = 0; i < p.items().size(); ++i) {
        if (i) s += ' ';
        const auto& it = p.items()[i];
        s += it.is_disjunction() ? "(" + render_element(it) + ")" : render_element(it);
      }
      return s;
    }
    case Program::Kind::Disjunction: return render_operand(p.left()) + " | " + render_operand(p.right());
  }
  return {};
}
}  // namespace

std::string Program::render() const {
  if (kind_ == Kind::List) return "[" + render_element(*this) + "]";
  return render_element(*this);
}

// tokenizer

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Token::Kind k, std::string t, int l, int c) { out.push_back(Token{k, std::move(t), l, c}); };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    switch (c) {
      case '[': push(Token::Kind::LBracket, "[", line, col); break;
      case ']': push(Token::Kind::RBracket, "]", line, col); break;
      case '(': push(Token::Kind::LParen, "(", line, col); break;
      case ')': push(Token::Kind::RParen, ")", line, col); break;
      case '|': push(Token::Kind::Bar, "|", line, col); break;
      default: {
        int startc = col;
        size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && std::string_view("[]()|#").find(text[j]) == std::string_view::npos) ++j;
        push(Token::Kind::Word, std::string(text.substr(i, j - i)), line, startc);
        col += static_cast<int>(j - i);
        i = j;
        continue;
      }
    }
    ++i;
    ++col;
  }
  out.push_back(Token{Token::Kind::End, "", line, col});
  return out;
}

const Token& TokenStream::peek(size_t ahead) const {
  size_t k = std::min(pos_ + ahead, toks_.size() - 1);
  return toks_[k];
}

Token TokenStream::next() {
  Token t = peek();
  if (pos_ < toks_.size() - 1) ++pos_;
  return t;
}

void TokenStream::fail(const std::string& msg) const {
  const Token& t = peek();
  std::string got = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
  throw ParseError(msg + ", got " + got, t.line, t.column);
}

void TokenStream::expect(Token::Kind k, const char* what) {
  if (peek().kind != k) fail(std::string("expected ") + what);
  next();
}

IoList parse_io_list(TokenStream& ts) {
  ts.expect(Token::Kind::LBracket, "'['");
  IoList l;
  while (ts.peek().kind == Token::Kind::Word) {
    const auto& w = ts.peek().text;
    if (!is_identifier(w) && !is_int_literal(w)) ts.fail("expected variable name or constant");
    l.push_back(ts.next().text);
  }
  ts.expect(Token::Kind::RBracket, "']' closing I/O list");
  return l;
}

Atomic parse_atomic(TokenStream& ts) {
  if (ts.peek().kind != Token::Kind::Word || !is_identifier(ts.peek().text)) ts.fail("expected program name");
  Atomic a;
  a.name = ts.next().text;
  a.in = parse_io_list(ts);
  a.out = parse_io_list(ts);
  return a;
}

namespace {
Program parse_operand(TokenStream& ts);

Program parse_items_until(TokenStream& ts, Token::Kind closer) {
  std::vector<Program> items;
  while (ts.peek().kind != closer) {
    if (ts.at_end()) ts.fail("unterminated program list");
    items.push_back(parse_program_element(ts));
  }
  return Program::list(std::move(items));
}

Program parse_operand(TokenStream& ts) {
  if (ts.peek().kind == Token::Kind::LBracket) {
    ts.next();
    Program p = parse_items_until(ts, Token::Kind::RBracket);
    ts.next();
    return p;
  }
  if (ts.peek().kind == Token::Kind::LParen) {
    ts.next();
    Program p = parse_operand(ts);
    if (ts.peek().kind == Token::Kind::Bar) {
      ts.next();
      p = Program::disjunction(std::move(p), parse_operand(ts));
    }
    ts.expect(Token::Kind::RParen, "')'");
    return p;
  }
  return Program::atomic(parse_atomic(ts));
}
}  // namespace

Program parse_program_element(TokenStream& ts) {
  if (ts.peek().kind == Token::Kind::LParen) {
    ts.next();
    Program l = parse_operand(ts);
    ts.expect(Token::Kind::Bar, "'|'");
    Program r = parse_operand(ts);
    ts.expect(Token::Kind::RParen, "')'");
    return Program::disjunction(std::move(l), std::move(r));
  }
  return parse_operand(ts);
}

Program parse_program(TokenStream& ts) {
  Program p = parse_operand(ts);
  if (ts.peek().kind == Token::Kind::Bar) {
    ts.next();
    p = Program::disjunction(std::move(p), parse_operand(ts));
  }
  return p;
}

Program parse_program(std::string_view text) {
  TokenStream ts(text);
  Program p = parse_program(ts);
  if (!ts.at_end()) ts.fail("trailing input after program");
  return p;
}

Atomic parse_atomic(std::string_view text) {
  TokenStream ts(text);
  Atomic a = parse_atomic(ts);
  if (!ts.at_end()) ts.fail("trailing input after statement");
  return a;
}

std::vector<Atomic> parse_atomic_sequence(std::string_view text) {
  TokenStream ts(text);
  std::vector<Atomic> out;
  while (!ts.at_end()) out.push_back(parse_atomic(ts));
  return out;
}

// list algebra

bool sublist(const IoList& b, const IoList& a) {
  std::unordered_set<Name> s(a.begin(), a.end());
  return std::all_of(b.begin(), b.end(), [&](const Name& n) { return s.count(n) > 0; });
}

IoList list_intersection(const IoList& a, const IoList& b) {
  std::unordered_set<Name> s(b.begin(), b.end());
  IoList out;
  for (const auto& n : a)
    if (s.count(n)) out.push_back(n);
  return dedup(out);
}

IoList dedup(const IoList& a) {
  std::unordered_set<Name> seen;
  IoList out;
  for (const auto& n : a)
    if (seen.insert(n).second) out.push_back(n);
  return out;
}

IoList list_subtract(const IoList& a, const IoList& b) {
  std::unordered_set<Name> s(b.begin(), b.end());
  IoList out;
  for (const auto& n : a)
    if (!s.count(n)) out.push_back(n);
  return out;
}

IoList substitute_at(const IoList& a, size_t pos, const Name& value) {
  IoList out = a;
  if (pos >= out.size()) throw std::out_of_range("substitution position");
  out[pos] = value;
  return out;
}

IoList concat(const IoList& a, const IoList& b) {
  IoList out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

namespace {
std::vector<std::string> rendered(const Program& p) {
  std::vector<std::string> out;
  for (const auto& e : p.elements()) out.push_back(e.render());
  return out;
}

Program select(const Program& a, const std::vector<bool>& keep) {
  std::vector<Program> out;
  auto els = a.elements();
  for (size_t i = 0; i < els.size(); ++i)
    if (keep[i]) out.push_back(els[i]);
  return Program::list(std::move(out));
}
}  // namespace

bool sublist(const Program& b, const Program& a) { return sublist(rendered(b), rendered(a)); }

Program list_intersection(const Program& a, const Program& b) {
  auto ra = rendered(a);
  auto rb = rendered(b);
  std::unordered_set<std::string> s(rb.begin(), rb.end()), seen;
  std::vector<bool> keep(ra.size());
  for (size_t i = 0; i < ra.size(); ++i) keep[i] = s.count(ra[i]) && seen.insert(ra[i]).second;
  return select(a, keep);
}

Program dedup(const Program& a) {
  auto ra = rendered(a);
  std::unordered_set<std::string> seen;
  std::vector<bool> keep(ra.size());
  for (size_t i = 0; i < ra.size(); ++i) keep[i] = seen.insert(ra[i]).second;
  return select(a, keep);
}

Program list_subtract(const Program& a, const Program& b) {
  auto ra = rendered(a);
  auto rb = rendered(b);
  std::unordered_set<std::string> s(rb.begin(), rb.end());
  std::vector<bool> keep(ra.size());
  for (size_t i = 0; i < ra.size(); ++i) keep[i] = !s.count(ra[i]);
  return select(a, keep);
}

std::vector<Name> fresh_names(const std::set<Name>& used, size_t count, const Constants& consts) {
  std::vector<Name> out;
  for (int round = 0; out.size() < count; ++round) {
    for (char c = 'a'; c <= 'z' && out.size() < count; ++c) {
      Name n(1, c);
      if (round > 0) n += std::to_string(round);
      if (!used.count(n) && !consts.contains(n)) out.push_back(n);
    }
  }
  return out;
}

std::set<Name> names_in(const std::vector<Atomic>& atoms) {
  std::set<Name> s;
  for (const auto& a : atoms) {
    s.insert(a.in.begin(), a.in.end());
    s.insert(a.out.begin(), a.out.end());
  }
  return s;
}

}  // namespace vpc
