#include "vpc/proof.hpp"

#include <sstream>

namespace vpc {

std::string Connection::render() const {
  if (!bracketed && lines.empty()) return label;
  std::string s = label + " [";
  for (size_t i = 0; i < lines.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(lines[i]);
  }
  return s + "]";
}

std::string render_proof_line(const ProofLine& l) {
  std::string num = std::to_string(l.label);
  std::string s = std::string(num.size() < 3 ? 3 - num.size() : 0, ' ') + num + " ";
  std::string st = l.is_false ? ":false" : l.statement.render();
  if (l.split) st += " *";
  if (l.connections.empty()) return s + st;
  s += st;
  s += std::string(st.size() < 25 ? 25 - st.size() : 1, ' ');
  for (size_t i = 0; i < l.connections.size(); ++i) {
    if (i) s += ' ';
    s += l.connections[i].render();
  }
  return s;
}

namespace {
bool is_number(const std::string& s) { return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos; }

std::vector<Connection> connections_from(TokenStream& ts) {
  std::vector<Connection> out;
  while (!ts.at_end()) {
    Connection c;
    if (ts.peek().kind != Token::Kind::Word || !is_identifier(ts.peek().text)) ts.fail("expected connection label");
    c.label = ts.next().text;
    if (ts.peek().kind == Token::Kind::Word && is_number(ts.peek().text)) c.label += " " + ts.next().text;
    if (ts.peek().kind == Token::Kind::LBracket) {
      ts.next();
      while (ts.peek().kind == Token::Kind::Word) {
        if (!is_number(ts.peek().text)) ts.fail("expected line number");
        c.lines.push_back(std::stoi(ts.next().text));
      }
      ts.expect(Token::Kind::RBracket, "']'");
    } else {
      c.bracketed = false;
    }
    out.push_back(std::move(c));
  }
  return out;
}
}  // namespace

std::vector<Connection> parse_connections(std::string_view text) {
  TokenStream ts(text);
  return connections_from(ts);
}

ProofLine parse_proof_line(const std::string& text, int line_no) {
  try {
    TokenStream ts(text);
    ProofLine l;
    if (ts.peek().kind != Token::Kind::Word || !is_number(ts.peek().text)) ts.fail("expected line label");
    l.label = std::stoi(ts.next().text);
    if (ts.peek().kind == Token::Kind::Word && ts.peek().text == ":false") {
      ts.next();
      l.is_false = true;
    } else {
      l.statement = parse_atomic(ts);
    }
    if (ts.peek().kind == Token::Kind::Word && ts.peek().text == "*") {
      ts.next();
      l.split = true;
    }
    l.connections = connections_from(ts);
    if (l.is_false && l.connections.empty()) ts.fail(":false line without connection");
    return l;
  } catch (const ParseError& e) {
    std::string msg = e.what();
    throw ParseError(msg.substr(0, msg.rfind(" at ")), line_no, e.column);
  }
}

std::string TheoremStatement::render() const {
  std::string c = conclusion ? conclusion->render() : ":false";
  if (premise.empty()) return "[" + c + "]";
  return "[[" + render_atoms(premise) + "] " + c + "]";
}

TheoremStatement parse_theorem_statement(const std::string& text) {
  TokenStream ts(text);
  TheoremStatement st;
  ts.expect(Token::Kind::LBracket, "'['");
  if (ts.peek().kind == Token::Kind::LBracket) {
    ts.next();
    while (ts.peek().kind != Token::Kind::RBracket) {
      if (ts.at_end()) ts.fail("unterminated premise");
      st.premise.push_back(parse_atomic(ts));
    }
    ts.next();
  }
  if (ts.peek().kind == Token::Kind::Word && ts.peek().text == ":false") {
    ts.next();
  } else {
    st.conclusion = parse_atomic(ts);
  }
  ts.expect(Token::Kind::RBracket, "']'");
  if (!ts.at_end()) ts.fail("trailing input after statement");
  return st;
}

std::vector<std::string> wrap_statement(const std::string& s, size_t width) {
  if (s.size() <= width) return {s};
  // break only in front of an atomic statement name (a word followed by " [")
  std::vector<size_t> starts{0};
  for (size_t i = 1; i < s.size(); ++i) {
    if ((s[i - 1] != ' ' && s[i - 1] != '[') || s[i] == ' ' || s[i] == '[' || s[i] == ']') continue;
    size_t e = s.find_first_of(" []", i);
    if (e != std::string::npos && s[e] == ' ' && e + 1 < s.size() && s[e + 1] == '[' && s[i - 1] == ' ') starts.push_back(i);
  }
  std::vector<std::string> chunks;
  for (size_t k = 0; k < starts.size(); ++k) {
    size_t e = k + 1 < starts.size() ? starts[k + 1] - 1 : s.size();
    chunks.push_back(s.substr(starts[k], e - starts[k]));
  }
  std::vector<std::string> out;
  std::string line;
  for (const auto& c : chunks) {
    std::string candidate = line.empty() ? c : line + " " + c;
    size_t lim = out.empty() ? width : width - 1;
    if (!line.empty() && candidate.size() > lim) {
      out.push_back(out.empty() ? line : " " + line);
      line = c;
    } else {
      line = candidate;
    }
  }
  if (!line.empty()) out.push_back(out.empty() ? line : " " + line);
  return out;
}

ProofFile parse_proof_file(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::istringstream is(text);
    std::string l;
    while (std::getline(is, l)) lines.push_back(l);
  }
  ProofFile f;
  if (lines.empty()) throw ParseError("empty proof file", 1, 1);
  {
    std::istringstream hs(lines[0]);
    std::string w1, w2, w3;
    hs >> f.kind_word >> w2 >> w3;
    if ((f.kind_word != "Theorem" && f.kind_word != "Lemma") || w3.empty() || w3.back() != '.') throw ParseError("expected 'Theorem <label>.' header", 1, 1);
    f.label = w2 + " " + w3.substr(0, w3.size() - 1);
  }
  size_t i = 1;
  std::string joined;
  while (i < lines.size() && !lines[i].empty()) {
    f.header_lines.push_back(lines[i]);
    joined += (joined.empty() ? "" : " ") + lines[i];
    ++i;
  }
  try {
    f.statement = parse_theorem_statement(joined);
  } catch (const ParseError& e) {
    std::string msg = e.what();
    throw ParseError(msg.substr(0, msg.rfind(" at ")), 2, e.column);
  }
  ++i;
  if (i >= lines.size() || lines[i] != "Proof.") throw ParseError("expected 'Proof.'", static_cast<int>(i + 1), 1);
  ++i;
  for (; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    f.lines.push_back(parse_proof_line(lines[i], static_cast<int>(i + 1)));
  }
  return f;
}

std::string render_proof_file(const ProofFile& f) {
  std::string out = f.kind_word + " " + f.label + ".\n";
  std::string canon = f.statement.render();
  std::string joined;
  for (const auto& h : f.header_lines) joined += (joined.empty() ? "" : " ") + h;
  // keep the original layout whenever it carries the same statement
  bool keep = !f.header_lines.empty();
  if (keep) {
    try {
      keep = parse_theorem_statement(joined).render() == canon;
    } catch (const ParseError&) {
      keep = false;
    }
  }
  for (const auto& h : keep ? f.header_lines : wrap_statement(canon)) out += h + "\n";
  out += "\nProof.\n";
  for (const auto& l : f.lines) out += render_proof_line(l) + "\n";
  return out;
}

}  // namespace vpc
