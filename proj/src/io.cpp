#include "schemaforge/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace schemaforge {

Term rdf_type() { return Term::iri(std::string(ns::rdf) + "type"); }

PrefixMap::PrefixMap() {
  entries_ = {{"rdf", std::string(ns::rdf)},
              {"rdfs", std::string(ns::rdfs)},
              {"sh", std::string(ns::sh)},
              {"xsd", std::string(ns::xsd)}};
}

void PrefixMap::declare(const std::string& prefix, const std::string& iri) {
  for (auto& [p, n] : entries_) {
    if (p == prefix) {
      n = iri;
      return;
    }
  }
  entries_.emplace_back(prefix, iri);
}

const std::string* PrefixMap::lookup(const std::string& prefix) const {
  for (const auto& [p, n] : entries_)
    if (p == prefix) return &n;
  return nullptr;
}

namespace {

bool local_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

bool valid_local(std::string_view local) {
  if (local.empty()) return true;
  if (local.front() == '.' || local.back() == '.' || local.front() == '-') return false;
  return std::all_of(local.begin(), local.end(), local_char);
}

bool valid_prefix(std::string_view prefix) {
  if (prefix.empty()) return true;
  if (prefix == "_") return true;
  if (!std::isalpha(static_cast<unsigned char>(prefix.front()))) return false;
  return std::all_of(prefix.begin(), prefix.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

std::string escape_literal(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

std::string render_term(const PrefixMap& map, const Term& t, std::set<std::string>* used) {
  switch (t.kind()) {
    case TermKind::variable: return "?" + t.lexical();
    case TermKind::literal: return "\"" + escape_literal(t.lexical()) + "\"";
    case TermKind::iri: break;
  }
  const std::string& lex = t.lexical();
  const std::pair<std::string, std::string>* best = nullptr;
  for (const auto& entry : map.entries()) {
    const auto& ns_iri = entry.second;
    if (ns_iri.empty() || lex.size() < ns_iri.size()) continue;
    if (lex.compare(0, ns_iri.size(), ns_iri) != 0) continue;
    if (!valid_local(std::string_view(lex).substr(ns_iri.size()))) continue;
    if (!best || ns_iri.size() > best->second.size()) best = &entry;
  }
  if (best) {
    if (used) used->insert(best->first);
    return best->first + ":" + lex.substr(best->second.size());
  }
  // Undeclared prefixed names were kept verbatim by the parser.
  const auto colon = lex.find(':');
  if (colon != std::string::npos && lex.find("//") == std::string::npos) {
    const std::string prefix = lex.substr(0, colon);
    const std::string_view local = std::string_view(lex).substr(colon + 1);
    const bool local_ok =
        (local.empty() || (local.back() != '.' && local.front() != '.')) &&
        std::all_of(local.begin(), local.end(), [](char c) { return local_char(c) || c == ':'; });
    if (valid_prefix(prefix) && local_ok && !map.lookup(prefix)) return lex;
  }
  return "<" + lex + ">";
}

// ---------------------------------------------------------------- lexer

enum class Tok { end, iri, pname, literal, var, punct, word, name_comment };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  std::size_t line = 0;
};

class Lexer {
 public:
  Lexer(std::string_view text, const std::string& file) : text_(text), file_(file) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size()) break;
      const char c = text_[pos_];
      if (c == '#') {
        comment(out);
      } else if (c == '<') {
        out.push_back(iri());
      } else if (c == '"' || c == '\'') {
        out.push_back(literal());
      } else if (c == '?' || c == '$') {
        out.push_back(variable());
      } else if (std::string_view("{}()[];,").find(c) != std::string_view::npos) {
        out.push_back({Tok::punct, std::string(1, c), line_});
        ++pos_;
      } else {
        word(out);
      }
    }
    out.push_back({Tok::end, "", line_});
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(file_, line_, msg); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  void comment(std::vector<Token>& out) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
    std::string body(text_.substr(start + 1, pos_ - start - 1));
    const auto first = body.find_first_not_of(" \t");
    if (first == std::string::npos) return;
    body = body.substr(first);
    if (body.rfind("name:", 0) == 0) {
      std::string name = body.substr(5);
      name.erase(0, name.find_first_not_of(" \t"));
      name.erase(name.find_last_not_of(" \t\r") + 1);
      if (!name.empty()) out.push_back({Tok::name_comment, name, line_});
    }
  }

  Token iri() {
    const std::size_t line = line_;
    const std::size_t close = text_.find('>', pos_);
    if (close == std::string_view::npos) fail("unterminated IRI");
    std::string body(text_.substr(pos_ + 1, close - pos_ - 1));
    if (body.find_first_of(" \t\n") != std::string::npos) fail("whitespace inside IRI <" + body + ">");
    if (body.empty()) fail("empty IRI");
    pos_ = close + 1;
    return {Tok::iri, body, line};
  }

  Token literal() {
    const std::size_t line = line_;
    const char quote = text_[pos_++];
    std::string value;
    for (;;) {
      if (pos_ >= text_.size()) fail("unterminated literal");
      const char c = text_[pos_++];
      if (c == quote) break;
      if (c == '\n') fail("newline inside literal");
      if (c == '\\') {
        if (pos_ >= text_.size()) fail("unterminated escape");
        const char e = text_[pos_++];
        switch (e) {
          case 'n': value += '\n'; break;
          case 't': value += '\t'; break;
          case 'r': value += '\r'; break;
          case '"': value += '"'; break;
          case '\'': value += '\''; break;
          case '\\': value += '\\'; break;
          default: fail(std::string("unknown escape \\") + e);
        }
        continue;
      }
      value += c;
    }
    // Datatype and language tags are accepted and dropped.
    if (text_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      if (pos_ < text_.size() && text_[pos_] == '<') {
        iri();
      } else {
        while (pos_ < text_.size() && (local_char(text_[pos_]) || text_[pos_] == ':')) ++pos_;
        if (pos_ > 0 && text_[pos_ - 1] == '.') --pos_;
      }
    } else if (pos_ < text_.size() && text_[pos_] == '@') {
      ++pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-'))
        ++pos_;
    }
    return {Tok::literal, value, line};
  }

  Token variable() {
    const std::size_t line = line_;
    ++pos_;
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (pos_ == start) fail("empty variable name");
    return {Tok::var, std::string(text_.substr(start, pos_ - start)), line};
  }

  void word(std::vector<Token>& out) {
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) ||
          std::string_view("{}()[];,\"<#").find(c) != std::string_view::npos)
        break;
      ++pos_;
    }
    std::string w(text_.substr(start, pos_ - start));
    std::size_t dots = 0;
    while (!w.empty() && w.back() == '.' && !is_number(w)) {
      w.pop_back();
      ++dots;
    }
    if (!w.empty()) {
      Tok kind = Tok::word;
      if (w.find(':') != std::string::npos && w != "=>") kind = Tok::pname;
      out.push_back({kind, w, line_});
    }
    for (std::size_t i = 0; i < dots; ++i) out.push_back({Tok::punct, ".", line_});
  }

 public:
  static bool is_number(std::string_view w) {
    std::size_t i = 0;
    if (i < w.size() && (w[i] == '+' || w[i] == '-')) ++i;
    bool digits = false, dot = false;
    for (; i < w.size(); ++i) {
      if (std::isdigit(static_cast<unsigned char>(w[i]))) {
        digits = true;
      } else if (w[i] == '.' && !dot && i + 1 < w.size()) {
        dot = true;
      } else {
        return false;
      }
    }
    return digits;
  }

 private:
  std::string_view text_;
  const std::string& file_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

// ---------------------------------------------------------------- parser

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

class Parser {
 public:
  Parser(std::string_view text, const std::string& file, PrefixMap& prefixes)
      : file_(file), prefixes_(prefixes), tokens_(Lexer(text, file).run()) {}

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  bool at_end() const { return peek().kind == Tok::end; }

  bool is_punct(std::string_view p) const {
    return peek().kind == Tok::punct && peek().text == p;
  }
  bool is_word(std::string_view w) const {
    return peek().kind == Tok::word && iequals(peek().text, w);
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(file_, peek().line, msg);
  }
  [[noreturn]] void fail_at(std::size_t line, const std::string& msg) const {
    throw ParseError(file_, line, msg);
  }

  void expect_punct(std::string_view p) {
    if (!is_punct(p)) fail("expected '" + std::string(p) + "' but found " + describe(peek()));
    next();
  }

  static std::string describe(const Token& t) {
    if (t.kind == Tok::end) return "end of input";
    return "'" + t.text + "'";
  }

  void skip_name_comments() {
    while (peek().kind == Tok::name_comment) next();
  }

  /// Consumes a prefix declaration if one starts here.
  bool prefix_declaration() {
    const bool turtle = peek().kind == Tok::word && peek().text == "@prefix";
    const bool sparql = is_word("PREFIX");
    if (!turtle && !sparql) return false;
    next();
    const Token name = next();
    if (name.kind != Tok::pname || name.text.back() != ':')
      fail_at(name.line, "expected prefix name ending in ':'");
    const Token iri = next();
    if (iri.kind != Tok::iri) fail_at(iri.line, "expected <namespace IRI> in prefix declaration");
    prefixes_.declare(name.text.substr(0, name.text.size() - 1), iri.text);
    if (turtle) expect_punct(".");
    return true;
  }

  Term expand(const Token& t) {
    const auto colon = t.text.find(':');
    const std::string prefix = t.text.substr(0, colon);
    if (const std::string* iri = prefixes_.lookup(prefix); iri && prefix != "_")
      return Term::iri(*iri + t.text.substr(colon + 1));
    return Term::iri(t.text);
  }

  Term term(bool allow_variable) {
    const Token t = next();
    switch (t.kind) {
      case Tok::iri: return Term::iri(t.text);
      case Tok::pname: return expand(t);
      case Tok::literal: return Term::literal(t.text);
      case Tok::var:
        if (!allow_variable) fail_at(t.line, "variable ?" + t.text + " not allowed here");
        return Term::variable(t.text);
      case Tok::word:
        if (t.text == "a") return rdf_type();
        if (t.text == "true" || t.text == "false" || Lexer::is_number(t.text))
          return Term::literal(t.text);
        fail_at(t.line, "unexpected token '" + t.text + "'");
      default: fail_at(t.line, "expected a term but found " + describe(t));
    }
  }

  Term blank() { return Term::iri("_:gen" + std::to_string(++blank_counter_)); }

  /// Subject or object position: also accepts [ ... ] and ( ... ).
  Term node(bool allow_variable, std::vector<TriplePattern>& out) {
    if (is_punct("[")) {
      next();
      Term b = blank();
      if (!is_punct("]")) predicate_object_list(b, allow_variable, out);
      expect_punct("]");
      return b;
    }
    if (is_punct("(")) {
      next();
      std::vector<Term> items;
      while (!is_punct(")")) {
        if (at_end()) fail("unterminated collection");
        items.push_back(node(allow_variable, out));
      }
      next();
      const Term nil = Term::iri(std::string(ns::rdf) + "nil");
      if (items.empty()) return nil;
      const Term first = Term::iri(std::string(ns::rdf) + "first");
      const Term rest = Term::iri(std::string(ns::rdf) + "rest");
      std::vector<Term> cells;
      for (std::size_t i = 0; i < items.size(); ++i) cells.push_back(blank());
      for (std::size_t i = 0; i < items.size(); ++i) {
        out.push_back({cells[i], first, items[i]});
        out.push_back({cells[i], rest, i + 1 < items.size() ? cells[i + 1] : nil});
      }
      return cells.front();
    }
    return term(allow_variable);
  }

  void predicate_object_list(const Term& subject, bool allow_variable,
                             std::vector<TriplePattern>& out) {
    for (;;) {
      const Term predicate = term(allow_variable);
      for (;;) {
        const Term object = node(allow_variable, out);
        out.push_back({subject, predicate, object});
        if (!is_punct(",")) break;
        next();
      }
      if (!is_punct(";")) return;
      while (is_punct(";")) next();
      if (is_punct(".") || is_punct("]") || is_punct("}") || at_end()) return;
    }
  }

  /// Triples until `closing` (not consumed) or end of input.
  std::vector<TriplePattern> triples(bool allow_variable, bool top_level) {
    std::vector<TriplePattern> out;
    for (;;) {
      skip_name_comments();
      if (at_end()) {
        if (!top_level) fail("expected '}'");
        break;
      }
      if (!top_level && is_punct("}")) break;
      if (top_level && prefix_declaration()) continue;
      const std::size_t line = peek().line;
      const std::size_t before = out.size();
      const bool bare_blank = is_punct("[");
      const Term subject = node(allow_variable, out);
      if (!(bare_blank && (is_punct(".") || is_punct("}") || at_end())))
        predicate_object_list(subject, allow_variable, out);
      for (std::size_t i = before; i < out.size(); ++i) {
        if (!is_well_formed(out[i]))
          fail_at(line, "ill-formed triple " + prefixes_.render(out[i]));
        if (!allow_variable && !is_valid_triple(out[i]))
          fail_at(line, "invalid RDF triple " + prefixes_.render(out[i]));
      }
      if (is_punct(".")) {
        next();
      } else if (top_level || !is_punct("}")) {
        fail("expected '.' but found " + describe(peek()));
      }
    }
    return out;
  }

  TriplePattern single_pattern() {
    const std::size_t line = peek().line;
    TriplePattern t;
    t.s = term(true);
    t.p = term(true);
    t.o = term(true);
    if (!is_well_formed(t)) fail_at(line, "ill-formed pattern " + prefixes_.render(t));
    return t;
  }

  std::vector<TriplePattern> braced_triples() {
    expect_punct("{");
    auto out = triples(true, false);
    expect_punct("}");
    return out;
  }

  const std::string& file_;
  PrefixMap& prefixes_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t blank_counter_ = 0;
};

}  // namespace

std::string PrefixMap::render(const Term& t) const { return render_term(*this, t, nullptr); }

std::string PrefixMap::render(const TriplePattern& t) const {
  return render(t.s) + " " + render(t.p) + " " + render(t.o);
}

Graph parse_graph(std::string_view text, const std::string& file, PrefixMap* prefixes) {
  PrefixMap local;
  Parser p(text, file, prefixes ? *prefixes : local);
  const auto triples = p.triples(false, true);
  return Graph(triples.begin(), triples.end());
}

RuleSet parse_rules(std::string_view text, const std::string& file, PrefixMap* prefixes) {
  PrefixMap local;
  Parser p(text, file, prefixes ? *prefixes : local);
  RuleSet rules;
  std::optional<std::string> pending_name;
  while (!p.at_end()) {
    if (p.peek().kind == Tok::name_comment) {
      pending_name = p.next().text;
      continue;
    }
    if (p.prefix_declaration()) continue;
    if (!p.is_word("CONSTRUCT")) p.fail("expected CONSTRUCT but found " + Parser::describe(p.peek()));
    const std::size_t line = p.next().line;
    InferenceRule r;
    const auto consequent = p.braced_triples();
    if (!p.is_word("WHERE")) p.fail("expected WHERE but found " + Parser::describe(p.peek()));
    p.next();
    const auto antecedent = p.braced_triples();
    r.antecedent = GraphPattern(antecedent.begin(), antecedent.end());
    r.consequent = GraphPattern(consequent.begin(), consequent.end());
    r.name = pending_name.value_or("r" + std::to_string(rules.size() + 1));
    pending_name.reset();
    try {
      r.validate();
    } catch (const SchemaError& e) {
      throw ParseError(file, line, e.what());
    }
    rules.push_back(std::move(r));
  }
  return rules;
}

TriplestoreSchema parse_schema(std::string_view text, const std::string& file,
                               PrefixMap* prefixes) {
  PrefixMap local;
  Parser p(text, file, prefixes ? *prefixes : local);
  TriplestoreSchema s;
  while (!p.at_end()) {
    p.skip_name_comments();
    if (p.at_end()) break;
    if (p.prefix_declaration()) continue;
    if (p.is_word("GRAPH")) {
      p.next();
      for (auto& t : p.braced_triples()) s.graph.insert(t);
    } else if (p.is_word("NOLIT")) {
      p.next();
      p.expect_punct("{");
      while (!p.is_punct("}")) {
        const Token t = p.next();
        if (t.kind != Tok::var) p.fail_at(t.line, "expected a variable in NOLIT but found " + Parser::describe(t));
        s.no_literal.insert(t.text);
      }
      p.next();
    } else if (p.is_word("EXISTS")) {
      p.next();
      p.expect_punct("{");
      while (!p.is_punct("}")) {
        if (p.at_end()) p.fail("expected '}'");
        ExistentialRule e;
        e.antecedent = p.single_pattern();
        if (!(p.peek().kind == Tok::word && p.peek().text == "=>"))
          p.fail("expected '=>' but found " + Parser::describe(p.peek()));
        p.next();
        e.consequent = p.single_pattern();
        s.existentials.insert(e);
        while (p.is_punct(";") || p.is_punct(".")) p.next();
      }
      p.next();
    } else {
      p.fail("expected GRAPH, NOLIT or EXISTS but found " + Parser::describe(p.peek()));
    }
  }
  try {
    s.validate();
  } catch (const SchemaError& e) {
    throw ParseError(file, 0, e.what());
  }
  return s;
}

namespace {

std::string header(const PrefixMap& map, const std::set<std::string>& used) {
  std::string out;
  for (const auto& [prefix, iri] : map.entries())
    if (used.count(prefix)) out += "@prefix " + prefix + ": <" + iri + "> .\n";
  return out.empty() ? out : out + "\n";
}

std::string pattern_line(const PrefixMap& map, const TriplePattern& t, std::set<std::string>& used) {
  return render_term(map, t.s, &used) + " " + render_term(map, t.p, &used) + " " +
         render_term(map, t.o, &used);
}

}  // namespace

std::string write_graph(const Graph& g, const PrefixMap& prefixes) {
  std::set<std::string> used;
  std::string body;
  const Term* subject = nullptr;
  std::string indent;
  for (const auto& t : g) {
    if (subject && *subject == t.s) {
      body += " ;\n" + indent;
    } else {
      if (subject) body += " .\n";
      const std::string s = render_term(prefixes, t.s, &used);
      body += s + " ";
      indent.assign(s.size() + 1, ' ');
    }
    body += render_term(prefixes, t.p, &used) + " " + render_term(prefixes, t.o, &used);
    subject = &t.s;
  }
  if (subject) body += " .\n";
  return header(prefixes, used) + body;
}

std::string write_rules(const RuleSet& rules, const PrefixMap& prefixes) {
  std::set<std::string> used;
  std::string body;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const auto& r = rules[i];
    if (i) body += "\n";
    if (!r.name.empty()) body += "# name: " + r.name + "\n";
    body += "CONSTRUCT {\n";
    for (const auto& t : r.consequent) body += "  " + pattern_line(prefixes, t, used) + " .\n";
    body += "}\nWHERE {\n";
    for (const auto& t : r.antecedent) body += "  " + pattern_line(prefixes, t, used) + " .\n";
    body += "}\n";
  }
  return header(prefixes, used) + body;
}

std::string write_schema(const TriplestoreSchema& s, const PrefixMap& prefixes) {
  std::set<std::string> used;
  std::string body = "GRAPH {\n";
  for (const auto& t : s.graph) body += "  " + pattern_line(prefixes, t, used) + " .\n";
  body += "}\nNOLIT {";
  for (const auto& v : s.no_literal) body += " ?" + v;
  body += " }\nEXISTS {\n";
  for (const auto& e : s.existentials)
    body += "  " + pattern_line(prefixes, e.antecedent, used) + " => " +
            pattern_line(prefixes, e.consequent, used) + " ;\n";
  body += "}\n";
  return header(prefixes, used) + body;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace schemaforge
