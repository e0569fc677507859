#pragma once
// Recursive-descent checker for the DOT language (no HTML strings or ports).
// Returns an empty string when the text is a well-formed graph, otherwise a
// description of the first problem.

#include <cctype>
#include <string>
#include <vector>

namespace tmtest {

class DotChecker {
 public:
  explicit DotChecker(const std::string& text) : text_(text) {}

  std::string check() {
    try {
      lex();
      graph();
      if (peek().kind != Kind::End) fail("trailing input");
    } catch (const std::string& e) {
      return e;
    }
    return "";
  }

 private:
  enum class Kind { Id, Keyword, Punct, EdgeOp, End };
  struct Tok {
    Kind kind;
    std::string text;
  };

  [[noreturn]] void fail(const std::string& what) const {
    throw "DOT error near token " + std::to_string(pos_) + " ('" + peek().text + "'): " + what;
  }

  static bool is_keyword(const std::string& s) {
    std::string l;
    for (char c : s) l += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return l == "graph" || l == "digraph" || l == "node" || l == "edge" || l == "strict" ||
           l == "subgraph";
  }

  void lex() {
    std::size_t i = 0;
    const std::size_t n = text_.size();
    bool line_start = true;
    while (i < n) {
      char c = text_[i];
      if (c == '\n') {
        line_start = true;
        ++i;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      if (line_start && c == '#') {
        while (i < n && text_[i] != '\n') ++i;
        continue;
      }
      line_start = false;
      if (c == '/' && i + 1 < n && text_[i + 1] == '/') {
        while (i < n && text_[i] != '\n') ++i;
        continue;
      }
      if (c == '/' && i + 1 < n && text_[i + 1] == '*') {
        auto end = text_.find("*/", i + 2);
        if (end == std::string::npos) throw std::string("unterminated comment");
        i = end + 2;
        continue;
      }
      if (c == '"') {
        std::string s;
        ++i;
        while (i < n && text_[i] != '"') {
          if (text_[i] == '\\' && i + 1 < n) s += text_[i++];
          s += text_[i++];
        }
        if (i >= n) throw std::string("unterminated string");
        ++i;
        toks_.push_back({Kind::Id, s});
        continue;
      }
      if (c == '-' && i + 1 < n && (text_[i + 1] == '>' || text_[i + 1] == '-')) {
        toks_.push_back({Kind::EdgeOp, text_.substr(i, 2)});
        i += 2;
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
          static_cast<unsigned char>(c) >= 0x80) {
        std::size_t j = i;
        while (j < n && (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_' ||
                         static_cast<unsigned char>(text_[j]) >= 0x80)) {
          ++j;
        }
        std::string w = text_.substr(i, j - i);
        toks_.push_back({is_keyword(w) ? Kind::Keyword : Kind::Id, w});
        i = j;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-') {
        std::size_t j = i + 1;
        while (j < n && (std::isdigit(static_cast<unsigned char>(text_[j])) || text_[j] == '.')) ++j;
        toks_.push_back({Kind::Id, text_.substr(i, j - i)});
        i = j;
        continue;
      }
      if (std::string("{}[]=;,:").find(c) != std::string::npos) {
        toks_.push_back({Kind::Punct, std::string(1, c)});
        ++i;
        continue;
      }
      throw "unexpected character '" + std::string(1, c) + "'";
    }
    toks_.push_back({Kind::End, "<end>"});
  }

  const Tok& peek() const { return toks_[std::min(pos_, toks_.size() - 1)]; }
  bool at_punct(const char* p) const { return peek().kind == Kind::Punct && peek().text == p; }
  bool at_keyword(const char* k) const {
    if (peek().kind != Kind::Keyword) return false;
    std::string l;
    for (char c : peek().text) l += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return l == k;
  }
  void expect_punct(const char* p) {
    if (!at_punct(p)) fail(std::string("expected '") + p + "'");
    ++pos_;
  }
  void id() {
    if (peek().kind != Kind::Id) fail("expected an ID");
    ++pos_;
  }

  void graph() {
    if (at_keyword("strict")) ++pos_;
    if (at_keyword("digraph")) {
      directed_ = true;
    } else if (!at_keyword("graph")) {
      fail("expected graph or digraph");
    }
    ++pos_;
    if (peek().kind == Kind::Id) ++pos_;
    expect_punct("{");
    stmt_list();
    expect_punct("}");
  }

  void stmt_list() {
    while (!at_punct("}") && peek().kind != Kind::End) {
      stmt();
      if (at_punct(";")) ++pos_;
    }
  }

  void stmt() {
    if (at_keyword("graph") || at_keyword("node") || at_keyword("edge")) {
      ++pos_;
      attr_list(true);
      return;
    }
    if (peek().kind == Kind::Id && toks_[pos_ + 1].kind == Kind::Punct && toks_[pos_ + 1].text == "=") {
      pos_ += 2;
      id();
      return;
    }
    operand();
    bool edge = false;
    while (peek().kind == Kind::EdgeOp) {
      if ((peek().text == "->") != directed_) fail("edge operator does not match graph type");
      ++pos_;
      operand();
      edge = true;
    }
    (void)edge;
    if (at_punct("[")) attr_list(false);
  }

  void operand() {
    if (at_keyword("subgraph") || at_punct("{")) {
      if (at_keyword("subgraph")) {
        ++pos_;
        if (peek().kind == Kind::Id) ++pos_;
      }
      expect_punct("{");
      stmt_list();
      expect_punct("}");
      return;
    }
    id();
    if (at_punct(":")) fail("ports are not expected in generated output");
  }

  void attr_list(bool required) {
    if (!at_punct("[")) {
      if (required) fail("expected '['");
      return;
    }
    while (at_punct("[")) {
      ++pos_;
      while (!at_punct("]")) {
        id();
        expect_punct("=");
        id();
        if (at_punct(",") || at_punct(";")) ++pos_;
      }
      ++pos_;
    }
  }

  const std::string& text_;
  std::vector<Tok> toks_;
  std::size_t pos_ = 0;
  bool directed_ = false;
};

inline std::string dot_errors(const std::string& text) { return DotChecker(text).check(); }

}  // namespace tmtest
