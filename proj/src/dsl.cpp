#include "tmkit/dsl.hpp"

#include <cctype>
#include <optional>
#include <sstream>

namespace tmkit {

namespace {

enum class Tok { Ident, String, LBrace, RBrace, Colon, Comma, Dot, Arrow, Squiggle, At, Bad, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    SourceSpan at{line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
        ++j;
      }
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), at});
      advance(j - i);
      continue;
    }
    if (c == '"') {
      std::string text;
      advance(1);
      bool closed = false;
      while (i < src.size()) {
        char d = src[i];
        if (d == '"') {
          advance(1);
          closed = true;
          break;
        }
        if (d == '\n') break;
        if (d == '\\' && i + 1 < src.size()) {
          advance(1);
          d = src[i];
          text += d == 'n' ? '\n' : d;
          advance(1);
          continue;
        }
        text += d;
        advance(1);
      }
      out.push_back({closed ? Tok::String : Tok::Bad, closed ? text : "unterminated string", at});
      continue;
    }
    if (src.substr(i, 2) == "->") {
      out.push_back({Tok::Arrow, "->", at});
      advance(2);
      continue;
    }
    if (src.substr(i, 2) == "~>") {
      out.push_back({Tok::Squiggle, "~>", at});
      advance(2);
      continue;
    }
    Tok k = Tok::Bad;
    switch (c) {
      case '{': k = Tok::LBrace; break;
      case '}': k = Tok::RBrace; break;
      case ':': k = Tok::Colon; break;
      case ',': k = Tok::Comma; break;
      case '.': k = Tok::Dot; break;
      case '@': k = Tok::At; break;
      default: break;
    }
    // Keep multi-byte UTF-8 sequences together in error text.
    std::size_t len = 1;
    if (k == Tok::Bad) {
      while (i + len < src.size() && (static_cast<unsigned char>(src[i + len]) & 0xC0) == 0x80) {
        ++len;
      }
    }
    out.push_back({k, std::string(src.substr(i, len)), at});
    advance(len);
  }
  out.push_back({Tok::End, "", SourceSpan{line, col}});
  return out;
}

bool is_item_keyword(const Token& t) {
  return t.kind == Tok::Ident && (t.text == "thimac" || t.text == "flow" || t.text == "trigger" ||
                                  t.text == "event" || t.text == "behavior");
}

struct ParseFailure {
  Diagnostic diag;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ParseResult run() {
    ParseResult r;
    if (peek().kind == Tok::End) return r;
    try {
      expect_keyword("model");
      r.model_name = expect(Tok::Ident, "model name").text;
      expect(Tok::LBrace, "'{'");
    } catch (const ParseFailure& f) {
      r.diagnostics.push_back(f.diag);
      return r;
    }
    const SourceSpan open = toks_[pos_ - 1].span;
    while (true) {
      const Token& t = peek();
      if (t.kind == Tok::RBrace) {
        ++pos_;
        break;
      }
      if (t.kind == Tok::End) {
        r.diagnostics.push_back(error(codes::kUnterminatedBlock, "model block opened here is never closed",
                                      open));
        break;
      }
      try {
        r.decls.push_back(item());
      } catch (const ParseFailure& f) {
        r.diagnostics.push_back(f.diag);
        recover();
      }
    }
    if (r.diagnostics.empty() && peek().kind != Tok::End) {
      r.diagnostics.push_back(error(codes::kSyntax, "unexpected '" + peek().text + "' after model",
                                    peek().span));
    }
    return r;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }

  static Diagnostic error(const char* code, std::string msg, SourceSpan span) {
    return Diagnostic{Severity::Error, code, std::move(msg), "", span};
  }

  [[noreturn]] void fail(const char* code, std::string msg, const Token& at) const {
    throw ParseFailure{error(code, std::move(msg), at.span)};
  }

  const Token& expect(Tok kind, const char* what) {
    const Token& t = peek();
    if (t.kind != kind) {
      if (t.kind == Tok::End) fail(codes::kUnterminatedBlock, std::string("expected ") + what + " before end of input", t);
      fail(codes::kSyntax,
           std::string("expected ") + what + ", found '" + t.text + "'", t);
    }
    ++pos_;
    return toks_[pos_ - 1];
  }

  void expect_keyword(const char* kw) {
    const Token& t = peek();
    if (t.kind != Tok::Ident || t.text != kw) {
      fail(codes::kSyntax, std::string("expected '") + kw + "', found '" + t.text + "'", t);
    }
    ++pos_;
  }

  // Skips to the next statement. An error inside a stage list or event
  // region also skips that block's closing brace.
  void recover() {
    int depth = in_block_ ? 1 : 0;
    in_block_ = false;
    if (!is_item_keyword(peek()) && peek().kind != Tok::RBrace) ++pos_;
    while (peek().kind != Tok::End) {
      const Token& t = peek();
      if (t.kind == Tok::LBrace) ++depth;
      if (t.kind == Tok::RBrace) {
        if (depth == 0) return;
        --depth;
        if (depth == 0) {
          ++pos_;
          return;
        }
      }
      if (depth == 0 && is_item_keyword(t)) return;
      ++pos_;
    }
  }

  std::string path() {
    std::string p = expect(Tok::Ident, "thimac name").text;
    while (peek().kind == Tok::Dot && peek(1).kind == Tok::Ident) {
      pos_ += 2;
      p += '.';
      p += toks_[pos_ - 1].text;
    }
    return p;
  }

  // PATH "." KIND, or a bare identifier when arc ids are allowed.
  std::variant<StageRef, std::string> member(bool allow_arc_id) {
    const Token& first = peek();
    std::vector<const Token*> segs{&expect(Tok::Ident, "stage reference")};
    while (peek().kind == Tok::Dot) {
      ++pos_;
      segs.push_back(&expect(Tok::Ident, "name after '.'"));
    }
    if (segs.size() == 1) {
      if (allow_arc_id) return segs[0]->text;
      fail(codes::kSyntax, "expected stage reference PATH.kind, found '" + first.text + "'", first);
    }
    const Token& kind_tok = *segs.back();
    auto kind = parse_stage_kind(kind_tok.text);
    if (!kind) {
      fail(codes::kUnknownStageKind,
           "unknown stage kind '" + kind_tok.text +
               "' (expected create, process, release, transfer or receive)",
           kind_tok);
    }
    std::string p = segs[0]->text;
    for (std::size_t i = 1; i + 1 < segs.size(); ++i) p += "." + segs[i]->text;
    return StageRef{p, *kind};
  }

  StageRef stage_ref() { return std::get<StageRef>(member(false)); }

  Declaration item() {
    const Token& kw = peek();
    if (!is_item_keyword(kw)) {
      fail(codes::kSyntax, "expected a statement (thimac, flow, trigger, event, behavior), found '" +
                               kw.text + "'",
           kw);
    }
    ++pos_;
    Declaration d;
    d.span = kw.span;
    if (kw.text == "thimac") {
      ThimacDecl t{path(), {}};
      if (peek().kind == Tok::LBrace) {
        const Token& open = peek();
        ++pos_;
        in_block_ = true;
        while (peek().kind == Tok::Ident && !is_item_keyword(peek())) {
          auto k = parse_stage_kind(peek().text);
          if (!k) fail(codes::kUnknownStageKind, "unknown stage kind '" + peek().text + "'", peek());
          t.stages.push_back(*k);
          ++pos_;
        }
        if (peek().kind == Tok::End || is_item_keyword(peek())) {
          in_block_ = false;
          fail(codes::kUnterminatedBlock, "stage list opened here is never closed", open);
        }
        expect(Tok::RBrace, "'}' closing the stage list");
        in_block_ = false;
      }
      d.item = std::move(t);
    } else if (kw.text == "flow") {
      FlowDecl f;
      f.label = expect(Tok::Ident, "thing label").text;
      expect(Tok::Colon, "':'");
      f.chain.push_back(stage_ref());
      expect(Tok::Arrow, "'->'");
      f.chain.push_back(stage_ref());
      while (peek().kind == Tok::Arrow) {
        ++pos_;
        f.chain.push_back(stage_ref());
      }
      d.item = std::move(f);
    } else if (kw.text == "trigger") {
      TriggerDecl t;
      t.source = stage_ref();
      expect(Tok::Squiggle, "'~>'");
      t.target = stage_ref();
      d.item = std::move(t);
    } else if (kw.text == "event") {
      EventDecl e;
      e.name = expect(Tok::Ident, "event name").text;
      if (peek().kind == Tok::String) e.description = toks_[pos_++].text;
      if (peek().kind == Tok::At) {
        ++pos_;
        e.time = expect(Tok::String, "time annotation string").text;
      }
      const Token& open = expect(Tok::LBrace, "'{' opening the event region");
      in_block_ = true;
      e.members.push_back(member(true));
      while (peek().kind == Tok::Comma) {
        ++pos_;
        e.members.push_back(member(true));
      }
      if (peek().kind == Tok::End || is_item_keyword(peek())) {
        in_block_ = false;
        fail(codes::kUnterminatedBlock, "event region opened here is never closed", open);
      }
      expect(Tok::RBrace, "'}' closing the event region");
      in_block_ = false;
      d.item = std::move(e);
    } else {
      BehaviorDecl b;
      b.chain.push_back(expect(Tok::Ident, "event name").text);
      expect(Tok::Arrow, "'->'");
      b.chain.push_back(expect(Tok::Ident, "event name").text);
      while (peek().kind == Tok::Arrow) {
        ++pos_;
        b.chain.push_back(expect(Tok::Ident, "event name").text);
      }
      d.item = std::move(b);
    }
    return d;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  bool in_block_ = false;
};

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

ParseResult parse(std::string_view text) {
  auto toks = lex(text);
  for (const auto& t : toks) {
    if (t.kind == Tok::Bad) {
      // Lexical junk is reported once per token; the parser then sees it as
      // an unexpected token and recovers at the next statement.
      ParseResult r = Parser(toks).run();
      bool already = false;
      for (const auto& d : r.diagnostics) already = already || d.span == t.span;
      if (!already) {
        r.diagnostics.push_back(Diagnostic{Severity::Error, codes::kSyntax,
                                           "unexpected character '" + t.text + "'", "", t.span});
        sort_diagnostics(r.diagnostics);
      }
      return r;
    }
  }
  return Parser(std::move(toks)).run();
}

std::string format(const Model& model) {
  std::ostringstream out;
  std::vector<std::string> lines;
  for (const auto& [path, th] : model.thimacs()) {
    if (path.empty()) continue;
    std::string line = "thimac " + path;
    if (!th.stages.empty()) {
      line += " {";
      for (StageKind k : th.stages) {
        line += ' ';
        line += to_string(k);
      }
      line += " }";
    }
    lines.push_back(std::move(line));
  }
  for (const auto& f : model.flows()) {
    lines.push_back("flow " + f.label + ": " + f.source.str() + " -> " + f.target.str());
  }
  for (const auto& t : model.triggers()) {
    lines.push_back("trigger " + t.source.str() + " ~> " + t.target.str());
  }
  for (const auto& name : model.event_order()) {
    const Event& e = model.events().at(name);
    std::string line = "event " + e.name;
    if (e.description) line += " " + quote(*e.description);
    if (e.time) line += " @ " + quote(*e.time);
    line += " {";
    bool first = true;
    for (const auto& ref : e.region) {
      line += first ? " " : ", ";
      line += ref.str();
      first = false;
    }
    line += " }";
    lines.push_back(std::move(line));
  }
  for (const auto& [a, b] : model.behavior().edges) {
    lines.push_back("behavior " + a + " -> " + b);
  }

  if (lines.empty()) {
    out << "model " << model.name() << " { }\n";
    return out.str();
  }
  out << "model " << model.name() << " {\n";
  for (const auto& l : lines) out << "  " << l << '\n';
  out << "}\n";
  return out.str();
}

Model load_model(std::string_view text, const AssembleOptions& opts) {
  ParseResult r = parse(text);
  if (!r.ok()) {
    const Diagnostic& d = r.diagnostics.front();
    std::string where = d.span ? std::to_string(d.span->line) + ":" + std::to_string(d.span->col) + ": " : "";
    throw Error(Errc::ConfigError, where + d.code + ": " + d.message);
  }
  return assemble_model(r.model_name, r.decls, opts);
}

}  // namespace tmkit
