#include <cctype>
#include <charconv>
#include <optional>

#include "autotamp/stl.hpp"

namespace autotamp {

namespace {

enum class TokKind { Keyword, Predicate, Interval, LParen, RParen, Bad };

struct Token {
  TokKind kind;
  std::string text;           // verbatim slice of the input
  std::string word;           // lowercased keyword
  Action action = Action::Enter;
  std::string region;         // Predicate
  TimeInterval interval;      // Interval
  bool interval_ok = false;
};

bool parse_bound(std::string_view s, double& out, bool allow_inf) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  std::string low;
  for (size_t i = b; i < e; ++i) low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(s[i]))));
  if (allow_inf && (low == "infinite" || low == "inf" || low == "infinity")) {
    out = std::numeric_limits<double>::infinity();
    return true;
  }
  auto res = std::from_chars(s.data() + b, s.data() + e, out);
  return res.ec == std::errc{} && res.ptr == s.data() + e;
}

std::string lower(std::string_view s) {
  std::string out;
  for (char c : s) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

bool is_keyword(const std::string& w) {
  return w == "finally" || w == "globally" || w == "until" || w == "and" || w == "or" ||
         w == "not" || w == "negation" || w == "imply" || w == "equal";
}

std::vector<Token> lex(std::string_view text, std::vector<Diagnostic>& diags) {
  std::vector<Token> toks;
  size_t i = 0;
  const size_t n = text.size();
  while (i < n) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      ++i;
      continue;
    }
    if (c == '(') {
      toks.push_back({TokKind::LParen, "(", ""});
      ++i;
      continue;
    }
    if (c == ')') {
      toks.push_back({TokKind::RParen, ")", ""});
      ++i;
      continue;
    }
    if (c == '[') {
      size_t close = text.find(']', i);
      Token t{TokKind::Interval, "", ""};
      if (close == std::string_view::npos) {
        t.text = std::string(text.substr(i));
        i = n;
      } else {
        t.text = std::string(text.substr(i, close - i + 1));
        i = close + 1;
      }
      std::string_view inner(t.text);
      if (inner.size() >= 2 && inner.back() == ']') inner = inner.substr(1, inner.size() - 2);
      else if (!inner.empty()) inner = inner.substr(1);
      size_t comma = inner.find(',');
      double lo = 0, hi = 0;
      if (comma != std::string_view::npos && parse_bound(inner.substr(0, comma), lo, true) &&
          parse_bound(inner.substr(comma + 1), hi, true)) {
        t.interval = TimeInterval{lo, hi};
        t.interval_ok = true;
      }
      toks.push_back(std::move(t));
      continue;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < n && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      std::string word = lower(text.substr(i, j - i));
      // enter(...) / not_enter(...) fuse into a single predicate token; the
      // region may contain spaces, which normalize to underscores.
      if ((word == "enter" || word == "not_enter") && j < n && text[j] == '(') {
        size_t close = text.find(')', j);
        if (close == std::string_view::npos) {
          Token t{TokKind::Bad, std::string(text.substr(i)), word};
          toks.push_back(std::move(t));
          diags.push_back(make_error(DiagCode::UnbalancedStructure,
                                     "unterminated predicate '" + toks.back().text + "'",
                                     static_cast<int>(toks.size() - 1)));
          i = n;
          continue;
        }
        Token t{TokKind::Predicate, std::string(text.substr(i, close - i + 1)), word};
        t.action = (word == "enter") ? Action::Enter : Action::NotEnter;
        t.region = normalize_region_name(text.substr(j + 1, close - j - 1));
        toks.push_back(std::move(t));
        i = close + 1;
        continue;
      }
      Token t{TokKind::Keyword, std::string(text.substr(i, j - i)), word};
      toks.push_back(std::move(t));
      i = j;
      continue;
    }
    toks.push_back({TokKind::Bad, std::string(1, c), ""});
    ++i;
  }
  return toks;
}

struct Parser {
  const std::vector<Token>& toks;
  size_t pos = 0;
  std::vector<Diagnostic> diags;

  bool done() const { return pos >= toks.size(); }
  const Token& peek() const { return toks[pos]; }

  void error(DiagCode code, std::string msg, int at) { diags.push_back(make_error(code, std::move(msg), at)); }

  // Interval immediately following a temporal keyword; absent means [0, inf).
  TimeInterval take_interval() {
    if (!done() && peek().kind == TokKind::Interval) {
      const Token& t = toks[pos];
      ++pos;
      if (!t.interval_ok) {
        error(DiagCode::MalformedInterval, "malformed interval '" + t.text + "'", static_cast<int>(pos - 1));
        return TimeInterval::all();
      }
      return t.interval;
    }
    return TimeInterval::all();
  }

  StlPtr parse_pre() {
    if (done()) {
      error(DiagCode::ArityMismatch, "input ended while an operand was still expected",
            static_cast<int>(toks.size()));
      return nullptr;
    }
    const Token& t = toks[pos];
    int at = static_cast<int>(pos);
    switch (t.kind) {
      case TokKind::Predicate:
        ++pos;
        return t.action == Action::Enter ? make_enter(t.region) : make_not_enter(t.region);
      case TokKind::Keyword: {
        if (!is_keyword(t.word)) {
          error(DiagCode::UnknownToken, "unknown token '" + t.text + "'", at);
          ++pos;
          return nullptr;
        }
        ++pos;
        if (t.word == "not" || t.word == "negation") {
          auto c = parse_pre();
          return c ? make_not(c) : nullptr;
        }
        if (t.word == "finally" || t.word == "globally") {
          TimeInterval w = take_interval();
          auto c = parse_pre();
          if (!c) return nullptr;
          return t.word == "finally" ? make_finally(w, c) : make_globally(w, c);
        }
        if (t.word == "until") {
          TimeInterval w = take_interval();
          auto l = parse_pre();
          if (!l) return nullptr;
          auto r = parse_pre();
          if (!r) return nullptr;
          return make_until(w, l, r);
        }
        auto l = parse_pre();
        if (!l) return nullptr;
        auto r = parse_pre();
        if (!r) return nullptr;
        if (t.word == "and") return make_and(l, r);
        if (t.word == "or") return make_or(l, r);
        if (t.word == "imply") return make_imply(l, r);
        return make_equiv(l, r);
      }
      case TokKind::Interval:
        error(DiagCode::UnknownToken, "interval '" + t.text + "' is not attached to a temporal operator", at);
        ++pos;
        return nullptr;
      case TokKind::LParen:
      case TokKind::RParen:
        error(DiagCode::UnknownToken, "unexpected '" + t.text + "' in pre-order input", at);
        ++pos;
        return nullptr;
      case TokKind::Bad:
        error(DiagCode::UnknownToken, "unknown token '" + t.text + "'", at);
        ++pos;
        return nullptr;
    }
    return nullptr;
  }

  // In-order: unary operators bind tightest, binary operators chain
  // left-associatively at a single precedence level, parentheses group.
  StlPtr parse_in_unit() {
    if (done()) {
      error(DiagCode::ArityMismatch, "input ended while an operand was still expected",
            static_cast<int>(toks.size()));
      return nullptr;
    }
    const Token& t = toks[pos];
    int at = static_cast<int>(pos);
    if (t.kind == TokKind::Predicate) {
      ++pos;
      return t.action == Action::Enter ? make_enter(t.region) : make_not_enter(t.region);
    }
    if (t.kind == TokKind::LParen) {
      ++pos;
      auto inner = parse_in_expr();
      if (!inner) return nullptr;
      if (done() || peek().kind != TokKind::RParen) {
        error(DiagCode::UnbalancedStructure, "missing ')' for '(' opened earlier", at);
        return nullptr;
      }
      ++pos;
      return inner;
    }
    if (t.kind == TokKind::Keyword && is_keyword(t.word)) {
      if (t.word == "not" || t.word == "negation") {
        ++pos;
        auto c = parse_in_unit();
        return c ? make_not(c) : nullptr;
      }
      if (t.word == "finally" || t.word == "globally") {
        ++pos;
        TimeInterval w = take_interval();
        auto c = parse_in_unit();
        if (!c) return nullptr;
        return t.word == "finally" ? make_finally(w, c) : make_globally(w, c);
      }
    }
    error(DiagCode::UnknownToken, "unexpected token '" + t.text + "'", at);
    ++pos;
    return nullptr;
  }

  StlPtr parse_in_expr() {
    auto acc = parse_in_unit();
    if (!acc) return nullptr;
    while (!done() && peek().kind == TokKind::Keyword) {
      const Token& op = peek();
      if (op.word != "and" && op.word != "or" && op.word != "imply" && op.word != "equal" &&
          op.word != "until") {
        error(DiagCode::UnknownToken, "unexpected token '" + op.text + "' between operands",
              static_cast<int>(pos));
        return nullptr;
      }
      ++pos;
      TimeInterval w = op.word == "until" ? take_interval() : TimeInterval::all();
      auto rhs = parse_in_unit();
      if (!rhs) return nullptr;
      if (op.word == "and") acc = make_and(acc, rhs);
      else if (op.word == "or") acc = make_or(acc, rhs);
      else if (op.word == "imply") acc = make_imply(acc, rhs);
      else if (op.word == "equal") acc = make_equiv(acc, rhs);
      else acc = make_until(w, acc, rhs);
    }
    return acc;
  }
};

}  // namespace

ParseResult parse_preorder(std::string_view text) {
  ParseResult out;
  auto toks = lex(text, out.diagnostics);
  if (!out.diagnostics.empty()) return out;
  if (toks.empty()) {
    out.diagnostics.push_back(make_error(DiagCode::ArityMismatch, "empty input", 0));
    return out;
  }
  Parser p{toks};
  auto f = p.parse_pre();
  out.diagnostics.insert(out.diagnostics.end(), p.diags.begin(), p.diags.end());
  if (f && p.pos < toks.size()) {
    out.diagnostics.push_back(make_error(
        DiagCode::UnbalancedStructure,
        std::to_string(toks.size() - p.pos) + " token(s) left over after a complete formula, starting at '" +
            toks[p.pos].text + "'",
        static_cast<int>(p.pos)));
    return out;
  }
  if (out.diagnostics.empty()) out.formula = f;
  return out;
}

ParseResult parse_inorder(std::string_view text) {
  ParseResult out;
  auto toks = lex(text, out.diagnostics);
  if (!out.diagnostics.empty()) return out;
  if (toks.empty()) {
    out.diagnostics.push_back(make_error(DiagCode::ArityMismatch, "empty input", 0));
    return out;
  }
  Parser p{toks};
  auto f = p.parse_in_expr();
  out.diagnostics.insert(out.diagnostics.end(), p.diags.begin(), p.diags.end());
  if (f && p.pos < toks.size()) {
    out.diagnostics.push_back(make_error(
        DiagCode::UnbalancedStructure,
        "unexpected trailing token '" + toks[p.pos].text + "'", static_cast<int>(p.pos)));
    return out;
  }
  if (out.diagnostics.empty()) out.formula = f;
  return out;
}

}  // namespace autotamp
