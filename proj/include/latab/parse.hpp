#ifndef LATAB_PARSE_HPP
#define LATAB_PARSE_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "latab/formula.hpp"

namespace latab {

// Grammar:
//   sequent := formula "|-" formula
//   formula := conj { "|" conj }      (left-associative)
//   conj    := neg { "&" neg }        (left-associative)
//   neg     := "~" neg | atom
//   atom    := ident | "(" formula ")"
// Unicode aliases: ¬ ∧ ∨ ⊢.

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t token, std::size_t offset, std::vector<std::string> expected,
             std::string found)
      : std::runtime_error(make_message(token, offset, expected, found)),
        token_(token),
        offset_(offset),
        expected_(std::move(expected)),
        found_(std::move(found)) {}

  /// 1-based index of the offending token.
  std::size_t token() const noexcept { return token_; }
  /// Byte offset of the offending token in the input.
  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  static std::string make_message(std::size_t token, std::size_t offset,
                                  const std::vector<std::string>& expected,
                                  const std::string& found) {
    std::string m = "syntax error at token " + std::to_string(token) + " (offset " +
                    std::to_string(offset) + "): found " + found + ", expected one of {";
    for (std::size_t i = 0; i < expected.size(); ++i) m += (i ? ", " : "") + expected[i];
    return m + "}";
  }

  std::size_t token_;
  std::size_t offset_;
  std::vector<std::string> expected_;
  std::string found_;
};

namespace detail {

enum class Tok { Ident, Not, And, Or, Turnstile, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

inline std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Ident: return "identifier '" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

inline std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view lit) { return s.substr(i, lit.size()) == lit; };
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  auto alnum = [&](char c) { return alpha(c) || (c >= '0' && c <= '9') || c == '_'; };
  while (i < s.size()) {
    char c = s[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') { ++i; continue; }
    std::size_t at = i;
    if (alpha(c)) {
      while (i < s.size() && alnum(s[i])) ++i;
      out.push_back({Tok::Ident, std::string(s.substr(at, i - at)), at});
    } else if (starts("|-")) { out.push_back({Tok::Turnstile, "|-", at}); i += 2; }
    else if (starts("⊢")) { out.push_back({Tok::Turnstile, "⊢", at}); i += 3; }
    else if (starts("¬")) { out.push_back({Tok::Not, "¬", at}); i += 2; }
    else if (starts("∧")) { out.push_back({Tok::And, "∧", at}); i += 3; }
    else if (starts("∨")) { out.push_back({Tok::Or, "∨", at}); i += 3; }
    else if (c == '~') { out.push_back({Tok::Not, "~", at}); ++i; }
    else if (c == '&') { out.push_back({Tok::And, "&", at}); ++i; }
    else if (c == '|') { out.push_back({Tok::Or, "|", at}); ++i; }
    else if (c == '(') { out.push_back({Tok::LParen, "(", at}); ++i; }
    else if (c == ')') { out.push_back({Tok::RParen, ")", at}); ++i; }
    else {
      // Report the unknown character as the next token position.
      throw ParseError(out.size() + 1, at, {"identifier", "'~'", "'('"},
                       "character '" + std::string(1, c) + "'");
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  Formula formula() {
    Formula f = conj();
    while (peek().kind == Tok::Or) {
      ++pos_;
      f = Formula::disj(f, conj());
    }
    return f;
  }

  bool at(Tok k) const { return peek().kind == k; }
  void expect(Tok k, std::vector<std::string> expected) {
    if (!at(k)) fail(std::move(expected));
    ++pos_;
  }
  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw ParseError(pos_ + 1, peek().offset, std::move(expected), describe(peek()));
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  Formula conj() {
    Formula f = neg();
    while (peek().kind == Tok::And) {
      ++pos_;
      f = Formula::conj(f, neg());
    }
    return f;
  }

  Formula neg() {
    if (peek().kind == Tok::Not) {
      ++pos_;
      return Formula::neg(neg());
    }
    return atom();
  }

  Formula atom() {
    const Token& t = peek();
    if (t.kind == Tok::Ident) {
      ++pos_;
      return Formula::var(t.text);
    }
    if (t.kind == Tok::LParen) {
      ++pos_;
      Formula f = formula();
      expect(Tok::RParen, {"'&'", "'|'", "')'"});
      return f;
    }
    fail({"identifier", "'~'", "'('"});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Formula parse_formula(std::string_view text) {
  detail::Parser p(text);
  Formula f = p.formula();
  if (!p.at(detail::Tok::End)) p.fail({"'&'", "'|'", "end of input"});
  return f;
}

inline Sequent parse_sequent(std::string_view text) {
  detail::Parser p(text);
  Formula lhs = p.formula();
  p.expect(detail::Tok::Turnstile, {"'&'", "'|'", "'|-'"});
  Formula rhs = p.formula();
  if (!p.at(detail::Tok::End)) p.fail({"'&'", "'|'", "end of input"});
  return {lhs, rhs};
}

/// Parses either a formula or a sequent, depending on whether a turnstile occurs.
inline std::variant<Formula, Sequent> parse(std::string_view text) {
  detail::Parser p(text);
  Formula lhs = p.formula();
  if (p.at(detail::Tok::End)) return lhs;
  p.expect(detail::Tok::Turnstile, {"'&'", "'|'", "'|-'", "end of input"});
  Formula rhs = p.formula();
  if (!p.at(detail::Tok::End)) p.fail({"'&'", "'|'", "end of input"});
  return Sequent{lhs, rhs};
}

}  // namespace latab

#endif  // LATAB_PARSE_HPP
