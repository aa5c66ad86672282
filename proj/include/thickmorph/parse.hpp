#pragma once

/**
 * @file parse.hpp
 * @brief Text format for polynomials.
 *
 * Grammar (whitespace between tokens is ignored):
 *
 *     expr     := sign? term (('+' | '-') term)*
 *     term     := factor ('*' factor)*
 *     factor   := atom ('^' uint)?
 *     atom     := rational | symbol | '(' expr ')'
 *     rational := uint ('/' uint)?
 *     symbol   := [A-Za-z][A-Za-z0-9_]*
 *
 * Implicit multiplication ("2x1") and negative exponents are rejected.
 * render_canonical() emits the unique canonical form; parse_poly() of that
 * form returns the original Poly.
 */

#include <cctype>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "thickmorph/ring.hpp"

namespace thickmorph {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownSymbolError : public ParseError {
 public:
  UnknownSymbolError(const std::string& symbol, std::size_t offset)
      : ParseError("unknown symbol '" + symbol + "'", offset), symbol_(symbol) {}

  const std::string& symbol() const noexcept { return symbol_; }

 private:
  std::string symbol_;
};

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view src, const Ring& ring) : src_(src), ring_(ring) {}

  Poly parse_all() {
    skip_ws();
    if (pos_ == src_.size()) throw ParseError("empty expression", pos_);
    Poly p = expr();
    skip_ws();
    if (pos_ != src_.size()) throw ParseError(std::string("unexpected character '") + src_[pos_] + "'", pos_);
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    Poly acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = factor();
    while (accept('*')) acc *= factor();
    return acc;
  }

  Poly factor() {
    Poly base = atom();
    if (accept('^')) {
      skip_ws();
      std::size_t at = pos_;
      if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        throw ParseError("expected unsigned exponent", at);
      }
      mpz_class e = uint_literal();
      if (e > 65535) throw ParseError("exponent too large", at);
      base = base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  mpz_class uint_literal() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    return mpz_class(std::string(src_.substr(start, pos_ - start)));
  }

  Poly atom() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = uint_literal();
      mpz_class den = 1;
      skip_ws();
      if (accept('/')) {
        skip_ws();
        std::size_t at = pos_;
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          throw ParseError("expected denominator", at);
        }
        den = uint_literal();
        if (den == 0) throw ParseError("zero denominator", at);
      }
      reject_implicit_product();
      Scalar q(num, den);
      q.canonicalize();
      return Poly::constant(ring_, q);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(src_.substr(start, pos_ - start));
      auto idx = ring_.vars().find(name);
      if (!idx) throw UnknownSymbolError(name, start);
      reject_implicit_product();
      return Poly::variable(ring_, *idx);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  void reject_implicit_product() {
    std::size_t save = pos_;
    skip_ws();
    if (pos_ < src_.size()) {
      char n = src_[pos_];
      if (std::isalnum(static_cast<unsigned char>(n)) || n == '(') {
        throw ParseError("implicit multiplication is not allowed", pos_);
      }
    }
    pos_ = save;
  }

  std::string_view src_;
  Ring ring_;
  std::size_t pos_ = 0;
};

inline std::string render_scalar(const Scalar& c) {
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

}  // namespace detail

inline Poly parse_poly(std::string_view src, const Ring& ring) { return detail::ExprParser(src, ring).parse_all(); }

/// Canonical text: terms in descending lexicographic order of exponent vectors.
inline std::string render_canonical(const Poly& a) {
  if (a.is_zero()) return "0";
  const auto& vars = a.vars();
  std::string out;
  bool first = true;
  const auto& terms = a.terms();
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    Scalar c = it->coeff;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;

    std::string mono;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      auto e = it->mono[i];
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars[i].name;
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      out += detail::render_scalar(c);
    } else if (c == 1) {
      out += mono;
    } else {
      out += detail::render_scalar(c) + "*" + mono;
    }
  }
  return out;
}

/// One parsed line of an expression file.
struct ExprLine {
  std::size_t line;   // 1-based
  std::string text;   // with comment and surrounding whitespace stripped
  std::size_t column; // byte offset of `text` within the original line
};

/// Splits a fixture file into non-empty, comment-free lines.
inline std::vector<ExprLine> expression_lines(std::string_view content) {
  std::vector<ExprLine> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    ++line_no;
    std::string_view line = content.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t column = 0;
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) {
      line.remove_prefix(1);
      ++column;
    }
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
    if (!line.empty()) out.push_back({line_no, std::string(line), column});
    if (end == content.size()) break;
    start = end + 1;
  }
  return out;
}

/// Error in a fixture file, carrying its line number and byte offset within the line.
class FixtureError : public std::runtime_error {
 public:
  FixtureError(const std::string& file, std::size_t line, std::size_t offset, const std::string& what)
      : std::runtime_error(file + ":" + std::to_string(line) + ":" + std::to_string(offset) + ": " + what),
        file_(file),
        line_(line),
        offset_(offset) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::string file_;
  std::size_t line_;
  std::size_t offset_;
};

/// Parses an expression file: one expression per line, '#' comments.
inline std::vector<Poly> parse_expression_file(std::string_view content, const Ring& ring,
                                               const std::string& name = "<input>") {
  std::vector<Poly> out;
  for (const auto& l : expression_lines(content)) {
    try {
      out.push_back(parse_poly(l.text, ring));
    } catch (const ParseError& e) {
      throw FixtureError(name, l.line, l.column + e.offset(), e.what());
    }
  }
  return out;
}

}  // namespace thickmorph
