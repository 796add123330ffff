#include "fsplit/parse.hpp"

#include <cctype>
#include <string>

#include "fsplit/errors.hpp"

namespace fsplit {

namespace {

// Largest exponent accepted by the grammar; anything bigger is certainly a typo
// at desk scale and would overflow degree bookkeeping.
constexpr std::uint64_t kMaxExponent = 1u << 20;

class Parser {
 public:
  Parser(std::string_view text, const ContextPtr& ctx) : text_(text), ctx_(ctx) {}

  Polynomial polynomial() {
    skip_space();
    if (at_end()) throw ParseError("empty input", pos_);
    Polynomial f = expr();
    skip_space();
    if (!at_end()) unexpected();
    return f;
  }

  Ideal ideal() {
    skip_space();
    if (at_end()) throw ParseError("empty input", pos_);
    if (peek() != '(') throw ParseError("expected '(' to open the generator list", pos_);
    ++pos_;
    std::vector<Polynomial> gens;
    while (true) {
      skip_space();
      if (at_end()) throw ParseError("unterminated generator list", pos_);
      if (peek() == ',' || peek() == ')') {
        throw ParseError(gens.empty() && peek() == ')' ? "empty generator list" : "empty generator slot", pos_);
      }
      gens.push_back(expr());
      skip_space();
      if (at_end()) throw ParseError("unterminated generator list", pos_);
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      if (peek() == ')') {
        ++pos_;
        break;
      }
      unexpected();
    }
    skip_space();
    if (!at_end()) unexpected();
    return Ideal(ctx_, std::move(gens));
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  [[noreturn]] void unexpected() const {
    if (at_end()) throw ParseError("unexpected end of input", pos_);
    const char c = peek();
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(') {
      throw ParseError("expected an operator (multiplication must be written with '*')", pos_);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  Polynomial expr() {
    Polynomial acc = term();
    while (true) {
      skip_space();
      if (at_end() || (peek() != '+' && peek() != '-')) return acc;
      const char op = peek();
      ++pos_;
      Polynomial rhs = term();
      acc = op == '+' ? acc + rhs : acc - rhs;
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (true) {
      skip_space();
      if (at_end() || peek() != '*') return acc;
      ++pos_;
      acc = acc * unary();
    }
  }

  Polynomial unary() {
    skip_space();
    if (!at_end() && (peek() == '-' || peek() == '+')) {
      const bool negate = peek() == '-';
      ++pos_;
      Polynomial f = unary();
      return negate ? -f : f;
    }
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    skip_space();
    if (at_end() || peek() != '^') return base;
    ++pos_;
    skip_space();
    const std::size_t start = pos_;
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) {
      throw ParseError("malformed exponent (expected a natural number)", start);
    }
    std::uint64_t n = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      n = n * 10 + static_cast<std::uint64_t>(peek() - '0');
      if (n > kMaxExponent) throw ParseError("exponent too large", start);
      ++pos_;
    }
    return base.pow(n);
  }

  Polynomial atom() {
    skip_space();
    if (at_end()) throw ParseError("unexpected end of input", pos_);
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      skip_space();
      if (at_end() || peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::uint64_t p = ctx_->prime();
      std::uint64_t value = 0;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        value = (value * 10 + static_cast<std::uint64_t>(peek() - '0')) % p;
        ++pos_;
      }
      return Polynomial::constant(ctx_, static_cast<std::int64_t>(value));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      const auto index = ctx_->index_of(name);
      if (!index) throw ParseError("unknown variable '" + name + "'", start);
      return Polynomial::variable(ctx_, *index);
    }
    if (c == ',' || c == ')') throw ParseError("missing operand", pos_);
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view text_;
  const ContextPtr& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const ContextPtr& ctx) { return Parser(text, ctx).polynomial(); }

Ideal parse_ideal(std::string_view text, const ContextPtr& ctx) { return Parser(text, ctx).ideal(); }

}  // namespace fsplit
