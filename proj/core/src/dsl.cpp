#include "densitylab/dsl.hpp"

#include <cctype>

#include "densitylab/branch.hpp"

namespace densitylab {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      advance_one();
    }
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_, column_);
  }

  [[noreturn]] static void fail_at(const std::string& message, std::size_t line,
                                   std::size_t column) {
    throw ParseError(message, line, column);
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      fail(std::string("expected '") + c + "'");
    }
    advance_one();
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      advance_one();
      return true;
    }
    return false;
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-')) {
      advance_one();
    }
    if (start == pos_) fail("expected a keyword");
    return std::string(text_.substr(start, pos_ - start));
  }

  Int integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) advance_one();
    std::size_t digits_start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      advance_one();
    }
    if (digits_start == pos_) fail("expected an integer");
    return Int(std::string(text_.substr(start, pos_ - start)));
  }

  // Raw scan of a branch literal: bits '|' bits.
  Branch branch_literal() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && (text_[pos_] == '0' || text_[pos_] == '1')) advance_one();
    std::string head(text_.substr(start, pos_ - start));
    if (pos_ >= text_.size() || text_[pos_] != '|') fail("expected '|' in branch literal");
    advance_one();
    std::size_t cycle_start = pos_;
    while (pos_ < text_.size() && (text_[pos_] == '0' || text_[pos_] == '1')) advance_one();
    std::string cycle(text_.substr(cycle_start, pos_ - cycle_start));
    if (cycle.empty()) fail("branch cycle must be nonempty");
    return Branch(std::move(head), std::move(cycle));
  }

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  void advance_one() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

// Forwards construction errors as parse errors carrying the call position.
template <typename F>
auto guarded(std::size_t line, std::size_t column, F&& build) {
  try {
    return build();
  } catch (const DomainError& err) {
    throw ParseError(err.what(), line, column);
  }
}

IntervalScheme parse_scheme_at(Cursor& cur) {
  cur.skip_ws();
  const std::size_t line = cur.line(), column = cur.column();
  std::string word = cur.identifier();
  if (word == "geo") {
    cur.expect('(');
    Int base = cur.integer();
    Int offset = 0;
    if (cur.consume(',')) offset = cur.integer();
    cur.expect(')');
    return guarded(line, column,
                   [&] { return IntervalScheme::geometric(std::move(base), std::move(offset)); });
  }
  if (word == "poly") {
    cur.expect('(');
    Int e = cur.integer();
    cur.expect(')');
    return guarded(line, column, [&] {
      return IntervalScheme::polynomial(to_ulong_checked(e, "polynomial exponent"));
    });
  }
  if (word == "tri") return IntervalScheme::triangular();
  if (word == "lin") {
    cur.expect('(');
    Int step = cur.integer();
    cur.expect(')');
    return guarded(line, column, [&] { return IntervalScheme::linear(std::move(step)); });
  }
  Cursor::fail_at("unknown scheme '" + word + "'", line, column);
}

SetExpr parse_expr_at(Cursor& cur) {
  cur.skip_ws();
  const std::size_t line = cur.line(), column = cur.column();
  std::string word = cur.identifier();
  if (word == "empty") return SetExpr::empty();
  if (word == "full") return SetExpr::full();
  if (word == "fin") {
    cur.expect('{');
    std::vector<Int> elements;
    if (!cur.consume('}')) {
      do {
        elements.push_back(cur.integer());
      } while (cur.consume(','));
      cur.expect('}');
    }
    return guarded(line, column, [&] { return SetExpr::finite(std::move(elements)); });
  }
  if (word == "ap") {
    cur.expect('(');
    Int first = cur.integer();
    cur.expect(',');
    Int step = cur.integer();
    cur.expect(')');
    return guarded(line, column,
                   [&] { return SetExpr::ap(std::move(first), std::move(step)); });
  }
  if (word == "blocks") {
    cur.expect('(');
    IntervalScheme scheme = parse_scheme_at(cur);
    cur.expect(',');
    SetExpr index = parse_expr_at(cur);
    cur.expect(')');
    return SetExpr::blocks(std::move(scheme), std::move(index));
  }
  if (word == "codes") {
    cur.expect('(');
    Branch branch = cur.branch_literal();
    Int multiplier = 1;
    if (cur.consume(',')) multiplier = cur.integer();
    cur.expect(')');
    return guarded(line, column,
                   [&] { return SetExpr::branch_codes(std::move(branch), std::move(multiplier)); });
  }
  if (word == "union" || word == "inter" || word == "diff") {
    cur.expect('(');
    SetExpr lhs = parse_expr_at(cur);
    cur.expect(',');
    SetExpr rhs = parse_expr_at(cur);
    cur.expect(')');
    if (word == "union") return SetExpr::union_of(std::move(lhs), std::move(rhs));
    if (word == "inter") return SetExpr::inter(std::move(lhs), std::move(rhs));
    return SetExpr::diff(std::move(lhs), std::move(rhs));
  }
  if (word == "compl") {
    cur.expect('(');
    SetExpr inner = parse_expr_at(cur);
    cur.expect(')');
    return SetExpr::complement(std::move(inner));
  }
  if (word == "shift") {
    cur.expect('(');
    SetExpr inner = parse_expr_at(cur);
    cur.expect(',');
    Int offset = cur.integer();
    cur.expect(')');
    return SetExpr::shift(std::move(inner), std::move(offset));
  }
  Cursor::fail_at("unknown expression '" + word + "'", line, column);
}

}  // namespace

SetExpr parse_expr(std::string_view text) {
  Cursor cur(text);
  SetExpr e = parse_expr_at(cur);
  if (!cur.at_end()) cur.fail("trailing input after expression");
  return e;
}

IntervalScheme parse_scheme(std::string_view text) {
  Cursor cur(text);
  IntervalScheme s = parse_scheme_at(cur);
  if (!cur.at_end()) cur.fail("trailing input after scheme");
  return s;
}

std::string print_scheme(const IntervalScheme& s) { return s.text(); }

std::string print_expr(const SetExpr& e) {
  using Kind = SetExpr::Kind;
  switch (e.kind()) {
    case Kind::Empty:
      return "empty";
    case Kind::Full:
      return "full";
    case Kind::Finite: {
      std::string out = "fin{";
      const auto& xs = e.finite_elements();
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ",";
        out += xs[i].get_str();
      }
      return out + "}";
    }
    case Kind::Ap:
      return "ap(" + e.ap_first().get_str() + "," + e.ap_step().get_str() + ")";
    case Kind::Blocks:
      return "blocks(" + print_scheme(e.blocks_scheme()) + ", " + print_expr(e.blocks_index()) +
             ")";
    case Kind::BranchCodes: {
      std::string out = "codes(" + e.branch().text();
      if (e.branch_multiplier() != 1) out += ", " + e.branch_multiplier().get_str();
      return out + ")";
    }
    case Kind::Union:
      return "union(" + print_expr(e.lhs()) + ", " + print_expr(e.rhs()) + ")";
    case Kind::Inter:
      return "inter(" + print_expr(e.lhs()) + ", " + print_expr(e.rhs()) + ")";
    case Kind::Diff:
      return "diff(" + print_expr(e.lhs()) + ", " + print_expr(e.rhs()) + ")";
    case Kind::Complement:
      return "compl(" + print_expr(e.inner()) + ")";
    case Kind::Shift:
      return "shift(" + print_expr(e.inner()) + ", " + e.shift_offset().get_str() + ")";
  }
  return "?";
}

}  // namespace densitylab
