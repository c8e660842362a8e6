#include <cctype>
#include <optional>

#include "cansym/vector_field.hpp"

namespace cansym {

namespace {

struct Token {
  enum class Kind { Number, Ident, Symbol, End } kind = Kind::End;
  std::string text;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
    } else if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Kind::Number, std::string(s.substr(i, j - i))});
      i = j;
    } else if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      out.push_back({Token::Kind::Ident, std::string(s.substr(i, j - i))});
      i = j;
    } else if (std::string_view("+-*/^()").find(static_cast<char>(c)) != std::string_view::npos) {
      out.push_back({Token::Kind::Symbol, std::string(1, static_cast<char>(c))});
      ++i;
    } else {
      throw InputError("unexpected character '" + std::string(1, static_cast<char>(c)) +
                       "' in '" + std::string(s) + "'");
    }
  }
  out.push_back({Token::Kind::End, ""});
  return out;
}

// Either a scalar or a vector field; fields carry components (t, x..., w).
struct Value {
  bool is_field = false;
  ScalarExpr scalar;
  VectorField field;
};

class Parser {
 public:
  Parser(std::string_view text, int n, bool has_w, const std::map<std::string, Rational>& params)
      : text_(text), tokens_(tokenize(text)), n_(n), has_w_(has_w), params_(params) {}

  Value parse() {
    Value v = expr();
    if (peek().kind != Token::Kind::End) fail("trailing input at '" + peek().text + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw InputError("cannot parse '" + std::string(text_) + "': " + why);
  }

  const Token& peek() const { return tokens_[pos_]; }
  bool accept(const char* sym) {
    if (peek().kind == Token::Kind::Symbol && peek().text == sym) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(const char* sym) {
    if (!accept(sym)) fail(std::string("expected '") + sym + "'");
  }

  Value add(Value a, const Value& b, bool subtract) {
    if (a.is_field != b.is_field) {
      // A literal zero may stand next to a field.
      if (!a.is_field && a.scalar.is_zero()) return subtract ? negate(b) : b;
      if (!b.is_field && b.scalar.is_zero()) return a;
      fail("cannot add a scalar and a vector field");
    }
    if (a.is_field)
      subtract ? a.field -= b.field : a.field += b.field;
    else
      subtract ? a.scalar -= b.scalar : a.scalar += b.scalar;
    return a;
  }

  Value negate(Value v) {
    if (v.is_field)
      v.field = ScalarExpr(-1) * v.field;
    else
      v.scalar *= Rational(-1);
    return v;
  }

  Value multiply(const Value& a, const Value& b) {
    if (a.is_field && b.is_field) fail("product of two vector fields");
    Value r;
    if (a.is_field || b.is_field) {
      r.is_field = true;
      r.field = a.is_field ? b.scalar * a.field : a.scalar * b.field;
    } else {
      r.scalar = a.scalar * b.scalar;
    }
    return r;
  }

  Value expr() {
    Value v;
    bool have = false;
    while (true) {
      bool subtract = false;
      if (have) {
        if (accept("+"))
          subtract = false;
        else if (accept("-"))
          subtract = true;
        else
          break;
      }
      Value t = term();
      v = have ? add(std::move(v), t, subtract) : std::move(t);
      have = true;
    }
    return v;
  }

  Value term() {
    Value v = unary();
    while (true) {
      if (accept("*")) {
        v = multiply(v, unary());
      } else if (accept("/")) {
        Value d = unary();
        if (d.is_field || !d.scalar.is_constant() || d.scalar.is_zero())
          fail("division only by a nonzero constant");
        const Rational inv = 1 / d.scalar.constant_value();
        if (v.is_field)
          v.field = ScalarExpr(inv) * v.field;
        else
          v.scalar *= inv;
      } else {
        break;
      }
    }
    return v;
  }

  Value unary() {
    if (accept("-")) return negate(unary());
    if (accept("+")) return unary();
    return power();
  }

  Value power() {
    Value base = primary();
    if (accept("^")) {
      bool neg = accept("-");
      if (peek().kind != Token::Kind::Number) fail("exponent must be an integer literal");
      const int k = std::stoi(tokens_[pos_++].text);
      if (neg) fail("negative exponent");
      if (base.is_field) fail("power of a vector field");
      base.scalar = base.scalar.pow(k);
    }
    return base;
  }

  std::optional<Var> coordinate(const std::string& id) const {
    if (id == "t") return Var::t();
    if (id == "w") {
      if (!has_w_) fail("coordinate w is not part of this system");
      return Var::w();
    }
    if (n_ <= 3) {
      static const char* kShort[] = {"x", "y", "z"};
      for (int i = 0; i < n_; ++i)
        if (id == kShort[i]) return Var::x(i);
    }
    if (id.size() > 1 && id[0] == 'x' &&
        id.find_first_not_of("0123456789", 1) == std::string::npos) {
      const int i = std::stoi(id.substr(1)) - 1;
      if (i < 0 || i >= n_) fail("coordinate " + id + " out of range");
      return Var::x(i);
    }
    return std::nullopt;
  }

  Value primary() {
    const Token tok = peek();
    if (tok.kind == Token::Kind::Number) {
      ++pos_;
      Value v;
      v.scalar = ScalarExpr(Rational(Integer(tok.text, 10)));
      return v;
    }
    if (accept("(")) {
      Value v = expr();
      expect(")");
      return v;
    }
    if (tok.kind != Token::Kind::Ident) fail("unexpected '" + tok.text + "'");
    ++pos_;
    const std::string& id = tok.text;

    if (id == "exp" || id == "sin" || id == "cos") {
      expect("(");
      Value arg = expr();
      expect(")");
      Rational c;
      if (arg.is_field || !arg.scalar.is_rational_multiple_of_w(c))
        fail(id + "() argument must be a rational multiple of w");
      if (!has_w_) fail(id + "() needs the coordinate w");
      Value v;
      v.scalar = id == "exp" ? ScalarExpr::exp_w(c)
                 : id == "sin" ? ScalarExpr::sin_w(c)
                               : ScalarExpr::cos_w(c);
      return v;
    }
    if (id.size() >= 2 && id[0] == 'D') {
      std::string rest = id.substr(1);
      if (!rest.empty() && rest[0] == '_') rest.erase(0, 1);
      auto var = coordinate(rest);
      if (!var) fail("unknown derivative operator " + id);
      Value v;
      v.is_field = true;
      v.field = VectorField(n_);
      v.field.component(*var) = 1;
      return v;
    }
    if (auto var = coordinate(id)) {
      Value v;
      v.scalar = ScalarExpr::variable(*var);
      return v;
    }
    if (auto it = params_.find(id); it != params_.end()) {
      Value v;
      v.scalar = ScalarExpr(it->second);
      return v;
    }
    fail("unknown identifier '" + id + "'");
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int n_;
  bool has_w_;
  const std::map<std::string, Rational>& params_;
};

}  // namespace

VectorField parse_field(std::string_view text, int n, bool has_w,
                        const std::map<std::string, Rational>& params) {
  Value v = Parser(text, n, has_w, params).parse();
  if (!v.is_field) {
    if (v.scalar.is_zero()) return VectorField(n);
    throw InputError("'" + std::string(text) + "' is a scalar, not a vector field");
  }
  return v.field;
}

ScalarExpr parse_scalar(std::string_view text, int n, bool has_w,
                        const std::map<std::string, Rational>& params) {
  Value v = Parser(text, n, has_w, params).parse();
  if (v.is_field) throw InputError("'" + std::string(text) + "' is a vector field, not a scalar");
  return v.scalar;
}

}  // namespace cansym
