#include "acheck/polyir.hpp"

#include <cctype>
#include <sstream>

#include "acheck/errors.hpp"

namespace acheck {

namespace {

enum class Tok { Ident, Number, Symbol, End };

struct Token {
  Tok kind;
  std::string text;
  std::uint64_t line;
};

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  std::uint64_t line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i + 1;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' || text[j] == '.' ||
                                 text[j] == '[' || text[j] == ']')) {
        ++j;
      }
      out.push_back({Tok::Ident, text.substr(i, j - i), line});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Tok::Number, text.substr(i, j - i), line});
      i = j;
    } else if (std::string("+-*^()=;,").find(c) != std::string::npos) {
      out.push_back({Tok::Symbol, std::string(1, c), line});
      ++i;
    } else {
      throw FormatError(std::string("polyir: unexpected character '") + c + "'", line);
    }
  }
  out.push_back({Tok::End, "", line});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, Prime fallback) : toks_(std::move(toks)), fallback_(std::move(fallback)) {}

  ConstraintSystem run() {
    Prime prime = fallback_;
    if (peek_is(Tok::Ident, "prime")) {
      std::uint64_t line = next().line;
      Token num = expect(Tok::Number, "prime modulus");
      try {
        prime = Prime(num.text);
      } catch (const UsageError& e) {
        throw FormatError(std::string("polyir: ") + e.what(), line);
      }
      expect_symbol(";");
    }
    sys_.emplace(prime);
    while (peek().kind != Tok::End) statement();
    return reduce_degree(*sys_, 64);
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool peek_is(Tok k, const std::string& text) const { return peek().kind == k && peek().text == text; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  Token expect(Tok k, const char* what) {
    if (peek().kind != k) throw FormatError(std::string("polyir: expected ") + what + ", got '" + peek().text + "'", peek().line);
    return next();
  }

  void expect_symbol(const std::string& s) {
    if (!peek_is(Tok::Symbol, s)) throw FormatError("polyir: expected '" + s + "', got '" + peek().text + "'", peek().line);
    next();
  }

  void statement() {
    Token kw = expect(Tok::Ident, "statement keyword");
    if (kw.text == "input" || kw.text == "output" || kw.text == "temp") {
      VarKind kind = kw.text == "input" ? VarKind::Known : kw.text == "output" ? VarKind::Output : VarKind::Temp;
      for (;;) {
        Token id = expect(Tok::Ident, "identifier");
        if (sys_->find(id.text)) throw FormatError("polyir: duplicate declaration of '" + id.text + "'", id.line);
        sys_->add_variable(id.text, kind);
        if (!peek_is(Tok::Symbol, ",")) break;
        next();
      }
      expect_symbol(";");
    } else if (kw.text == "eq") {
      Polynomial lhs = expr();
      if (peek_is(Tok::Symbol, "=")) {
        next();
        lhs -= expr();
      }
      expect_symbol(";");
      sys_->add_constraint(std::move(lhs));
    } else if (kw.text == "prime") {
      throw FormatError("polyir: prime must be the first statement", kw.line);
    } else {
      throw FormatError("polyir: unknown statement '" + kw.text + "'", kw.line);
    }
  }

  Polynomial expr() {
    Polynomial acc = term();
    while (peek_is(Tok::Symbol, "+") || peek_is(Tok::Symbol, "-")) {
      bool plus = next().text == "+";
      Polynomial rhs = term();
      if (plus) {
        acc += rhs;
      } else {
        acc -= rhs;
      }
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (peek_is(Tok::Symbol, "*")) {
      next();
      acc = acc * unary();
    }
    return acc;
  }

  Polynomial unary() {
    if (peek_is(Tok::Symbol, "-")) {
      next();
      return -unary();
    }
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (peek_is(Tok::Symbol, "^")) {
      next();
      Token e = expect(Tok::Number, "exponent");
      unsigned long exp = 0;
      try {
        exp = std::stoul(e.text);
      } catch (const std::exception&) {
        throw FormatError("polyir: exponent too large", e.line);
      }
      if (exp == 0 || exp > 1024) throw FormatError("polyir: exponent must be in 1..1024", e.line);
      return base.pow(static_cast<std::uint32_t>(exp));
    }
    return base;
  }

  Polynomial atom() {
    const Prime& p = sys_->prime();
    if (peek().kind == Tok::Number) {
      return Polynomial::constant(FieldElement(p, mpz_class(next().text)));
    }
    if (peek().kind == Tok::Ident) {
      Token id = next();
      auto v = sys_->find(id.text);
      if (!v) throw FormatError("polyir: undeclared variable '" + id.text + "'", id.line);
      return Polynomial::variable(p, *v);
    }
    if (peek_is(Tok::Symbol, "(")) {
      next();
      Polynomial inner = expr();
      expect_symbol(")");
      return inner;
    }
    throw FormatError("polyir: unexpected '" + peek().text + "' in expression", peek().line);
  }

  std::vector<Token> toks_;
  Prime fallback_;
  std::size_t pos_ = 0;
  std::optional<ConstraintSystem> sys_;
};

std::string print_coeff_term(const FieldElement& c, const Monomial& m, const ConstraintSystem& sys, bool first) {
  mpz_class v = c.value();
  mpz_class half = sys.prime().value() / 2;
  bool negative = v > half;
  if (negative) v = sys.prime().value() - v;
  std::string s;
  if (first) {
    s = negative ? "-" : "";
  } else {
    s = negative ? " - " : " + ";
  }
  if (m.is_one()) return s + v.get_str();
  if (v != 1) s += v.get_str() + "*";
  return s + m.to_string(sys.namer());
}

}  // namespace

ConstraintSystem parse_polyir(const std::string& text, const std::optional<Prime>& default_prime) {
  return Parser(lex(text), default_prime ? *default_prime : Prime::bn254()).run();
}

std::string print_polyir(const ConstraintSystem& sys) {
  std::ostringstream os;
  os << "prime " << sys.prime().to_string() << ";\n";
  for (const auto& v : sys.variables()) {
    const char* kw = v.id.kind == VarKind::Known ? "input" : v.id.kind == VarKind::Output ? "output" : "temp";
    os << kw << " " << v.name << ";\n";
  }
  for (const auto& p : sys.constraints()) {
    os << "eq ";
    if (p.is_zero()) {
      os << "0";
    } else {
      bool first = true;
      for (const auto& [m, c] : p.sorted_terms(MonomialOrder::grevlex())) {
        os << print_coeff_term(c, m, sys, first);
        first = false;
      }
    }
    os << ";\n";
  }
  return os.str();
}

}  // namespace acheck
