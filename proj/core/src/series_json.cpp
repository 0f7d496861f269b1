#include <cctype>
#include <memory>

#include "barrierlab/dirichlet.hpp"
#include "barrierlab/hp/special.hpp"
#include "json.hpp"

namespace barrierlab {

using namespace hp;

namespace {

struct Node {
  enum Kind { Num, Var, E, Pi, Add, Sub, Mul, Div, Pow, Neg, Call } kind;
  std::string text;  // number literal or function name
  std::shared_ptr<Node> a, b;
};
using NodePtr = std::shared_ptr<Node>;

class Parser {
 public:
  explicit Parser(std::string s) : s_(std::move(s)) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw NumericError(ErrorCode::ParseError, why + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  static NodePtr make(Node::Kind k, NodePtr a = nullptr, NodePtr b = nullptr, std::string t = {}) {
    return std::make_shared<Node>(Node{k, std::move(t), std::move(a), std::move(b)});
  }

  NodePtr expr() {
    NodePtr n = term();
    for (;;) {
      if (eat('+')) {
        n = make(Node::Add, n, term());
      } else if (eat('-')) {
        n = make(Node::Sub, n, term());
      } else {
        return n;
      }
    }
  }
  NodePtr term() {
    NodePtr n = unary();
    for (;;) {
      if (eat('*')) {
        n = make(Node::Mul, n, unary());
      } else if (eat('/')) {
        n = make(Node::Div, n, unary());
      } else {
        return n;
      }
    }
  }
  NodePtr unary() {
    if (eat('-')) return make(Node::Neg, unary());
    if (eat('+')) return unary();
    NodePtr base = atom();
    if (eat('^')) return make(Node::Pow, base, unary());
    return base;
  }
  NodePtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (eat('(')) {
      NodePtr n = expr();
      if (!eat(')')) fail("missing ')'");
      return n;
    }
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
        size_t save = pos_++;
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
          while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        } else {
          pos_ = save;
        }
      }
      return make(Node::Num, nullptr, nullptr, s_.substr(start, pos_ - start));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string id = s_.substr(start, pos_ - start);
      if (id == "k" || id == "n") return make(Node::Var);
      if (id == "e") return make(Node::E);
      if (id == "pi") return make(Node::Pi);
      static const char* funcs[] = {"ln", "log", "exp", "sqrt", "gamma", "rgamma", "lngamma"};
      for (const char* f : funcs) {
        if (id == f) {
          if (!eat('(')) fail("expected '(' after " + id);
          NodePtr arg = expr();
          if (!eat(')')) fail("missing ')'");
          return make(Node::Call, arg, nullptr, id == "log" ? "ln" : id);
        }
      }
      fail("unknown identifier '" + id + "'");
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string s_;
  size_t pos_ = 0;
};

LogMagnitude lm_real(const Real& x) { return LogMagnitude::from_complex(Complex(x)); }

LogMagnitude negate(const LogMagnitude& v) {
  return v.is_zero() ? v : LogMagnitude(v.log_abs(), v.arg() + pi(v.bits()));
}

Real real_value(const LogMagnitude& v, int bits) {
  if (v.is_zero()) return Real(0L, bits);
  return v.to_complex().re();
}

// Products, quotients and the gamma family stay in the log domain, so
// 1/gamma(k) does not underflow for large k.
LogMagnitude eval_log(const Node& n, const Real& k) {
  const int bits = k.bits();
  switch (n.kind) {
    case Node::Num: return lm_real(Real(n.text, bits));
    case Node::Var: return lm_real(k);
    case Node::E: return LogMagnitude(Real(1L, bits), Real(0L, bits));
    case Node::Pi: return lm_real(pi(bits));
    case Node::Add: return eval_log(*n.a, k) + eval_log(*n.b, k);
    case Node::Sub: return eval_log(*n.a, k) + negate(eval_log(*n.b, k));
    case Node::Mul: return eval_log(*n.a, k) * eval_log(*n.b, k);
    case Node::Div: return eval_log(*n.a, k) / eval_log(*n.b, k);
    case Node::Neg: return negate(eval_log(*n.a, k));
    case Node::Pow: {
      LogMagnitude base = eval_log(*n.a, k);
      Real ex = real_value(eval_log(*n.b, k), bits);
      if (base.is_zero()) return ex.is_zero() ? lm_real(Real(1L, bits)) : base;
      return base.pow(ex);
    }
    case Node::Call: {
      LogMagnitude x = eval_log(*n.a, k);
      if (n.text == "ln") {
        if (x.is_zero() || !x.arg().is_zero()) {
          throw NumericError(ErrorCode::OutOfDomain, "ln of a non-positive value");
        }
        return lm_real(x.log_abs());
      }
      if (n.text == "exp") return LogMagnitude(real_value(x, bits), Real(0L, bits));
      if (n.text == "sqrt") return x.pow(Real(0.5, bits));
      Real xv = real_value(x, bits);
      if (n.text == "lngamma") return lm_real(lngamma(xv));
      if (!(xv > 0.0)) {
        Real g = gamma(xv);
        return n.text == "gamma" ? lm_real(g) : lm_real(Real(1L, bits) / g);
      }
      Real lg = lngamma(xv);
      return LogMagnitude(n.text == "gamma" ? lg : -lg, Real(0L, bits));
    }
  }
  throw NumericError(ErrorCode::ParseError, "bad expression node");
}

std::string tag_of(const std::string& s) {
  const std::string prefix = "builtin:";
  return s.rfind(prefix, 0) == 0 ? s.substr(prefix.size()) : std::string();
}

DirichletSeriesSpec builtin_by_tag(const std::string& tag, int m) {
  if (tag == "F") return builtin_F();
  if (tag == "F2") return builtin_F2(m);
  if (tag == "theta") return builtin_theta();
  throw NumericError(ErrorCode::ParseError, "unknown builtin '" + tag + "'");
}

}  // namespace

DirichletSeriesSpec series_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw NumericError(ErrorCode::ParseError, e.what());
  }
  if (!j.is_object()) throw NumericError(ErrorCode::ParseError, "series document must be an object");
  const int m = j.value("m", 0);
  if (j.contains("builtin")) {
    DirichletSeriesSpec s = builtin_by_tag(j.at("builtin").get<std::string>(), m);
    if (j.contains("name")) s.name = j.at("name").get<std::string>();
    return s;
  }
  if (!j.contains("coeff") || !j.contains("exponent")) {
    throw NumericError(ErrorCode::ParseError, "series document needs coeff and exponent");
  }
  DirichletSeriesSpec s;
  s.name = j.value("name", std::string("series"));
  s.first = j.value("first", 1L);
  if (s.first < 1) throw NumericError(ErrorCode::ParseError, "first index must be >= 1");

  const std::string coeff = j.at("coeff").get<std::string>();
  if (std::string tag = tag_of(coeff); !tag.empty()) {
    s.log_coeff = builtin_by_tag(tag, m).log_coeff;
  } else {
    NodePtr ast = Parser(coeff).parse();
    s.log_coeff = [ast](const Real& k) { return eval_log(*ast, k); };
  }
  const std::string expo = j.at("exponent").get<std::string>();
  if (std::string tag = tag_of(expo); !tag.empty()) {
    s.exponent = builtin_by_tag(tag, m).exponent;
  } else {
    NodePtr ast = Parser(expo).parse();
    s.exponent = [ast](const Real& k) { return real_value(eval_log(*ast, k), k.bits()); };
  }
  return s;
}

}  // namespace barrierlab
