#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>

#include "tlk/cli.hpp"
#include "tlk/recoupling.hpp"
#include "tlk/serialize.hpp"

namespace tlk::cli {

ParseError::ParseError(const std::string& msg, int line, int column)
    : std::invalid_argument(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

class Scanner {
 public:
  explicit Scanner(std::string_view text) : s_(text) {}

  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  int line() const { return line_; }
  int column() const { return col_; }

  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }
  bool consume(std::string_view word) {
    if (s_.substr(pos_, word.size()) != word) return false;
    for (std::size_t j = 0; j < word.size(); ++j) advance();
    return true;
  }
  void expect(std::string_view word) {
    if (!consume(word)) fail("expected '" + std::string(word) + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    std::string found = at_end() ? "end of input" : "'" + std::string(1, peek()) + "'";
    throw ParseError(msg + ", found " + found, line_, col_);
  }

  long integer(bool allow_sign) {
    const std::size_t start = pos_;
    if (allow_sign && (peek() == '-' || peek() == '+')) advance();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer");
    while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
    long v = 0;
    const char* first = s_.data() + start + (s_[start] == '+' ? 1 : 0);
    const auto [ptr, ec] = std::from_chars(first, s_.data() + pos_, v);
    if (ec != std::errc() || ptr != s_.data() + pos_ || v > 1'000'000 || v < -1'000'000)
      throw ParseError("integer out of range", line_, col_);
    return v;
  }

  mpz_class big_integer() {
    const std::size_t start = pos_;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer");
    while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

std::vector<TangleTerm> parse_terms(Scanner& sc, bool nested) {
  std::vector<TangleTerm> out;
  sc.skip_space();
  while (!sc.at_end() && !(nested && sc.peek() == ')')) {
    TangleTerm t{TangleTerm::Kind::Sigma, 0, {}, sc.line(), sc.column()};
    auto bracketed = [&](TangleTerm::Kind kind, bool allow_sign) {
      t.kind = kind;
      t.value = static_cast<int>(sc.integer(allow_sign));
      sc.expect(")");
    };
    if (sc.consume("twist(")) {
      bracketed(TangleTerm::Kind::Twist, true);
    } else if (sc.consume("jw(")) {
      bracketed(TangleTerm::Kind::JonesWenzl, false);
      if (t.value < 1) throw ParseError("jw needs at least one strand", t.line, t.column);
    } else if (sc.consume("e(")) {
      bracketed(TangleTerm::Kind::E, false);
      if (t.value < 1) throw ParseError("generator indices start at 1", t.line, t.column);
    } else if (sc.consume("s")) {
      t.value = static_cast<int>(sc.integer(false));
      if (t.value < 1) throw ParseError("generator indices start at 1", t.line, t.column);
      if (sc.consume("^")) {
        sc.expect("-1");
        t.kind = TangleTerm::Kind::SigmaInverse;
      }
    } else if (sc.consume("(")) {
      t.kind = TangleTerm::Kind::Group;
      t.group = parse_terms(sc, true);
      if (t.group.empty()) throw ParseError("empty group", t.line, t.column);
      sc.expect(")");
    } else {
      sc.fail("expected a term");
    }
    if (!sc.at_end() && !std::isspace(static_cast<unsigned char>(sc.peek())) && sc.peek() != '(' &&
        sc.peek() != ')' && sc.peek() != 's' && sc.peek() != 'e' && sc.peek() != 'j' && sc.peek() != 't')
      sc.fail("unexpected character");
    out.push_back(std::move(t));
    sc.skip_space();
  }
  return out;
}

void print_terms(const std::vector<TangleTerm>& ts, std::string& out) {
  for (std::size_t j = 0; j < ts.size(); ++j) {
    if (j) out += ' ';
    const auto& t = ts[j];
    switch (t.kind) {
      case TangleTerm::Kind::Sigma: out += "s" + std::to_string(t.value); break;
      case TangleTerm::Kind::SigmaInverse: out += "s" + std::to_string(t.value) + "^-1"; break;
      case TangleTerm::Kind::E: out += "e(" + std::to_string(t.value) + ")"; break;
      case TangleTerm::Kind::JonesWenzl: out += "jw(" + std::to_string(t.value) + ")"; break;
      case TangleTerm::Kind::Twist: out += "twist(" + std::to_string(t.value) + ")"; break;
      case TangleTerm::Kind::Group:
        out += '(';
        print_terms(t.group, out);
        out += ')';
        break;
    }
  }
}

struct Extent {
  int max_index = 0;
  std::optional<int> jw;
};

void scan_extent(const std::vector<TangleTerm>& ts, Extent& ex) {
  for (const auto& t : ts) {
    switch (t.kind) {
      case TangleTerm::Kind::Sigma:
      case TangleTerm::Kind::SigmaInverse:
      case TangleTerm::Kind::E: ex.max_index = std::max(ex.max_index, t.value); break;
      case TangleTerm::Kind::JonesWenzl:
        if (ex.jw && *ex.jw != t.value)
          throw ParseError("jw(" + std::to_string(t.value) + ") does not match jw(" + std::to_string(*ex.jw) +
                               ") earlier in the composition",
                           t.line, t.column);
        ex.jw = t.value;
        break;
      case TangleTerm::Kind::Twist: break;
      case TangleTerm::Kind::Group: scan_extent(t.group, ex); break;
    }
  }
}

void check_indices(const std::vector<TangleTerm>& ts, int strands) {
  for (const auto& t : ts) {
    if (t.kind == TangleTerm::Kind::Group) {
      check_indices(t.group, strands);
    } else if ((t.kind == TangleTerm::Kind::Sigma || t.kind == TangleTerm::Kind::SigmaInverse ||
                t.kind == TangleTerm::Kind::E) &&
               t.value >= strands) {
      throw ParseError("generator " + std::to_string(t.value) + " needs " + std::to_string(t.value + 1) +
                           " strands but the composition has " + std::to_string(strands),
                       t.line, t.column);
    } else if (t.kind == TangleTerm::Kind::JonesWenzl && t.value != strands) {
      throw ParseError("jw(" + std::to_string(t.value) + ") on " + std::to_string(strands) + " strands", t.line,
                       t.column);
    } else if (t.kind == TangleTerm::Kind::Twist && strands < 2) {
      throw ParseError("twist needs at least two strands", t.line, t.column);
    }
  }
}

BraidWord full_twist_word(int k, int m) {
  BraidWord w{k, {}};
  for (int r = 0; r < std::abs(m) * k; ++r)
    for (int j = 1; j < k; ++j) w.letters.push_back(j);
  if (m < 0) {
    std::reverse(w.letters.begin(), w.letters.end());
    for (int& l : w.letters) l = -l;
  }
  return w;
}

// Caps and cups joining block j to block j+1, each block `color` points wide.
SkeinElement colored_e(int j, int strands, int color) {
  const int n = strands * color;
  std::vector<int> partner(static_cast<std::size_t>(2 * n));
  for (int p = 0; p < n; ++p) {
    partner[static_cast<std::size_t>(p)] = n + p;
    partner[static_cast<std::size_t>(n + p)] = p;
  }
  const int mid = j * color;
  for (int r = 0; r < color; ++r) {
    const int a = mid - 1 - r, b = mid + r;
    partner[static_cast<std::size_t>(a)] = b;
    partner[static_cast<std::size_t>(b)] = a;
    partner[static_cast<std::size_t>(n + a)] = n + b;
    partner[static_cast<std::size_t>(n + b)] = n + a;
  }
  return SkeinElement(Diagram(n, n, partner));
}

void append_word(const std::vector<TangleTerm>& ts, int strands, BraidWord& w, bool& ok) {
  for (const auto& t : ts) {
    switch (t.kind) {
      case TangleTerm::Kind::Sigma: w.letters.push_back(t.value); break;
      case TangleTerm::Kind::SigmaInverse: w.letters.push_back(-t.value); break;
      case TangleTerm::Kind::Twist: {
        const BraidWord ft = full_twist_word(strands, t.value);
        w.letters.insert(w.letters.end(), ft.letters.begin(), ft.letters.end());
        break;
      }
      case TangleTerm::Kind::Group: append_word(t.group, strands, w, ok); break;
      default: ok = false; return;
    }
  }
}

SkeinElement evaluate_terms(const std::vector<TangleTerm>& ts, int strands, int color, SkeinElement acc) {
  for (const auto& t : ts) {
    switch (t.kind) {
      case TangleTerm::Kind::Sigma:
      case TangleTerm::Kind::SigmaInverse: {
        const int letter = t.kind == TangleTerm::Kind::Sigma ? t.value : -t.value;
        acc = compose(braid_to_skein(cable(BraidWord{strands, {letter}}, color)), acc);
        break;
      }
      case TangleTerm::Kind::E: acc = compose(colored_e(t.value, strands, color), acc); break;
      case TangleTerm::Kind::JonesWenzl:
        if (color != 1)
          throw ParseError("jw(n) is only available with color 1; colored strands already carry projectors", t.line,
                           t.column);
        acc = compose(jones_wenzl(t.value), acc);
        break;
      case TangleTerm::Kind::Twist:
        if (t.value != 0) acc = compose(braid_to_skein(cable(full_twist_word(strands, t.value), color)), acc);
        break;
      case TangleTerm::Kind::Group: acc = evaluate_terms(t.group, strands, color, std::move(acc)); break;
    }
  }
  return acc;
}

// Polynomials in A and z with rational coefficients.
using Bi = std::map<std::pair<std::int64_t, std::int64_t>, mpq_class>;

Bi bi_mul(const Bi& x, const Bi& y) {
  Bi r;
  for (const auto& [kx, cx] : x)
    for (const auto& [ky, cy] : y) r[{kx.first + ky.first, kx.second + ky.second}] += cx * cy;
  std::erase_if(r, [](const auto& p) { return p.second == 0; });
  return r;
}

Bi bi_add(Bi x, const Bi& y, int sign) {
  for (const auto& [k, c] : y) x[k] += sign * c;
  std::erase_if(x, [](const auto& p) { return p.second == 0; });
  return x;
}

Bi parse_sum(Scanner& sc, int depth);

Bi parse_factor(Scanner& sc, int depth) {
  sc.skip_space();
  Bi f;
  if (std::isdigit(static_cast<unsigned char>(sc.peek()))) {
    mpq_class c(sc.big_integer());
    sc.skip_space();
    if (sc.consume("/")) {
      sc.skip_space();
      const int line = sc.line(), col = sc.column();
      const mpz_class d = sc.big_integer();
      if (d == 0) throw ParseError("zero denominator", line, col);
      c = mpq_class(c.get_num(), d);
      c.canonicalize();
    }
    if (c != 0) f[{0, 0}] = c;
    return f;
  }
  if (sc.peek() == 'A' || sc.peek() == 'z') {
    const bool is_a = sc.peek() == 'A';
    sc.advance();
    long e = 1;
    sc.skip_space();
    if (sc.consume("^")) {
      sc.skip_space();
      e = sc.integer(true);
    }
    f[is_a ? std::make_pair(std::int64_t{e}, std::int64_t{0}) : std::make_pair(std::int64_t{0}, std::int64_t{e})] =
        1;
    return f;
  }
  if (sc.peek() == '(') {
    if (depth > 64) sc.fail("nesting too deep");
    sc.advance();
    f = parse_sum(sc, depth + 1);
    sc.skip_space();
    sc.expect(")");
    sc.skip_space();
    if (sc.consume("^")) {
      sc.skip_space();
      const int line = sc.line(), col = sc.column();
      const long e = sc.integer(false);
      if (e > 1000) throw ParseError("exponent too large", line, col);
      Bi p{{{0, 0}, 1}};
      for (long r = 0; r < e; ++r) p = bi_mul(p, f);
      f = std::move(p);
    }
    return f;
  }
  sc.fail("expected a number, A, z or '('");
}

Bi parse_product(Scanner& sc, int depth) {
  Bi p = parse_factor(sc, depth);
  for (;;) {
    sc.skip_space();
    const char c = sc.peek();
    if (c == '*') {
      sc.advance();
    } else if (!(c == 'A' || c == 'z' || c == '(' || std::isdigit(static_cast<unsigned char>(c)))) {
      return p;
    }
    p = bi_mul(p, parse_factor(sc, depth));
  }
}

Bi parse_sum(Scanner& sc, int depth) {
  sc.skip_space();
  int sign = 1;
  if (sc.consume("-")) sign = -1;
  else sc.consume("+");
  Bi s = bi_add({}, parse_product(sc, depth), sign);
  for (;;) {
    sc.skip_space();
    if (sc.consume("+")) sign = 1;
    else if (sc.consume("-")) sign = -1;
    else return s;
    s = bi_add(std::move(s), parse_product(sc, depth), sign);
  }
}

}  // namespace

TangleExpr parse_tangle(std::string_view text) {
  Scanner sc(text);
  TangleExpr e{parse_terms(sc, false)};
  if (!sc.at_end()) sc.fail("unbalanced ')'");
  if (e.terms.empty()) throw ParseError("empty tangle expression", sc.line(), sc.column());
  return e;
}

std::string to_string(const TangleExpr& e) {
  std::string out;
  print_terms(e.terms, out);
  return out;
}

int strand_count(const TangleExpr& e, std::optional<int> hint) {
  Extent ex;
  scan_extent(e.terms, ex);
  int n = ex.jw ? *ex.jw : hint ? *hint : ex.max_index + 1;
  if (n < 1) throw std::invalid_argument("strand count must be positive");
  check_indices(e.terms, n);
  return n;
}

SkeinElement evaluate_tangle(const TangleExpr& e, int strands, int color) {
  if (color < 1) throw std::invalid_argument("evaluate_tangle: color must be positive");
  check_indices(e.terms, strands);
  if (strands * color > kOracleStrandBudget)
    throw std::length_error("evaluate_tangle: " + std::to_string(strands * color) +
                            " cabled strands exceed the budget of " + std::to_string(kOracleStrandBudget));
  SkeinElement x = evaluate_terms(e.terms, strands, color, SkeinElement::identity(strands * color));
  return color == 1 ? x : color_embed(x, strands, color);
}

std::optional<BraidWord> as_braid_word(const TangleExpr& e, int strands) {
  BraidWord w{strands, {}};
  bool ok = true;
  append_word(e.terms, strands, w, ok);
  if (!ok) return std::nullopt;
  return w;
}

BivariatePoly parse_polynomial(std::string_view text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
      throw std::invalid_argument(std::string("polynomial JSON: ") + err.what());
    }
    if (j.is_array() && !j.empty() && j[0].is_array() && j[0].size() == 3) {
      const LaurentPoly p = laurent_from_json(j);
      return BivariatePoly::from_z_coefficients({p});
    }
    return bivariate_from_json(j);
  }
  Scanner sc(text);
  const Bi f = parse_sum(sc, 0);
  sc.skip_space();
  if (!sc.at_end()) sc.fail("unexpected input after polynomial");
  BivariatePoly out;
  for (const auto& [k, c] : f) out.add(k.first, k.second, c);
  return out;
}

}  // namespace tlk::cli
