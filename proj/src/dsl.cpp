// Line-oriented algebra definition language:
//
//   algebra <name> over <Q|F<p>>
//   basis <name>:s|:n ...
//   mul <b> <b> = <term> (+|-) <term> ...     term = [coef*]<basis>, coef = k or p/q
//   expect +|-
//   cite <free text>
//
// `#` starts a comment. Products that are not listed are zero.

#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "air/catalog.hpp"
#include "air/errors.hpp"

namespace air {

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> split_tokens(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

// Recursive-descent reader for the right-hand side of a `mul` line.
class ExprReader {
 public:
  ExprReader(const std::string& line, std::size_t pos, std::size_t line_no, const AlgebraSpec& spec)
      : s_(line), pos_(pos), line_(line_no), spec_(spec) {}

  std::vector<Term> read() {
    std::vector<Term> terms;
    skip_ws();
    if (at_end()) fail("expected a linear combination after '='");
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
      skip_ws();
    }
    terms.push_back(read_term(negative));
    skip_ws();
    while (!at_end()) {
      if (peek() != '+' && peek() != '-') fail("expected '+' or '-' between terms");
      negative = peek() == '-';
      ++pos_;
      skip_ws();
      terms.push_back(read_term(negative));
      skip_ws();
    }
    return terms;
  }

 private:
  Term read_term(bool negative) {
    if (at_end()) fail("expected a term");
    mpq_class coef = 1;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      const std::size_t num_col = pos_;
      const std::string num = read_digits();
      std::string den = "1";
      if (!at_end() && peek() == '/') {
        ++pos_;
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a denominator");
        den = read_digits();
      }
      if (mpz_class(den) == 0) fail_at(num_col, "zero denominator");
      coef = mpq_class(mpz_class(num), mpz_class(den));
      coef.canonicalize();
      skip_ws();
      if (at_end()) {
        // A bare 0 is the zero product.
        if (coef == 0) return Term{0, ""};
        fail("expected '*' after coefficient");
      }
      if (peek() != '*') {
        if (coef == 0 && (peek() == '+' || peek() == '-')) return Term{0, ""};
        fail("expected '*' after coefficient");
      }
      ++pos_;
      skip_ws();
    }
    const std::size_t name_col = pos_;
    std::string name;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) name += s_[pos_++];
    if (name.empty()) fail("expected a basis name");
    if (!is_identifier(name)) fail_at(name_col, "invalid basis name '" + name + "'");
    if (!spec_.index_of(name)) fail_at(name_col, "unknown basis name '" + name + "'");
    if (negative) coef = -coef;
    return Term{coef, name};
  }

  std::string read_digits() {
    std::string out;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) out += s_[pos_++];
    return out;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& msg) const {
    throw ParseError(line_, pos + 1, msg);
  }

  const std::string& s_;
  std::size_t pos_;
  std::size_t line_;
  const AlgebraSpec& spec_;
};

struct SourceMap {
  std::size_t header_line = 1;
  std::size_t field_column = 1;
  std::size_t basis_line = 1;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> mul_lines;
};

AlgebraSpec parse_impl(std::string_view text, SourceMap& where) {
  AlgebraSpec spec;
  bool have_header = false;
  bool have_basis = false;
  bool have_expect = false;
  bool have_cite = false;
  std::set<std::pair<std::size_t, std::size_t>> seen;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string line = raw.substr(0, raw.find('#'));
    const auto tokens = split_tokens(line);
    if (tokens.empty()) continue;
    const std::string& kw = tokens[0].text;
    auto fail = [&](std::size_t col, const std::string& msg) -> void { throw ParseError(line_no, col, msg); };

    if (!have_header && kw != "algebra") fail(tokens[0].column, "expected 'algebra <name> over <field>' first");
    if (kw == "algebra") {
      if (have_header) fail(tokens[0].column, "duplicate 'algebra' line");
      if (tokens.size() < 2) fail(line.size() + 1, "expected an algebra name");
      if (tokens.size() < 3 || tokens[2].text != "over") {
        fail(tokens.size() < 3 ? line.size() + 1 : tokens[2].column, "expected 'over'");
      }
      if (tokens.size() < 4) fail(line.size() + 1, "expected a field token");
      if (tokens.size() > 4) fail(tokens[4].column, "unexpected text after field token");
      spec.name = tokens[1].text;
      spec.field = tokens[3].text;
      try {
        (void)FieldDesc::parse(spec.field);
      } catch (const Error& e) {
        fail(tokens[3].column, e.what());
      }
      where.header_line = line_no;
      where.field_column = tokens[3].column;
      have_header = true;
    } else if (kw == "basis") {
      if (have_basis) fail(tokens[0].column, "duplicate 'basis' line");
      for (std::size_t t = 1; t < tokens.size(); ++t) {
        const auto& tok = tokens[t];
        const auto colon = tok.text.rfind(':');
        if (colon == std::string::npos) fail(tok.column, "expected <name>:s or <name>:n");
        const std::string name = tok.text.substr(0, colon);
        const std::string role = tok.text.substr(colon + 1);
        if (!is_identifier(name)) fail(tok.column, "invalid basis name '" + name + "'");
        if (role != "s" && role != "n") fail(tok.column + colon + 1, "role must be 's' or 'n'");
        if (spec.index_of(name)) fail(tok.column, "duplicate basis name '" + name + "'");
        spec.basis.push_back({name, role == "s" ? Role::Semisimple : Role::Nilpotent});
      }
      where.basis_line = line_no;
      have_basis = true;
    } else if (kw == "mul") {
      if (!have_basis) fail(tokens[0].column, "'mul' before 'basis'");
      if (tokens.size() < 4) fail(line.size() + 1, "expected 'mul <b> <b> = <terms>'");
      const auto li = spec.index_of(tokens[1].text);
      if (!li) fail(tokens[1].column, "unknown basis name '" + tokens[1].text + "'");
      const auto ri = spec.index_of(tokens[2].text);
      if (!ri) fail(tokens[2].column, "unknown basis name '" + tokens[2].text + "'");
      if (tokens[3].text.rfind('=', 0) != 0) fail(tokens[3].column, "expected '='");
      if (!seen.insert({*li, *ri}).second) {
        fail(tokens[0].column, "duplicate product " + tokens[1].text + " " + tokens[2].text);
      }
      ExprReader reader(line, tokens[3].column, line_no, spec);
      ProductRule rule{tokens[1].text, tokens[2].text, reader.read()};
      std::erase_if(rule.terms, [](const Term& t) { return t.basis.empty(); });
      where.mul_lines[{*li, *ri}] = line_no;
      spec.products.push_back(std::move(rule));
    } else if (kw == "expect") {
      if (have_expect) fail(tokens[0].column, "duplicate 'expect' line");
      if (tokens.size() != 2 || (tokens[1].text != "+" && tokens[1].text != "-")) {
        fail(tokens.size() < 2 ? line.size() + 1 : tokens[1].column, "expected 'expect +' or 'expect -'");
      }
      spec.expected_air = tokens[1].text == "+";
      have_expect = true;
    } else if (kw == "cite") {
      if (have_cite) fail(tokens[0].column, "duplicate 'cite' line");
      std::string rest = line.substr(tokens[0].column - 1 + kw.size());
      const auto b = rest.find_first_not_of(" \t");
      const auto e = rest.find_last_not_of(" \t");
      spec.cite = b == std::string::npos ? "" : rest.substr(b, e - b + 1);
      have_cite = true;
    } else {
      fail(tokens[0].column, "unknown keyword '" + kw + "'");
    }
  }
  if (!have_header) throw ParseError(line_no + 1, 1, "missing 'algebra' line");
  if (!have_basis) throw ParseError(line_no + 1, 1, "missing 'basis' line");
  canonicalize(spec);
  return spec;
}

std::string format_coef(const mpq_class& c) {
  return c.get_den() == 1 ? c.get_num().get_str() : c.get_num().get_str() + "/" + c.get_den().get_str();
}

}  // namespace

AlgebraSpec parse_spec(std::string_view text) {
  SourceMap where;
  return parse_impl(text, where);
}

ParsedAlgebra parse_algebra(std::string_view text, const std::optional<FieldDesc>& field_override) {
  SourceMap where;
  AlgebraSpec spec = parse_impl(text, where);
  const FieldDesc field = field_override ? *field_override : FieldDesc::parse(spec.field);

  // Locate a non-associative triple at the product line that produced it.
  std::vector<std::string> basis_names;
  for (const auto& b : spec.basis) basis_names.push_back(b.name);
  NonassocTable table(field, basis_names);
  for (const auto& rule : spec.products) {
    const std::size_t i = *spec.index_of(rule.left);
    const std::size_t j = *spec.index_of(rule.right);
    for (const auto& t : rule.terms) {
      const std::size_t k = *spec.index_of(t.basis);
      try {
        table.set_coeff(i, j, k, table.coeff(i, j, k) + Scalar::from_rational(field, t.coef));
      } catch (const std::domain_error&) {
        throw ParseError(where.mul_lines[{i, j}], 1,
                         "coefficient " + format_coef(t.coef) + " is undefined in " + field.token());
      }
    }
  }
  if (const auto v = check_associative(table)) {
    const auto& names = table.basis_names();
    const auto [i, j, k] = *v;
    std::size_t line = where.basis_line;
    if (where.mul_lines.count({i, j})) {
      line = where.mul_lines[{i, j}];
    } else if (where.mul_lines.count({j, k})) {
      line = where.mul_lines[{j, k}];
    }
    throw ParseError(line, 1,
                     "multiplication table is not associative: (" + names[i] + " " + names[j] + ") " +
                         names[k] + " != " + names[i] + " (" + names[j] + " " + names[k] + ")");
  }
  try {
    return instantiate(spec, field_override);
  } catch (const Error& e) {
    if (dynamic_cast<const ParseError*>(&e)) throw;
    throw ParseError(where.header_line, where.field_column, e.what());
  }
}

std::string serialize(const AlgebraSpec& spec) {
  std::ostringstream os;
  os << "algebra " << spec.name << " over " << spec.field << "\n";
  os << "basis";
  for (const auto& b : spec.basis) os << ' ' << b.name << (b.role == Role::Semisimple ? ":s" : ":n");
  os << "\n";
  for (const auto& rule : spec.products) {
    os << "mul " << rule.left << ' ' << rule.right << " =";
    bool first = true;
    for (const auto& t : rule.terms) {
      const bool negative = sgn(t.coef) < 0;
      const mpq_class mag = abs(t.coef);
      if (first) {
        os << (negative ? " -" : " ");
      } else {
        os << (negative ? " - " : " + ");
      }
      if (mag != 1) os << format_coef(mag) << '*';
      os << t.basis;
      first = false;
    }
    os << "\n";
  }
  if (spec.expected_air) os << "expect " << (*spec.expected_air ? '+' : '-') << "\n";
  if (!spec.cite.empty()) os << "cite " << spec.cite << "\n";
  return os.str();
}

}  // namespace air
