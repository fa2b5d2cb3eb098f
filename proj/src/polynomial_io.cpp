#include "polynomial_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <json.hpp>

#include "errors.hpp"

namespace projcurv {

namespace {

using nlohmann::json;

double require_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw ParseError(std::string("polynomial JSON: missing numeric field '") + key + "'");
  return j[key].get<double>();
}

// --- text shorthand ---------------------------------------------------------

struct TextCursor {
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool done() const { return pos >= s.size(); }
  char peek() const { return s[pos]; }
};

double parse_real(TextCursor& cur) {
  cur.skip_ws();
  const char* begin = cur.s.c_str() + cur.pos;
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin) throw ParseError("expected a number at '" + cur.s.substr(cur.pos) + "'");
  cur.pos += static_cast<size_t>(end - begin);
  return value;
}

// "(a+bi)" with b optional sign, "a" alone, "bi" alone, bare "i"/"-i"
std::complex<double> parse_paren_complex(TextCursor& cur) {
  cur.skip_ws();
  if (cur.done() || cur.peek() != '(') throw ParseError("expected '('");
  ++cur.pos;
  double re = 0.0, im = 0.0;

  cur.skip_ws();
  bool first_is_i = false;
  double first = 1.0;
  if (!cur.done() && (cur.peek() == 'i')) {
    first_is_i = true;
    ++cur.pos;
  } else {
    first = parse_real(cur);
    cur.skip_ws();
    if (!cur.done() && cur.peek() == 'i') {
      first_is_i = true;
      ++cur.pos;
    }
  }
  if (first_is_i)
    im = first;
  else
    re = first;

  cur.skip_ws();
  if (!cur.done() && (cur.peek() == '+' || cur.peek() == '-')) {
    const double sign = (cur.peek() == '-') ? -1.0 : 1.0;
    ++cur.pos;
    cur.skip_ws();
    double second = 1.0;
    bool second_is_i = false;
    if (!cur.done() && cur.peek() == 'i') {
      second_is_i = true;
      ++cur.pos;
    } else {
      second = parse_real(cur);
      cur.skip_ws();
      if (!cur.done() && cur.peek() == 'i') {
        second_is_i = true;
        ++cur.pos;
      }
    }
    if (!second_is_i)
      throw ParseError("complex literal: second part must be imaginary (end with 'i')");
    im = sign * second;
  }
  cur.skip_ws();
  if (cur.done() || cur.peek() != ')') throw ParseError("complex literal: expected ')'");
  ++cur.pos;
  return {re, im};
}

struct ParsedTerm {
  std::complex<double> coefficient{1.0, 0.0};
  std::vector<std::pair<int, int>> powers;  // (variable index, exponent)
};

// one term: factors separated by '*'; each factor is a coefficient literal or zK[^E]
ParsedTerm parse_term(TextCursor& cur) {
  ParsedTerm term;
  bool expect_factor = true;
  while (expect_factor) {
    cur.skip_ws();
    if (cur.done()) throw ParseError("unexpected end of polynomial text");
    const char c = cur.peek();
    if (c == '(') {
      term.coefficient *= parse_paren_complex(cur);
    } else if (c == 'z' || c == 'Z') {
      ++cur.pos;
      if (cur.done() || !std::isdigit(static_cast<unsigned char>(cur.peek())))
        throw ParseError("variable must be 'z' followed by an index");
      int index = 0;
      while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek()))) {
        index = index * 10 + (cur.peek() - '0');
        ++cur.pos;
      }
      int exponent = 1;
      cur.skip_ws();
      if (!cur.done() && cur.peek() == '^') {
        ++cur.pos;
        cur.skip_ws();
        if (cur.done() || !std::isdigit(static_cast<unsigned char>(cur.peek())))
          throw ParseError("expected an integer exponent after '^'");
        exponent = 0;
        while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek()))) {
          exponent = exponent * 10 + (cur.peek() - '0');
          ++cur.pos;
        }
      }
      term.powers.emplace_back(index, exponent);
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      term.coefficient *= parse_real(cur);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "' in polynomial text");
    }
    cur.skip_ws();
    if (!cur.done() && cur.peek() == '*') {
      ++cur.pos;
      expect_factor = true;
    } else {
      expect_factor = false;
    }
  }
  return term;
}

}  // namespace

HomogeneousPolynomial polynomial_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("polynomial JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("num_vars") || !j.contains("degree") ||
      !j.contains("terms") || !j["terms"].is_array())
    throw ParseError("polynomial JSON: expected {num_vars, degree, terms[]}");
  const int num_vars = j["num_vars"].get<int>();
  const int degree = j["degree"].get<int>();

  std::vector<HomogeneousPolynomial::Term> terms;
  for (const auto& jt : j["terms"]) {
    if (!jt.is_object() || !jt.contains("exponents") || !jt["exponents"].is_array())
      throw ParseError("polynomial JSON: each term needs an 'exponents' array");
    HomogeneousPolynomial::Term term;
    for (const auto& e : jt["exponents"]) {
      if (!e.is_number_integer()) throw ParseError("polynomial JSON: exponents must be integers");
      term.exponents.push_back(e.get<int>());
    }
    term.coefficient = {require_number(jt, "re"), require_number(jt, "im")};
    terms.push_back(std::move(term));
  }
  try {
    return HomogeneousPolynomial(num_vars, degree, std::move(terms));
  } catch (const InvalidArgumentError& e) {
    throw ParseError(std::string("polynomial JSON: ") + e.what());
  }
}

std::string polynomial_to_json(const HomogeneousPolynomial& poly) {
  json j;
  j["num_vars"] = poly.num_vars();
  j["degree"] = poly.degree();
  j["terms"] = json::array();
  for (const auto& term : poly.terms()) {
    json jt;
    jt["exponents"] = term.exponents;
    jt["re"] = term.coefficient.real();
    jt["im"] = term.coefficient.imag();
    j["terms"].push_back(std::move(jt));
  }
  return j.dump();
}

HomogeneousPolynomial polynomial_from_text(const std::string& text, int num_vars) {
  TextCursor cur{text};
  std::vector<std::pair<std::complex<double>, std::vector<std::pair<int, int>>>> raw;

  bool first = true;
  while (true) {
    cur.skip_ws();
    if (cur.done()) break;
    double sign = 1.0;
    if (cur.peek() == '+' || cur.peek() == '-') {
      if (first && cur.peek() == '+')
        throw ParseError("polynomial text must not start with '+'");
      sign = (cur.peek() == '-') ? -1.0 : 1.0;
      ++cur.pos;
    } else if (!first) {
      throw ParseError("expected '+' or '-' between terms");
    }
    ParsedTerm term = parse_term(cur);
    raw.emplace_back(sign * term.coefficient, std::move(term.powers));
    first = false;
  }
  if (raw.empty()) throw ParseError("empty polynomial text");

  int max_index = -1;
  for (const auto& [coeff, powers] : raw)
    for (const auto& [index, exponent] : powers) max_index = std::max(max_index, index);
  const int nv = (num_vars >= 0) ? num_vars : max_index + 1;
  if (nv < 1) throw ParseError("could not infer the number of variables");
  if (max_index >= nv)
    throw ParseError("variable index exceeds the declared number of variables");

  int degree = -1;
  std::vector<HomogeneousPolynomial::Term> terms;
  for (auto& [coeff, powers] : raw) {
    HomogeneousPolynomial::Term term;
    term.coefficient = coeff;
    term.exponents.assign(nv, 0);
    int total = 0;
    for (const auto& [index, exponent] : powers) {
      term.exponents[index] += exponent;
      total += exponent;
    }
    if (degree < 0)
      degree = total;
    else if (degree != total)
      throw ParseError("polynomial is not homogeneous: mixed term degrees");
    terms.push_back(std::move(term));
  }
  if (degree < 1) throw ParseError("polynomial degree must be >= 1");
  try {
    return HomogeneousPolynomial(nv, degree, std::move(terms));
  } catch (const InvalidArgumentError& e) {
    throw ParseError(e.what());
  }
}

}  // namespace projcurv
