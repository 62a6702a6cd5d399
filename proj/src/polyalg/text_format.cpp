#include "bnfkit/polyalg/text_format.hpp"

#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>

namespace bnfkit {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_canonical_text(std::ostream& os, const GradedPolynomial& p) {
  const int n = p.dof();
  for (const auto& [e, c] : p.terms()) {
    for (int j = 0; j < n; ++j) os << (j ? " " : "") << e[j];
    os << " |";
    for (int j = 0; j < n; ++j) os << ' ' << e[n + j];
    os << " | " << format_double(c.re) << ' ' << format_double(c.im) << '\n';
  }
}

std::string to_canonical_text(const GradedPolynomial& p) {
  std::ostringstream os;
  write_canonical_text(os, p);
  return os.str();
}

namespace {

std::vector<int> parse_ints(const std::string& field, int line_no) {
  std::istringstream is(field);
  std::vector<int> out;
  std::string tok;
  while (is >> tok) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw ShapeError("line " + std::to_string(line_no) + ": bad exponent '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

GradedPolynomial parse_impl(const std::string& text, std::optional<int> dof) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::optional<int> n = dof;
  std::vector<GradedPolynomial::Term> terms;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto p1 = line.find('|');
    const auto p2 = p1 == std::string::npos ? p1 : line.find('|', p1 + 1);
    if (p2 == std::string::npos) throw ShapeError("line " + std::to_string(line_no) + ": expected 'a | b | re im'");
    const auto a = parse_ints(line.substr(0, p1), line_no);
    const auto b = parse_ints(line.substr(p1 + 1, p2 - p1 - 1), line_no);
    std::istringstream cs(line.substr(p2 + 1));
    double re = 0, im = 0;
    std::string extra;
    if (!(cs >> re >> im) || (cs >> extra))
      throw ShapeError("line " + std::to_string(line_no) + ": expected two coefficient values");
    if (a.size() != b.size() || a.empty())
      throw ShapeError("line " + std::to_string(line_no) + ": exponent halves differ in length");
    if (!n) n = static_cast<int>(a.size());
    if (static_cast<int>(a.size()) != *n)
      throw ShapeError("line " + std::to_string(line_no) + ": inconsistent number of degrees of freedom");
    terms.emplace_back(phase_exponent(a, b), Complex<double>(re, im));
  }
  if (!n) throw ShapeError("empty polynomial text needs an explicit number of degrees of freedom");
  return GradedPolynomial(*n, std::move(terms));
}

}  // namespace

GradedPolynomial parse_canonical_text(const std::string& text) { return parse_impl(text, std::nullopt); }
GradedPolynomial parse_canonical_text(const std::string& text, int n) { return parse_impl(text, n); }

}  // namespace bnfkit
