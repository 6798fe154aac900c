#include "app/input.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "quadax/error.hpp"

namespace quadax::app {

namespace {

bool parse_double(const std::string& tok, double& out) {
  const char* b = tok.data();
  const char* e = b + tok.size();
  auto [p, ec] = std::from_chars(b, e, out);
  return ec == std::errc() && p == e && std::isfinite(out);
}

std::vector<std::string> tokens(std::string line) {
  for (char& c : line)
    if (c == ',' || c == ';') c = ' ';
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

}  // namespace

SystemFile parse_system(std::istream& in) {
  SystemFile f;
  std::size_t width = 0;
  std::string line;
  for (int no = 1; std::getline(in, line); ++no) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto toks = tokens(line);
    if (toks.empty()) continue;
    if (width == 0) {
      if (toks.size() != 2 && toks.size() != 3)
        throw invalid_input("line " + std::to_string(no) + ": expected 2 or 3 numbers");
      width = toks.size();
    }
    Vec v(width);
    bool ok = toks.size() == width;
    for (std::size_t i = 0; ok && i < width; ++i) ok = parse_double(toks[i], v[i]);
    if (!ok) throw invalid_input("line " + std::to_string(no) + ": expected " + std::to_string(width) + " numbers");
    f.rows.push_back(v);
    f.line_numbers.push_back(no);
  }
  if (f.rows.empty()) throw invalid_input("empty input: no semi-diameters");
  if (f.rows.size() != width)
    throw invalid_input("expected " + std::to_string(width) + " semi-diameters, found " + std::to_string(f.rows.size()));
  return f;
}

SystemFile read_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open " + path);
  return parse_system(in);
}

std::vector<double> parse_number_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (const auto& t : tokens(text)) {
    double v;
    if (!parse_double(t, v)) throw invalid_input(what + ": '" + t + "' is not a number");
    out.push_back(v);
  }
  if (out.empty()) throw invalid_input(what + ": empty list");
  return out;
}

}  // namespace quadax::app
