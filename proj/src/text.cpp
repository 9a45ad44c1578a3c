#include "fbd/text.hpp"

#include <charconv>
#include <fstream>
#include <string>

#include "fbd/errors.hpp"

namespace fbd {

namespace {

template <typename T>
T parse_number(std::string_view raw, const char* what) {
  const std::string_view s = trim(raw);
  T value{};
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (s.empty() || ec != std::errc{} || ptr != last) {
    throw InvalidArgument(std::string("cannot parse '") + std::string(s) + "' as " + what);
  }
  return value;
}

}  // namespace

std::string_view trim(std::string_view s) noexcept {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

int parse_int(std::string_view s) { return parse_number<int>(s, "an integer"); }
std::uint64_t parse_u64(std::string_view s) { return parse_number<std::uint64_t>(s, "an unsigned integer"); }
double parse_double(std::string_view s) { return parse_number<double>(s, "a real number"); }

std::vector<std::pair<double, double>> read_function_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open function file '" + path.string() + "'");
  std::vector<std::pair<double, double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    const std::string where = path.string() + " line " + std::to_string(line_no);
    if (fields.size() != 2) throw InvalidArgument(where + ": expected 'x,value'");
    const double x = parse_double(fields[0]);
    const double v = parse_double(fields[1]);
    if (!rows.empty() && !(x > rows.back().first)) throw InvalidArgument(where + ": x must be strictly increasing");
    rows.emplace_back(x, v);
  }
  return rows;
}

std::vector<double> read_samples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open sample file '" + path.string() + "'");
  std::vector<double> values;
  std::string token;
  char c;
  auto flush = [&] {
    if (!trim(token).empty()) values.push_back(parse_double(token));
    token.clear();
  };
  bool comment = false;
  while (in.get(c)) {
    if (c == '\n') comment = false;
    if (comment) continue;
    if (c == '#') {
      flush();
      comment = true;
    } else if (c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      flush();
    } else {
      token.push_back(c);
    }
  }
  flush();
  return values;
}

}  // namespace fbd
