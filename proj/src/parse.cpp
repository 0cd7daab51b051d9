#include "orthosym/parse.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

namespace orthosym {

namespace {

std::string strip(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (std::isspace(static_cast<unsigned char>(s[b])) || s[b] == '[' || s[b] == '(')) ++b;
  while (e > b && (std::isspace(static_cast<unsigned char>(s[e - 1])) || s[e - 1] == ']' || s[e - 1] == ')')) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& text) {
  const std::string body = strip(text);
  std::vector<std::string> out;
  if (body.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = body.find(',', start);
    std::string item = strip(body.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (item.empty()) throw InvalidArgument("empty entry in list '" + text + "'");
    out.push_back(std::move(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_real(const std::string& s, const std::string& whole) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v))
    throw InvalidArgument("cannot parse number '" + whole + "'");
  return v;
}

} // namespace

cd parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw InvalidArgument("empty complex number");
  if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, text), 0.0};
  s.pop_back();
  // Split at the last sign that is not part of an exponent.
  std::size_t split_at = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split_at = k;
      break;
    }
  }
  std::string re_part = split_at == std::string::npos ? "" : s.substr(0, split_at);
  std::string im_part = split_at == std::string::npos ? s : s.substr(split_at);
  if (im_part.empty() || im_part == "+") im_part = "1";
  else if (im_part == "-") im_part = "-1";
  const double re = re_part.empty() ? 0.0 : parse_real(re_part, text);
  return {re, parse_real(im_part, text)};
}

std::vector<cd> parse_complex_list(const std::string& text) {
  std::vector<cd> out;
  for (const auto& item : split(text)) out.push_back(parse_complex(item));
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text)) out.push_back(parse_real(item, item));
  return out;
}

Perm parse_perm(const std::string& text) {
  Perm p;
  for (const auto& item : split(text)) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size())
      throw InvalidArgument("cannot parse permutation '" + text + "'");
    p.push_back(v);
  }
  if (!is_permutation(p)) throw InvalidArgument("'" + text + "' is not a permutation of 1..N");
  return p;
}

std::string format_complex(cd z) {
  auto num = [](double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
  };
  if (z.imag() == 0.0) return num(z.real());
  std::string out = num(z.real());
  if (!std::signbit(z.imag())) out += '+';
  return out + num(z.imag()) + "i";
}

} // namespace orthosym
