#include "bohr/poly_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "bohr/error.hpp"

namespace bohr {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string fmt_complex(std::complex<double> c) {
  return fmt(c.real()) + "," + fmt(c.imag());
}

class LineError {
 public:
  LineError(std::size_t line) : line_(line) {}
  [[noreturn]] void fail(const std::string& message) const {
    throw ValidationError("polynomial text, line " + std::to_string(line_) + ": " + message);
  }

 private:
  std::size_t line_;
};

double to_double(std::string_view s, const LineError& where) {
  s = trim(s);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    where.fail("malformed number '" + std::string(s) + "'");
  return v;
}

// "re,im" or "re".
std::complex<double> parse_complex(std::string_view s, const LineError& where) {
  const auto comma = s.find(',');
  if (comma == std::string_view::npos) return {to_double(s, where), 0.0};
  return {to_double(s.substr(0, comma), where), to_double(s.substr(comma + 1), where)};
}

// matrix[[(re,im),(re,im)],[...]]; entries may also be bare reals.
CoeffValue parse_matrix(std::string_view s, const LineError& where) {
  s = trim(s);
  if (s.substr(0, 7) != "matrix[" || s.back() != ']') where.fail("malformed matrix literal");
  s = s.substr(7, s.size() - 8);
  std::vector<std::vector<std::complex<double>>> rows;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  while (true) {
    skip_ws();
    if (i >= s.size() || s[i] != '[') where.fail("expected '[' starting a matrix row");
    ++i;
    std::vector<std::complex<double>> row;
    while (true) {
      skip_ws();
      if (i < s.size() && s[i] == '(') {
        const auto close = s.find(')', i);
        if (close == std::string_view::npos) where.fail("unterminated matrix entry");
        row.push_back(parse_complex(s.substr(i + 1, close - i - 1), where));
        i = close + 1;
      } else {
        const auto end = s.find_first_of(",]", i);
        if (end == std::string_view::npos) where.fail("unterminated matrix row");
        row.push_back({to_double(s.substr(i, end - i), where), 0.0});
        i = end;
      }
      skip_ws();
      if (i < s.size() && s[i] == ',') {
        ++i;
        continue;
      }
      if (i < s.size() && s[i] == ']') {
        ++i;
        break;
      }
      where.fail("expected ',' or ']' in matrix row");
    }
    rows.push_back(std::move(row));
    skip_ws();
    if (i < s.size() && s[i] == ',') {
      ++i;
      continue;
    }
    if (i == s.size()) break;
    where.fail("unexpected text after matrix row");
  }
  const std::size_t k = rows.size();
  std::vector<std::complex<double>> data;
  for (const auto& row : rows) {
    if (row.size() != k) where.fail("matrix literal is not square");
    data.insert(data.end(), row.begin(), row.end());
  }
  return CoeffValue::matrix(k, std::move(data));
}

std::string format_coeff(const CoeffValue& v) {
  if (!v.is_matrix()) return fmt_complex(v.scalar_value());
  std::string out = "matrix[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += '[';
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (j) out += ',';
      out += "(" + fmt_complex(v(i, j)) + ")";
    }
    out += ']';
  }
  return out + "]";
}

struct Pending {
  std::size_t line;
  char part;
  std::string index;
  std::string value;
};

PluriharmonicPoly parse_block(const std::vector<std::pair<std::size_t, std::string>>& lines) {
  std::optional<std::size_t> dim;
  CoeffKind kind;
  std::string id;
  std::optional<KnownSupNorm> sup;
  std::vector<Pending> terms;
  for (const auto& [number, raw] : lines) {
    const LineError where(number);
    const std::string_view line = trim(raw);
    std::istringstream in{std::string(line)};
    std::string head;
    in >> head;
    if (head == "dim") {
      std::size_t n = 0;
      if (!(in >> n) || n == 0) where.fail("dim must be a positive integer");
      dim = n;
    } else if (head == "kind") {
      std::string k;
      in >> k;
      if (k == "scalar") {
        kind = CoeffKind::scalar();
      } else if (k == "matrix") {
        std::size_t size = 0;
        if (!(in >> size) || size == 0) where.fail("kind matrix needs a positive size");
        kind = CoeffKind::square(size);
      } else {
        where.fail("kind must be 'scalar' or 'matrix K'");
      }
    } else if (head == "id") {
      std::getline(in >> std::ws, id);
    } else if (head == "sup") {
      std::string value, word;
      in >> value;
      KnownSupNorm k{to_double(value, where), {}};
      while (in >> word) {
        std::string grammar;
        if (word != "space" || !(in >> grammar)) where.fail("expected 'space <grammar>'");
        k.spaces.push_back(SpaceDescriptor::parse(grammar));
      }
      if (k.spaces.empty()) where.fail("sup needs at least one space");
      sup = std::move(k);
    } else if (head == "a" || head == "b") {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) where.fail("term needs '='");
      terms.push_back({number, head[0], std::string(trim(line.substr(1, eq - 1))),
                       std::string(trim(line.substr(eq + 1)))});
    } else {
      where.fail("unknown directive '" + head + "'");
    }
  }
  if (!dim) throw ValidationError("polynomial text: missing 'dim' line");
  PluriharmonicPoly f(*dim, kind);
  for (const auto& t : terms) {
    const LineError where(t.line);
    const MultiIndex alpha = MultiIndex::parse(t.index);
    CoeffValue v = t.value.rfind("matrix", 0) == 0 ? parse_matrix(t.value, where)
                                                    : CoeffValue(parse_complex(t.value, where));
    try {
      if (t.part == 'a')
        f.add_a(alpha, v);
      else
        f.add_b(alpha, v);
    } catch (const ValidationError& e) {
      where.fail(e.what());
    }
  }
  if (sup) {
    for (const auto& s : sup->spaces)
      if (s.dim() != *dim) throw ValidationError("polynomial text: sup space dimension mismatch");
    f.set_known_sup_norm(std::move(*sup));
  }
  f.set_id(id);
  return f;
}

}  // namespace

std::vector<PluriharmonicPoly> parse_family(std::string_view text) {
  std::vector<PluriharmonicPoly> out;
  std::vector<std::pair<std::size_t, std::string>> block;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t number = 0;
  auto flush = [&] {
    if (!block.empty()) out.push_back(parse_block(block));
    block.clear();
  };
  while (std::getline(in, raw)) {
    ++number;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line == "---") {
      flush();
      continue;
    }
    block.emplace_back(number, std::string(line));
  }
  flush();
  return out;
}

PluriharmonicPoly parse_polynomial(std::string_view text) {
  auto family = parse_family(text);
  if (family.size() != 1)
    throw ValidationError("expected exactly one polynomial, found " +
                          std::to_string(family.size()));
  return std::move(family.front());
}

std::vector<PluriharmonicPoly> read_family_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open polynomial file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_family(buffer.str());
}

std::string format_polynomial(const PluriharmonicPoly& f) {
  std::string out = "dim " + std::to_string(f.dim()) + "\n";
  out += "kind " + f.kind().to_string() + "\n";
  if (!f.id().empty()) out += "id " + f.id() + "\n";
  if (const auto& k = f.known_sup_norm()) {
    out += "sup " + fmt(k->value);
    for (const auto& s : k->spaces) out += " space " + s.to_string();
    out += "\n";
  }
  for (const auto& [alpha, v] : f.a()) out += "a " + alpha.to_string() + " = " + format_coeff(v) + "\n";
  for (const auto& [alpha, v] : f.b()) out += "b " + alpha.to_string() + " = " + format_coeff(v) + "\n";
  return out;
}

std::string format_family(const std::vector<PluriharmonicPoly>& family) {
  std::string out;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (i) out += "---\n";
    out += format_polynomial(family[i]);
  }
  return out;
}

}  // namespace bohr
