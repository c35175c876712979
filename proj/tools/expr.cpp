#include "expr.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "entgeo/errors.hpp"
#include "entgeo/json_io.hpp"

namespace entgeo::cli {

ExprError::ExprError(const std::string& text, std::size_t column, const std::string& msg)
    : std::runtime_error("in \"" + text + "\" at column " + std::to_string(column) + ": " + msg), column_(column) {}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open file \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

struct Field {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Field> split_fields(const std::string& text) {
  std::vector<Field> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ':') {
      out.push_back({text.substr(start, i - start), start + 1});
      start = i + 1;
    }
  }
  return out;
}

double parse_double(const std::string& text, const Field& f) {
  double v = 0.0;
  const char* end = f.text.data() + f.text.size();
  auto [ptr, ec] = std::from_chars(f.text.data(), end, v);
  if (ec != std::errc() || ptr != end || f.text.empty()) throw ExprError(text, f.column, "expected a number");
  return v;
}

std::uint64_t parse_uint(const std::string& text, const std::string& digits, std::size_t column) {
  std::uint64_t v = 0;
  const char* end = digits.data() + digits.size();
  auto [ptr, ec] = std::from_chars(digits.data(), end, v);
  if (ec != std::errc() || ptr != end || digits.empty()) {
    throw ExprError(text, column, "expected a nonnegative integer");
  }
  return v;
}

DimSplit parse_split(const std::string& text, const Field& f) {
  const auto x = f.text.find('x');
  if (x == std::string::npos) throw ExprError(text, f.column, "expected dimensions of the form <a>x<b>");
  const DimSplit s{parse_uint(text, f.text.substr(0, x), f.column), parse_uint(text, f.text.substr(x + 1), f.column + x + 1)};
  if (s.dim_a < 1 || s.dim_b < 1) throw ExprError(text, f.column, "dimensions must be >= 1");
  if (s.total() > 64) throw ExprError(text, f.column, "composite dimension exceeds 64");
  return s;
}

struct Options {
  std::uint64_t seed;
  std::size_t rank = 0;
};

Options parse_options(const std::string& text, const std::vector<Field>& fields, std::size_t first,
                      std::uint64_t default_seed, bool allow_rank) {
  Options o{default_seed};
  for (std::size_t i = first; i < fields.size(); ++i) {
    const Field& f = fields[i];
    const auto eq = f.text.find('=');
    if (eq == std::string::npos) throw ExprError(text, f.column, "expected key=value");
    const std::string key = f.text.substr(0, eq);
    const std::string value = f.text.substr(eq + 1);
    if (key == "seed") {
      o.seed = parse_uint(text, value, f.column + eq + 1);
    } else if (key == "rank" && allow_rank) {
      o.rank = parse_uint(text, value, f.column + eq + 1);
      if (o.rank < 1) throw ExprError(text, f.column + eq + 1, "rank must be >= 1");
    } else {
      throw ExprError(text, f.column, "unknown option \"" + key + "\"");
    }
  }
  return o;
}

void expect_arity(const std::string& text, const std::vector<Field>& fields, std::size_t n) {
  if (fields.size() < n) throw ExprError(text, text.size() + 1, "missing argument");
  if (fields.size() > n) throw ExprError(text, fields[n].column, "unexpected argument");
}

json_io::json parse_json_file(const std::string& path) {
  const std::string content = read_file(path);
  try {
    return json_io::json::parse(content);
  } catch (const json_io::json::parse_error& e) {
    throw FormatError("\"" + path + "\" is not valid JSON: " + e.what());
  }
}

}  // namespace

ParsedState parse_state(const std::string& text, std::uint64_t default_seed) {
  if (text.rfind("file:", 0) == 0) {
    const std::string path = text.substr(5);
    if (path.empty()) throw ExprError(text, 6, "missing file path");
    return json_io::state_from_json(parse_json_file(path));
  }
  const auto fields = split_fields(text);
  const std::string& head = fields.front().text;

  if (head == "bell") {
    expect_arity(text, fields, 2);
    const std::string& k = fields[1].text;
    if (k == "phi+") return bell_state(BellKind::PhiPlus);
    if (k == "phi-") return bell_state(BellKind::PhiMinus);
    if (k == "psi+") return bell_state(BellKind::PsiPlus);
    if (k == "psi-") return bell_state(BellKind::PsiMinus);
    throw ExprError(text, fields[1].column, "unknown Bell state \"" + k + "\" (phi+, phi-, psi+, psi-)");
  }
  if (head == "werner") {
    expect_arity(text, fields, 2);
    const double p = parse_double(text, fields[1]);
    return werner_state(p);
  }
  if (head == "mixed") {
    expect_arity(text, fields, 2);
    const DimSplit s = parse_split(text, fields[1]);
    return DensityMatrix::trusted(ComplexMatrix::identity(s.total()) * (1.0 / static_cast<double>(s.total())), s);
  }
  if (head == "random" || head == "randpure") {
    if (fields.size() < 2) throw ExprError(text, text.size() + 1, "missing dimensions");
    const DimSplit s = parse_split(text, fields[1]);
    const bool mixed = head == "random";
    const Options o = parse_options(text, fields, 2, default_seed, mixed);
    if (mixed) return random_mixed(s, o.rank == 0 ? s.total() : o.rank, o.seed);
    return density_from_pure(random_pure(s, o.seed));
  }
  if (head == "prbox") {
    expect_arity(text, fields, 1);
    return GptState{"gbit", "gbit", gbit_model(), gbit_model(), pr_box()};
  }
  throw ExprError(text, 1, "unknown state expression \"" + head + "\"");
}

ComModel parse_model(const std::string& text) {
  if (text.rfind("file:", 0) == 0) {
    const std::string path = text.substr(5);
    if (path.empty()) throw ExprError(text, 6, "missing file path");
    return json_io::model_from_json(parse_json_file(path));
  }
  const auto fields = split_fields(text);
  const std::string& head = fields.front().text;
  if (head == "gbit") {
    expect_arity(text, fields, 1);
    return gbit_model();
  }
  if (head == "classical") {
    expect_arity(text, fields, 2);
    const std::uint64_t n = parse_uint(text, fields[1].text, fields[1].column);
    if (n < 2) throw ExprError(text, fields[1].column, "classical models need n >= 2");
    if (n > 64) throw ExprError(text, fields[1].column, "classical models are limited to n <= 64");
    return classical_model(n);
  }
  throw ExprError(text, 1, "unknown model expression \"" + head + "\"");
}

}  // namespace entgeo::cli
