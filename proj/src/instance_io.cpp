#include "hopx/instance_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hopx/functions.hpp"

namespace hopx {
namespace {

constexpr const char* kHeader = "hopx-instance v1";

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& token, int line) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError(line, "invalid number '" + token + "'");
  return value;
}

std::int64_t parse_int(const std::string& token, int line) {
  std::int64_t value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError(line, "invalid integer '" + token + "'");
  return value;
}

// Reads exactly `count` whitespace-separated doubles starting at the current
// stream position; `line` tracks the running line number.
std::vector<double> read_numbers(std::istream& in, Index count, int& line,
                                 const std::string& label) {
  std::vector<double> numbers;
  numbers.reserve(static_cast<std::size_t>(count));
  std::string text;
  while (static_cast<Index>(numbers.size()) < count &&
         std::getline(in, text)) {
    ++line;
    std::istringstream tokens(text);
    std::string token;
    while (tokens >> token) numbers.push_back(parse_double(token, line));
  }
  if (static_cast<Index>(numbers.size()) != count)
    throw ParseError(line, "block '" + label + "' expected " +
                              std::to_string(count) + " numbers, got " +
                              std::to_string(numbers.size()));
  return numbers;
}

void append_row(std::string& out, const double* data, Index count) {
  for (Index i = 0; i < count; ++i) {
    if (i) out += ' ';
    out += format_double(data[i]);
  }
  out += '\n';
}

}  // namespace

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what),
      line_(line) {}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void InstanceFile::validate() const {
  if (kind != "quadratic" && kind != "l1" && kind != "linear" &&
      kind != "point")
    throw std::invalid_argument("unknown instance kind '" + kind + "'");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (!(p >= 1.0)) throw std::invalid_argument("p must be >= 1");
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (c.size() != n) throw std::invalid_argument("c must have length n");
  require_finite(c, "c");
  if (kind == "quadratic") {
    if (A.rows() != n || A.cols() != n)
      throw std::invalid_argument("A must be n x n");
    if (b.size() != n) throw std::invalid_argument("b must have length n");
    require_finite(A, "A");
    require_finite(b, "b");
  } else if (kind == "linear") {
    if (a.size() != n) throw std::invalid_argument("a must have length n");
    require_finite(a, "a");
  } else if (kind == "point") {
    if (b.size() != n) throw std::invalid_argument("b must have length n");
    require_finite(b, "b");
  }
}

std::string serialize_instance(const InstanceFile& inst) {
  inst.validate();
  std::string out;
  out += kHeader;
  out += '\n';
  out += "kind: " + inst.kind + '\n';
  out += "p: " + format_double(inst.p) + '\n';
  out += "sigma: " + format_double(inst.sigma) + '\n';
  out += "n: " + std::to_string(inst.n) + '\n';
  if (inst.seed >= 0) out += "seed: " + std::to_string(inst.seed) + '\n';
  out += "c:\n";
  append_row(out, inst.c.data(), inst.n);
  if (inst.kind == "quadratic") {
    out += "A:\n";
    for (Index i = 0; i < inst.n; ++i) {
      // Matrix storage is column-major; serialize row by row.
      std::string row;
      for (Index j = 0; j < inst.n; ++j) {
        if (j) row += ' ';
        row += format_double(inst.A(i, j));
      }
      out += row;
      out += '\n';
    }
    out += "b:\n";
    append_row(out, inst.b.data(), inst.n);
  } else if (inst.kind == "linear") {
    out += "a:\n";
    append_row(out, inst.a.data(), inst.n);
  } else if (inst.kind == "point") {
    out += "b:\n";
    append_row(out, inst.b.data(), inst.n);
  }
  return out;
}

InstanceFile parse_instance(std::istream& in) {
  InstanceFile inst;
  int line = 0;
  std::string text;

  if (!std::getline(in, text) || trim(text) != kHeader)
    throw ParseError(1, std::string("expected header '") + kHeader + "'");
  line = 1;

  bool have_n = false;
  while (std::getline(in, text)) {
    ++line;
    const std::string stripped = trim(text);
    if (stripped.empty()) continue;
    const auto colon = stripped.find(':');
    if (colon == std::string::npos)
      throw ParseError(line, "expected 'key: value' or a block label");
    const std::string key = trim(stripped.substr(0, colon));
    const std::string value = trim(stripped.substr(colon + 1));

    if (!value.empty()) {
      if (key == "kind") {
        inst.kind = value;
      } else if (key == "p") {
        inst.p = parse_double(value, line);
      } else if (key == "sigma") {
        inst.sigma = parse_double(value, line);
      } else if (key == "n") {
        inst.n = static_cast<Index>(parse_int(value, line));
        have_n = inst.n >= 1;
      } else if (key == "seed") {
        inst.seed = parse_int(value, line);
      } else {
        throw ParseError(line, "unknown key '" + key + "'");
      }
      continue;
    }

    if (!have_n)
      throw ParseError(line, "'n' must appear before block '" + key + "'");
    if (key == "c") {
      const auto numbers = read_numbers(in, inst.n, line, key);
      inst.c = Eigen::Map<const Vector>(numbers.data(), inst.n);
    } else if (key == "A") {
      const auto numbers = read_numbers(in, inst.n * inst.n, line, key);
      inst.A.resize(inst.n, inst.n);
      for (Index i = 0; i < inst.n; ++i)
        for (Index j = 0; j < inst.n; ++j)
          inst.A(i, j) = numbers[static_cast<std::size_t>(i * inst.n + j)];
    } else if (key == "b") {
      const auto numbers = read_numbers(in, inst.n, line, key);
      inst.b = Eigen::Map<const Vector>(numbers.data(), inst.n);
    } else if (key == "a") {
      const auto numbers = read_numbers(in, inst.n, line, key);
      inst.a = Eigen::Map<const Vector>(numbers.data(), inst.n);
    } else {
      throw ParseError(line, "unknown block '" + key + "'");
    }
  }

  try {
    inst.validate();
  } catch (const std::invalid_argument& err) {
    throw ParseError(line, err.what());
  }
  return inst;
}

InstanceFile parse_instance_string(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file '" + path + "'");
  return parse_instance(in);
}

void save_instance(const InstanceFile& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write instance file '" + path + "'");
  out << serialize_instance(inst);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::unique_ptr<ProxFunction> make_function(const InstanceFile& inst) {
  inst.validate();
  if (inst.kind == "quadratic")
    return std::make_unique<QuadraticFunction>(inst.A, inst.b);
  if (inst.kind == "l1") return std::make_unique<L1Norm>(inst.n);
  if (inst.kind == "linear") return std::make_unique<LinearFunction>(inst.a);
  return std::make_unique<PointIndicator>(inst.b);
}

void write_trace_csv(std::ostream& out, const SolveReport& report) {
  out << "iter,lambda_norm,t_k,sigma_k,objective,kkt_residual,elapsed_ms\n";
  for (const auto& rec : report.trace) {
    out << rec.iter << ',' << format_double(rec.lambda_norm) << ','
        << format_double(rec.t_k) << ',' << format_double(rec.sigma_k) << ','
        << format_double(rec.objective) << ','
        << format_double(rec.kkt_residual) << ','
        << static_cast<long long>(std::llround(rec.elapsed_ms)) << '\n';
  }
}

void save_trace_csv(const SolveReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write trace file '" + path + "'");
  write_trace_csv(out, report);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

Vector load_vector(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open vector file '" + path + "'");
  std::vector<double> numbers;
  std::string token;
  int line = 1;
  while (in >> token) numbers.push_back(parse_double(token, line));
  if (numbers.empty())
    throw std::runtime_error("vector file '" + path + "' is empty");
  return Eigen::Map<const Vector>(numbers.data(),
                                  static_cast<Index>(numbers.size()));
}

}  // namespace hopx
